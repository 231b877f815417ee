"""The ordering generated by projective dimensions and Ext^1, and Ext-fullness of its initial segments."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

from .algebra import Algebra, quotient_by_idempotent_ideal
from .homological import (
    INF, AtLeast, Pattern, SimpleData, ext_series, min_proj_resolution, pdim_known, pdim_str, simple_data,
)
from .modules import simple
from .order import PartialOrder
from .polyseries import TruncSeries

INCONCLUSIVE = "inconclusive"
Verdict = Union[bool, str]


@dataclass(frozen=True)
class OrderFact:
    """``i <= j`` because ``pd L_j = pd L_i + 1`` and ``dim Ext^1(L_j, L_i) = ext1 > 0``."""

    i: Hashable
    j: Hashable
    ell_i: int
    ell_j: int
    ext1: int

    def as_dict(self):
        return {"i": self.i, "j": self.j, "ell_i": self.ell_i, "ell_j": self.ell_j, "ext1": self.ext1}


@dataclass
class COrdering:
    order: PartialOrder
    facts: List[OrderFact]
    pdims: Dict[Hashable, object]
    complete: bool

    @property
    def all_infinite(self) -> bool:
        return bool(self.pdims) and all(p == INF for p in self.pdims.values())

    def reproduce(self) -> PartialOrder:
        return PartialOrder.generated_by(self.order.ground, [(f.i, f.j) for f in self.facts])


def c_ordering(A: Algebra, N: int, data: Optional[SimpleData] = None) -> COrdering:
    """Smallest order with ``i <= j`` whenever ``l(j) = l(i) + 1 < inf`` and ``Ext^1(L_j, L_i) != 0``.

    Unknown projective dimensions (truncated resolutions) leave the order
    incomplete: a missing fact could add relations.
    """
    data = data or simple_data(A, N)
    pd = {i: data.pdim(i) for i in A.vertices}
    facts = []
    for i in A.vertices:
        for j in A.vertices:
            li, lj = pd[i], pd[j]
            if not (isinstance(li, int) and isinstance(lj, int)) or lj != li + 1:
                continue
            e1 = data.ext_degree(j, i, 1)
            if e1:
                facts.append(OrderFact(i, j, li, lj, e1))
    order = PartialOrder.generated_by(A.vertices, [(f.i, f.j) for f in facts])
    return COrdering(order, facts, pd, all(pdim_known(p) for p in pd.values()))


def _transport_quotient(A: Algebra, J: Sequence[Hashable]):
    removed = [i for i in A.vertices if i not in set(J)]
    if not removed:
        return None
    return quotient_by_idempotent_ideal(A, removed)


def segment_algebra(A: Algebra, J: Sequence[Hashable]) -> Algebra:
    """``A / A e A`` with e the idempotent of the complement of J (A itself when J is everything)."""
    if not J:
        raise ValueError("segment must be nonempty")
    q = _transport_quotient(A, J)
    return A if q is None else q.B


def segment_ext_series(A: Algebra, J: Sequence[Hashable], i, j, N: int) -> TruncSeries:
    """Ext between the simples at i and j computed over the segment algebra."""
    if i not in J or j not in J:
        raise KeyError(f"({i!r}, {j!r}) not inside the segment {list(J)!r}")
    B = segment_algebra(A, J)
    return simple_data(B, N).ext(i, j)


@dataclass
class GuichardetVerdict:
    is_guichardet: Verdict
    witnesses: List[Dict[str, object]]
    ordering: COrdering
    N: int
    segments: List[Tuple[Hashable, ...]]
    notes: List[str] = field(default_factory=list)

    def as_dict(self):
        return {
            "is_guichardet": self.is_guichardet,
            "witnesses": self.witnesses,
            "N": self.N,
            "order": [[str(i), str(j)] for i, j in self.ordering.order.strict_pairs()],
            "order_facts": [f.as_dict() for f in self.ordering.facts],
            "pdims": {str(k): pdim_str(v) for k, v in self.ordering.pdims.items()},
            "ordering_complete": self.ordering.complete,
            "segments": [list(s) for s in self.segments],
            "notes": self.notes,
        }


def _compare(full: SimpleData, part: SimpleData, i, j, N: int):
    """``(first differing degree or None, exact)`` for Ext(L_i, L_j) over the two algebras."""
    pf, pp = full.pattern(i, j), part.pattern(i, j)
    if pf is not None and pp is not None:
        k = pf.first_difference(pp)
        return (k, pf[k], pp[k]) if k is not None else None, True
    sf, sp = full.ext(i, j), part.ext(i, j)
    for k in range(N + 1):
        if sf.coeff(k) != sp.coeff(k):
            return (k, sf.coeff(k), sp.coeff(k)), True
    return None, False


def is_guichardet(A: Algebra, N: int, segments: Optional[Sequence[Sequence[Hashable]]] = None,
                  bound: int = 12) -> GuichardetVerdict:
    """Check Ext-fullness of every initial segment, pairwise on simples.

    True only when every compared series is known in all degrees; a
    difference seen at some degree is a genuine failure, while agreement
    through N on truncated data stays inconclusive.
    """
    full = simple_data(A, N)
    co = c_ordering(A, N, full)
    notes = []
    if co.all_infinite:
        notes.append("every projective dimension is infinite; the ordering is discrete")
    segs = [tuple(s) for s in segments] if segments is not None else co.order.initial_segments(bound)
    witnesses = []
    exact = True
    for J in segs:
        if not J or set(J) == set(A.vertices):
            continue
        if not co.order.is_initial_segment(J):
            raise ValueError(f"{list(J)!r} is not an initial segment")
        part = simple_data(segment_algebra(A, J), N)
        for i in J:
            for j in J:
                diff, known = _compare(full, part, i, j, N)
                if diff is not None:
                    k, over_full, over_seg = diff
                    witnesses.append({"segment": list(J), "pair": [i, j], "degree": k,
                                      "dim_segment": over_seg, "dim_full": over_full})
                elif not known:
                    exact = False
    if witnesses:
        verdict: Verdict = False if co.complete else INCONCLUSIVE
        if not co.complete:
            notes.append("differences found but the ordering is incomplete at this truncation")
    elif not co.complete or not exact:
        verdict = INCONCLUSIVE
    else:
        verdict = True
    return GuichardetVerdict(verdict, witnesses, co, N, segs, notes)
