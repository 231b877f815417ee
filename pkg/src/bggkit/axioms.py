"""Decide the highest-weight axioms (ids 9..18) for an algebra, an order and a family of standard modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import Algebra
from .guichardet import COrdering, c_ordering
from .homological import INF, Resolution, SimpleData, min_proj_resolution, pdim_str, simple_data
from .modules import (
    GrothendieckVector, LeftModule, UnsupportedError, grothendieck_class, hom_space, is_flat_over_end,
    is_isomorphic, mbar, projective, radical_layer_series, radical_socle_coincide, search_m_filtration,
    verma_minus, verma_plus,
)
from .order import PartialOrder
from .polyseries import (
    ONE_POLY, ZERO_POLY, LaurentPoly, PolyMatrix, TruncSeries, eval_at, kl_recover, mat_inv_triangular,
    mat_mul, mat_transpose, twist_neg, unitriangular_violation,
)

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
CONDITION_IDS = tuple(range(9, 19))


@dataclass
class ConditionResult:
    id: int
    verdict: str
    witness: Dict[str, object] = field(default_factory=dict)

    def as_dict(self):
        return {"verdict": self.verdict, "witness": self.witness}


def _entry_str(e) -> object:
    if isinstance(e, LaurentPoly):
        return e.to_pairs()
    return {"coeffs": list(e.coeffs), "N": e.N}


def matrix_dict(m: Optional[PolyMatrix]):
    if m is None:
        return None
    return {"labels": [str(x) for x in m.labels],
            "rows": [[_entry_str(e) for e in row] for row in m.rows]}


@dataclass
class AxiomReport:
    verdict: str
    conditions: Dict[int, ConditionResult]
    order: PartialOrder
    ell: Dict[Hashable, object]
    a: PolyMatrix
    a_inv: Optional[PolyMatrix]
    d: Optional[PolyMatrix]
    E: PolyMatrix
    N: int
    family: str
    notes: List[str] = field(default_factory=list)

    @property
    def is_bgg(self) -> bool:
        return self.verdict == HOLDS

    def first_failure(self) -> Optional[int]:
        return next((k for k in CONDITION_IDS if k in self.conditions and self.conditions[k].verdict == FAILS), None)

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "first_failure": self.first_failure(),
            "conditions": {str(k): v.as_dict() for k, v in sorted(self.conditions.items())},
            "order": [[str(i), str(j)] for i, j in self.order.strict_pairs()],
            "ell": {str(k): pdim_str(v) for k, v in self.ell.items()},
            "a": matrix_dict(self.a),
            "a_inv": matrix_dict(self.a_inv),
            "d": matrix_dict(self.d),
            "E": matrix_dict(self.E),
            "N": self.N,
            "family": self.family,
            "notes": self.notes,
        }


# data-level identities, shared with the closed-form model

def alternating_sum_mismatch(labels: Sequence[Hashable], a: PolyMatrix, mbar_classes: Mapping[Hashable, GrothendieckVector],
                     simple_classes: Mapping[Hashable, GrothendieckVector]) -> Optional[Dict[str, object]]:
    """First j with ``[L_j] != sum_i a_ij(-1) [Mbar_i]``."""
    for j in labels:
        acc = GrothendieckVector.zero(simple_classes[j].vertices)
        for i in labels:
            c = eval_at(a[i, j], -1)
            if c:
                acc = acc + c * mbar_classes[i]
        if acc != simple_classes[j]:
            return {"j": j, "expected": simple_classes[j].as_dict(), "got": acc.as_dict()}
    return None


def socle_formula_mismatch(labels: Sequence[Hashable], a_inv: PolyMatrix,
                           layers: Mapping[Hashable, Mapping[Hashable, LaurentPoly]]) -> Optional[Dict[str, object]]:
    """First (i, j) where the layer series of e_i on Mbar_j differs from ``a_inv_ij(-t)``."""
    for j in labels:
        for i in labels:
            want = twist_neg(a_inv[i, j])
            got = layers[j].get(i, ZERO_POLY)
            if got != want:
                return {"i": i, "j": j, "expected": want.to_pairs(), "got": got.to_pairs()}
    return None


def solve_d(a: PolyMatrix, E: PolyMatrix, order: Sequence[Hashable]) -> Tuple[PolyMatrix, PolyMatrix]:
    """``(a_inv, d)`` with ``d = transpose(a_inv) E a_inv``; a must be unitriangular for ``order``."""
    a_inv = mat_inv_triangular(a, order)
    return a_inv, mat_mul(mat_mul(mat_transpose(a_inv), E), a_inv)


def _is_exact(m: PolyMatrix) -> bool:
    return all(isinstance(e, LaurentPoly) for _, _, e in m.entries())


def _first_offdiag(d: PolyMatrix):
    for i, j, e in d.entries():
        if i != j and e:
            if isinstance(e, TruncSeries):
                k = next(k for k, c in enumerate(e.coeffs) if c)
            else:
                k = e.low_degree
            return i, j, k
    return None


# algebra-level checks

def _series_from_resolution(res: Resolution, j, N: int):
    pat = res.multiplicity_pattern(j)
    if pat is not None and pat.is_finite():
        return LaurentPoly({k: c for k, c in enumerate(pat.head)})
    return TruncSeries([res.multiplicities(n)[j] for n in range(N + 1)], N)


def a_matrix(A: Algebra, M: Mapping[Hashable, LeftModule], N: int,
             resolutions: Optional[Mapping[Hashable, Resolution]] = None) -> PolyMatrix:
    """``a_ij = Ext^*(M_i, L_j)``: exact polynomials when the resolution of M_i terminates."""
    res = resolutions or {i: min_proj_resolution(M[i], N) for i in A.vertices}
    return PolyMatrix.from_function(A.vertices, lambda i, j: _series_from_resolution(res[i], j, N))


def ext_simple_matrix(data: SimpleData) -> PolyMatrix:
    A = data.algebra
    return PolyMatrix.from_function(
        A.vertices, lambda i, j: _series_from_resolution(data.resolutions[i], j, data.N))


class _Context:
    def __init__(self, A: Algebra, M: Mapping[Hashable, LeftModule], order: PartialOrder, N: int,
                 direction: str):
        self.A, self.M, self.order, self.N = A, dict(M), order, N
        self.direction = direction
        self.data = simple_data(A, N)
        self.ell = {i: self.data.pdim(i) for i in A.vertices}
        self.res_M = {i: min_proj_resolution(self.M[i], N) for i in A.vertices}
        self.a = a_matrix(A, self.M, N, self.res_M)
        self.E = ext_simple_matrix(self.data)
        self.linear = order.linear_extension()
        self._cache: Dict[str, object] = {}

    def finite_ell(self) -> bool:
        return all(isinstance(x, int) for x in self.ell.values())

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def mbars(self) -> Dict[Hashable, LeftModule]:
        return self.cached("mbar", lambda: {i: mbar(self.M[i]) for i in self.A.vertices})

    def filtrations(self):
        return self.cached("filt", lambda: {i: search_m_filtration(projective(self.A, i), self.M)
                                            for i in self.A.vertices})

    def a_inv(self) -> Optional[PolyMatrix]:
        def go():
            if unitriangular_violation(self.a, self.linear) is not None:
                return None
            return mat_inv_triangular(self.a, self.linear)
        return self.cached("ainv", go)


def _need_ell(ctx: _Context) -> Optional[ConditionResult]:
    if not ctx.finite_ell():
        return {"reason": "projective dimensions not all finite",
                "ell": {str(k): pdim_str(v) for k, v in ctx.ell.items()}}
    return None


def _c9(ctx: _Context) -> ConditionResult:
    A, order = ctx.A, ctx.order
    for i in A.vertices:
        plus, minus, mi = verma_plus(A, order, i), verma_minus(A, order, i), ctx.M[i]
        w = {"i": i, "dim_plus": plus.dim, "dim_minus": minus.dim, "dim_M": mi.dim}
        # M+ -> M- is the canonical surjection, an isomorphism iff dimensions agree
        if plus.dim != minus.dim:
            return ConditionResult(9, FAILS, w)
        if not is_isomorphic(minus, mi)[0]:
            w["reason"] = "M_i is not isomorphic to the Verma quotient"
            return ConditionResult(9, FAILS, w)
    return ConditionResult(9, HOLDS)


def _c10(ctx: _Context) -> ConditionResult:
    undecided = []
    for i in ctx.A.vertices:
        s = ctx.filtrations()[i]
        if s.filtration is None:
            w = {"i": i, "grothendieck_feasible": s.feasible}
            if not s.feasible or s.exhaustive:
                return ConditionResult(10, FAILS, w)
            undecided.append(i)
    if undecided:
        return ConditionResult(10, INCONCLUSIVE, {"unresolved": undecided, "reason": "search not exhaustive"})
    return ConditionResult(10, HOLDS, {"filtrations": {str(i): list(ctx.filtrations()[i].filtration.indices)
                                                        for i in ctx.A.vertices}})


def _c11(ctx: _Context) -> ConditionResult:
    for i in ctx.A.vertices:
        try:
            if not is_flat_over_end(ctx.M[i]):
                return ConditionResult(11, FAILS, {"i": i})
        except UnsupportedError as err:
            return ConditionResult(11, INCONCLUSIVE, {"i": i, "reason": "End ring not local",
                                                       "end_dim": err.args[1]})
    return ConditionResult(11, HOLDS)


def _c12(ctx: _Context) -> ConditionResult:
    rel = (lambda i, j: ctx.order.le(i, j)) if ctx.direction == "above" else (lambda i, j: ctx.order.le(j, i))
    unknown = []
    for i in ctx.A.vertices:
        li = ctx.ell[i]
        if not isinstance(li, int) and li != INF:
            unknown.append(i)
            continue
        ok = False
        for j in ctx.A.vertices:
            if not rel(i, j):
                continue
            pat = ctx.data.pattern(i, j)
            if pat is not None and pat.top_degree() == li:
                ok = True
                break
        if not ok:
            return ConditionResult(12, FAILS, {"i": i, "ell": pdim_str(li),
                                               "candidates": [j for j in ctx.A.vertices if rel(i, j)]})
    if unknown:
        return ConditionResult(12, INCONCLUSIVE, {"unknown_ell": unknown})
    return ConditionResult(12, HOLDS, {"direction": ctx.direction})


def _c13(ctx: _Context) -> ConditionResult:
    miss = _need_ell(ctx)
    if miss:
        return ConditionResult(13, INCONCLUSIVE, miss)
    if not _is_exact(ctx.a):
        return ConditionResult(13, INCONCLUSIVE, {"reason": "a is only known to the truncation degree"})
    V, ell, order = ctx.A.vertices, ctx.ell, ctx.order
    polys = {}
    for i in V:
        for j in V:
            p = kl_recover(ell[i], ell[j], ctx.a[i, j])
            w = {"i": i, "j": j, "a_ij": ctx.a[i, j].to_pairs()}
            if p is None:
                return ConditionResult(13, FAILS, dict(w, reason="not of the form t^(l(j)-l(i)) p(t^-2)"))
            nonzero = bool(p)
            if nonzero != order.le(i, j) or nonzero != (bool(p) and p[0] == 1):
                return ConditionResult(13, FAILS, dict(w, reason="support or constant term", p=p))
            if i == j and p != [1]:
                return ConditionResult(13, FAILS, dict(w, reason="diagonal polynomial is not 1", p=p))
            if order.lt(i, j) and 2 * (len(p) - 1) >= ell[j] - ell[i]:
                return ConditionResult(13, FAILS, dict(w, reason="degree bound", p=p))
            polys[f"{i},{j}"] = p
    return ConditionResult(13, HOLDS, {"p": polys})


def _c14(ctx: _Context) -> ConditionResult:
    if not _is_exact(ctx.a):
        return ConditionResult(14, INCONCLUSIVE, {"reason": "a is only known to the truncation degree"})
    miss = _need_ell(ctx)
    if miss:
        return ConditionResult(14, INCONCLUSIVE, miss)
    A = ctx.A
    mb = {i: grothendieck_class(m) for i, m in ctx.mbars().items()}
    simples = {j: GrothendieckVector.indicator(A.vertices, j) for j in A.vertices}
    bad = alternating_sum_mismatch(A.vertices, ctx.a, mb, simples)
    return ConditionResult(14, FAILS, bad) if bad else ConditionResult(14, HOLDS)


def _inverse_or_reason(ctx: _Context, cid: int):
    miss = _need_ell(ctx)
    if miss:
        return None, ConditionResult(cid, INCONCLUSIVE, miss)
    if not _is_exact(ctx.a):
        return None, ConditionResult(cid, INCONCLUSIVE, {"reason": "a is only known to the truncation degree"})
    inv = ctx.a_inv()
    if inv is None:
        bad = unitriangular_violation(ctx.a, ctx.linear)
        return None, ConditionResult(cid, INCONCLUSIVE, {"reason": "a is not unitriangular for the order",
                                                         "entry": list(bad)})
    return inv, None


def _classes_independent(ctx: _Context) -> bool:
    vecs = [[la.as_fraction(c) for c in grothendieck_class(ctx.M[j]).counts] for j in ctx.A.vertices]
    return la.rank(vecs) == len(vecs)


def _c15(ctx: _Context) -> ConditionResult:
    inv, res = _inverse_or_reason(ctx, 15)
    if res:
        return res
    V = ctx.A.vertices
    independent = _classes_independent(ctx)
    for i in V:
        target = {j: eval_at(inv[i, j], -1) for j in V}
        s = ctx.filtrations()[i]
        if s.filtration is None:
            return ConditionResult(15, INCONCLUSIVE, {"i": i, "reason": "no filtration found for condition 10"})
        got = s.filtration.multiplicities(V)
        if got != target:
            w = {"i": i, "expected": {str(k): v for k, v in target.items()},
                 "got": {str(k): v for k, v in got.items()}}
            if independent or any(v < 0 for v in target.values()):
                return ConditionResult(15, FAILS, w)
            return ConditionResult(15, INCONCLUSIVE, dict(w, reason="dependent classes; other filtrations untested"))
        # re-substitution into the Grothendieck system
        acc = GrothendieckVector.zero(V)
        for j, c in got.items():
            acc = acc + c * grothendieck_class(ctx.M[j])
        assert acc == grothendieck_class(projective(ctx.A, i))
    return ConditionResult(15, HOLDS)


def _c16(ctx: _Context) -> ConditionResult:
    inv, res = _inverse_or_reason(ctx, 16)
    if res:
        return res
    V = ctx.A.vertices
    layers = {}
    for j, m in ctx.mbars().items():
        if m.dim == 0:
            return ConditionResult(16, FAILS, {"j": j, "reason": "Mbar_j is zero"})
        if not radical_socle_coincide(m):
            return ConditionResult(16, FAILS, {"j": j, "reason": "radical and socle filtrations differ"})
        layers[j] = radical_layer_series(m)
    bad = socle_formula_mismatch(V, inv, layers)
    return ConditionResult(16, FAILS, bad) if bad else ConditionResult(16, HOLDS)


def _c17(ctx: _Context) -> ConditionResult:
    for i, m in ctx.mbars().items():
        k = len(hom_space(m, m))
        if k != 1:
            return ConditionResult(17, FAILS, {"i": i, "end_dim": k})
    return ConditionResult(17, HOLDS)


def _c18(ctx: _Context) -> ConditionResult:
    miss = _need_ell(ctx)
    if miss:
        return ConditionResult(18, INCONCLUSIVE, miss)
    if unitriangular_violation(ctx.a, ctx.linear) is not None:
        return ConditionResult(18, INCONCLUSIVE, {"reason": "a is not unitriangular for the order"})
    a, E = ctx.a, ctx.E
    exact = _is_exact(a) and _is_exact(E)
    if not exact:
        a, E = a.truncate(ctx.N), E.truncate(ctx.N)
    a_inv, d = solve_d(a, E, ctx.linear)
    ctx._cache["d"] = d
    bad = _first_offdiag(d)
    if bad:
        i, j, k = bad
        return ConditionResult(18, FAILS, {"i": i, "j": j, "degree": k})
    back = mat_mul(mat_mul(mat_transpose(a), d), a)
    assert back == E
    if not exact:
        return ConditionResult(18, INCONCLUSIVE, {"reason": "diagonal only through the truncation degree"})
    return ConditionResult(18, HOLDS, {"d": {str(k): v.to_pairs() for k, v in d.diag().items()}})


_CHECKS: Dict[int, Callable[[_Context], ConditionResult]] = {
    9: _c9, 10: _c10, 11: _c11, 12: _c12, 13: _c13, 14: _c14, 15: _c15, 16: _c16, 17: _c17, 18: _c18,
}


def _resolve_inputs(A: Algebra, M, order, N):
    N = 2 * A.dim if N is None else N
    co: Optional[COrdering] = None
    if order is None:
        co = c_ordering(A, N)
        order = co.order
    if M is None:
        M = {i: verma_minus(A, order, i) for i in A.vertices}
    return M, order, N, co


def check_condition(A: Algebra, M: Optional[Mapping[Hashable, LeftModule]], order: Optional[PartialOrder],
                    cid: int, N: Optional[int] = None, condition_12_direction: str = "above") -> ConditionResult:
    if cid not in _CHECKS:
        raise KeyError(f"unknown condition id {cid!r}; expected one of {list(CONDITION_IDS)}")
    M, order, N, _ = _resolve_inputs(A, M, order, N)
    return _CHECKS[cid](_Context(A, M, order, N, condition_12_direction))


def bgg_verdict(A: Algebra, M: Optional[Mapping[Hashable, LeftModule]] = None, order: Optional[PartialOrder] = None,
                N: Optional[int] = None, condition_12_direction: str = "above") -> AxiomReport:
    """Run all ten checks.  Any failure makes the verdict ``fails``; otherwise any
    inconclusive check makes it ``inconclusive``."""
    if condition_12_direction not in ("above", "below"):
        raise ValueError("condition_12_direction must be 'above' or 'below'")
    family = "verma_minus" if M is None else "supplied"
    M, order, N, co = _resolve_inputs(A, M, order, N)
    ctx = _Context(A, M, order, N, condition_12_direction)
    results = {cid: fn(ctx) for cid, fn in _CHECKS.items()}
    notes = []
    if co is not None and not co.complete:
        notes.append("default ordering is incomplete at this truncation")
    verdicts = [r.verdict for r in results.values()]
    if FAILS in verdicts:
        verdict = FAILS
    elif INCONCLUSIVE in verdicts or (co is not None and not co.complete):
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS
    return AxiomReport(verdict, results, order, ctx.ell, ctx.a, ctx.a_inv(), ctx._cache.get("d"), ctx.E, N,
                       family, notes)
