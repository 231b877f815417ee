"""Closed-form model on the index set {0..n} with projective dimensions 2n+1-p.

Matrices here use the convention ``a_pq = Ext(L_p, M_q)``.  The adapter
:func:`standard_convention` transposes into ``a_ij = Ext(M_i, L_j)`` and
reverses the order, which is the form the axiom checks and the KLV
harness consume.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .axioms import alternating_sum_mismatch, socle_formula_mismatch
from .modules import GrothendieckVector
from .order import PartialOrder
from .polyseries import (
    ONE_POLY, T, ZERO_POLY, LaurentPoly, PolyMatrix, mat_inv_triangular, mat_mul, mat_transpose, twist_neg,
)


def indices(n: int) -> List[int]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(range(n + 1))


def pdim(n: int, p: int) -> int:
    return 2 * n + 1 - p


def natural_order(n: int) -> PartialOrder:
    return PartialOrder.chain(indices(n))


def model_order(n: int) -> PartialOrder:
    """The ordering read off from projective dimensions: reverse of the natural one."""
    return PartialOrder.chain(list(reversed(indices(n))))


def a_closed(n: int) -> PolyMatrix:
    return PolyMatrix.from_function(indices(n), lambda p, q: T ** (q - p) if p <= q else ZERO_POLY)


def a_inv_closed(n: int) -> PolyMatrix:
    return PolyMatrix.from_function(indices(n), lambda p, q: (-T) ** (q - p) if p <= q <= p + 1 else ZERO_POLY)


def delta_entry(n: int, p: int) -> LaurentPoly:
    return ONE_POLY + T if p == n else ONE_POLY - T ** 2


def delta(n: int) -> PolyMatrix:
    return PolyMatrix.diagonal(indices(n), {p: delta_entry(n, p) for p in indices(n)})


def ext_LL_closed(n: int) -> PolyMatrix:
    return PolyMatrix.from_function(indices(n), lambda p, q: T ** abs(q - p) + T ** (2 * n + 1 - p - q))


def simple_classes(n: int) -> Dict[int, GrothendieckVector]:
    return {p: GrothendieckVector.indicator(indices(n), p) for p in indices(n)}


def mbar_class(n: int, p: int) -> GrothendieckVector:
    """``[L_p] + [L_{p+1}]`` with ``L_{n+1} = 0``."""
    counts = {p: 1}
    if p + 1 <= n:
        counts[p + 1] = 1
    return GrothendieckVector(indices(n), counts)


def grothendieck_L(n: int, p: int) -> Dict[int, int]:
    """Coefficients of ``[L_p]`` on the classes ``[Mbar_q]``."""
    if p not in indices(n):
        raise KeyError(p)
    return {q: (-1) ** (q - p) for q in range(p, n + 1)}


def socle_series_closed(n: int, p: int) -> Dict[int, LaurentPoly]:
    """Graded socle layers of ``Mbar_p``: coefficient of ``[L_q]`` for each q."""
    inv = a_inv_closed(n)
    return {q: twist_neg(inv[p, q]) for q in indices(n) if inv[p, q]}


def star(n: int, p: int) -> Optional[int]:
    """Fold ``n < p <= 2n+1`` onto ``2n+1-p``; None outside ``[0, 2n+1]``."""
    if p < 0 or p > 2 * n + 1:
        return None
    return 2 * n + 1 - p if p > n else p


@dataclass(frozen=True)
class ResolutionShape:
    n: int
    kind: str
    q: int
    degrees: Tuple[Tuple[int, ...], ...]

    def series(self, p: int) -> LaurentPoly:
        """``sum_j (multiplicity of p in degree j) t^j``."""
        return LaurentPoly({j: deg.count(p) for j, deg in enumerate(self.degrees)})


def resolution_shape(n: int, kind: str, q: int) -> ResolutionShape:
    if q not in indices(n):
        raise KeyError(q)
    if kind == "verma":
        degs = tuple((q - j,) for j in range(q + 1))
    elif kind == "simple":
        out = [(q,)]
        for j in range(1, 2 * n + 2):
            out.append(tuple(x for x in (star(n, q + j), star(n, q - j)) if x is not None))
        degs = tuple(out)
    else:
        raise ValueError("kind must be 'verma' or 'simple'")
    return ResolutionShape(n, kind, q, degs)


# bridge to the Ext(M_i, L_j) convention

@dataclass
class StandardData:
    """The model expressed through ``a_ij = Ext(M_i, L_j)`` with its own ordering and dimensions."""

    n: int
    labels: List[int]
    order: PartialOrder
    ell: Dict[int, int]
    a: PolyMatrix
    a_inv: PolyMatrix
    d: PolyMatrix
    E: PolyMatrix
    linear: List[int]


def standard_convention(n: int) -> StandardData:
    order = model_order(n)
    a = mat_transpose(a_closed(n))
    lin = order.linear_extension()
    return StandardData(n, indices(n), order, {p: pdim(n, p) for p in indices(n)}, a,
                        mat_inv_triangular(a, lin), delta(n), ext_LL_closed(n), lin)


@dataclass
class CheckLine:
    name: str
    ok: bool
    mismatch: Optional[Dict[str, object]] = None

    def as_dict(self):
        return {"name": self.name, "ok": self.ok, "mismatch": self.mismatch}


@dataclass
class ModelReport:
    n: int
    checks: List[CheckLine] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self):
        return {"n": self.n, "ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def _first_matrix_diff(x: PolyMatrix, y: PolyMatrix, n: int):
    for p, q, e in x.entries():
        f = y[p, q]
        if e != f:
            diff = e - f
            return {"n": n, "p": p, "q": q, "degree": diff.low_degree}
    return None


def verify_all(n: int) -> ModelReport:
    rep = ModelReport(n)
    V = indices(n)
    a, ainv, dl, ext = a_closed(n), a_inv_closed(n), delta(n), ext_LL_closed(n)

    def add(name, mismatch):
        rep.checks.append(CheckLine(name, mismatch is None, mismatch))

    add("a * a_inv = 1", _first_matrix_diff(mat_mul(a, ainv), PolyMatrix.identity(V), n))
    add("a_inv by back-substitution", _first_matrix_diff(mat_inv_triangular(a, V), ainv, n))
    add("a * delta * transpose(a) = Ext(L, L)", _first_matrix_diff(mat_mul(mat_mul(a, dl), mat_transpose(a)), ext, n))
    add("Ext(L, L) symmetric", None if ext.is_symmetric() else {"n": n, "pair": ext.asymmetry()})

    bad = None
    for p in V:
        acc = GrothendieckVector.zero(V)
        for q, c in grothendieck_L(n, p).items():
            acc = acc + c * mbar_class(n, q)
        if acc != simple_classes(n)[p]:
            bad = {"n": n, "p": p, "got": acc.as_dict()}
            break
    add("[L_p] = sum (-1)^(q-p) [Mbar_q]", bad)

    std = standard_convention(n)
    add("alternating sum via a(-1)", alternating_sum_mismatch(V, std.a, {q: mbar_class(n, q) for q in V}, simple_classes(n)))

    bad = None
    for p in V:
        want = {p: ONE_POLY}
        if p + 1 <= n:
            want[p + 1] = T
        got = socle_series_closed(n, p)
        if got != want:
            bad = {"n": n, "p": p, "got": {q: s.to_pairs() for q, s in got.items()}}
            break
    add("socle series = [L_p] + t [L_(p+1)]", bad)
    layers = {j: {i: s for i, s in socle_series_closed(n, j).items()} for j in V}
    add("socle series via the inverse in standard form", socle_formula_mismatch(V, std.a_inv, layers))

    bad = None
    for q in V:
        shape = resolution_shape(n, "simple", q)
        for p in V:
            s = shape.series(p)
            if s != ext[p, q]:
                bad = {"n": n, "p": p, "q": q, "degree": (s - ext[p, q]).low_degree}
                break
        if bad:
            break
    add("simple resolution shapes match Ext(L, L)", bad)

    bad = None
    for q in V:
        shape = resolution_shape(n, "verma", q)
        for p in V:
            if shape.series(p) != a[p, q]:
                bad = {"n": n, "p": p, "q": q}
                break
        if bad:
            break
    add("Verma resolution shapes match a", bad)

    bad = None
    for p in V:
        top = max(ext[p, q].degree for q in V)
        if top != pdim(n, p):
            bad = {"n": n, "p": p, "top": top}
            break
    add("row top degree = projective dimension", bad)
    add("a_inv bidiagonal", next(({"n": n, "p": p, "q": q} for p, q, e in ainv.entries()
                                  if e and not p <= q <= p + 1), None))
    return rep


def synthetic_klv_document(n: int) -> dict:
    """A KLV table transcribing the model, in the ``klv/1`` file format."""
    V = indices(n)
    polys = []
    for i in V:
        for j in V:
            if i >= j:
                polys.append({"i": i, "j": j, "p": [1]})
    return {
        "format": "klv/1",
        "name": f"hyperbolic-n{n}",
        "indices": V,
        "ell_tilde": {str(p): pdim(n, p) for p in V},
        "dim_a": {str(p): 1 for p in V},
        "dtilde": {str(n): [[0, 1], [1, 1]]},
        "equal_rank": False,
        "order": list(reversed(V)),
        "polys": polys,
    }
