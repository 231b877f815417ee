"""Numerical test harness: build the tilde matrices from a KLV table and look for a congruence factorization."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .order import PartialOrder
from .polyseries import (
    ONE_POLY, T, ZERO_POLY, Congruence, FactorizationError, LaurentPoly, PolyMatrix, congruence_factor,
    kl_expand, mat_mul, mat_transpose,
)

MAX_AUTO_ORDERS = 8


class KLVFormatError(ValueError):
    pass


@dataclass
class KLVData:
    indices: List[Hashable]
    ell_tilde: Dict[Hashable, int]
    dim_a: Dict[Hashable, int]
    polys: Dict[Tuple[Hashable, Hashable], List[int]]
    dtilde: Dict[Hashable, LaurentPoly] = field(default_factory=dict)
    equal_rank: Optional[bool] = None
    order: Optional[List[Hashable]] = None
    name: str = ""

    def p(self, i, j) -> List[int]:
        return self.polys.get((i, j), [])


def _label(raw, indices, what):
    for v in indices:
        if raw == v or str(raw) == str(v):
            return v
    raise KLVFormatError(f"{what} refers to unknown index {raw!r}")


def _int(x, what) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise KLVFormatError(f"{what} must be an integer, got {x!r}")
    return x


def load_table(doc: Mapping) -> KLVData:
    """Validate a ``klv/1`` document."""
    if doc.get("format") != "klv/1":
        raise KLVFormatError("expected \"format\": \"klv/1\"")
    idx = doc.get("indices")
    if not isinstance(idx, list) or not idx:
        raise KLVFormatError("indices must be a nonempty list")
    if len(set(map(str, idx))) != len(idx):
        raise KLVFormatError("duplicate indices")
    ell, dim_a = {}, {}
    for key, target in (("ell_tilde", ell), ("dim_a", dim_a)):
        raw = doc.get(key)
        if not isinstance(raw, Mapping):
            raise KLVFormatError(f"{key} must map every index to an integer")
        for k, v in raw.items():
            target[_label(k, idx, key)] = _int(v, f"{key}[{k}]")
        missing = [i for i in idx if i not in target]
        if missing:
            raise KLVFormatError(f"{key} missing for {missing!r}")
    neg = [i for i, v in dim_a.items() if v < 0]
    if neg:
        raise KLVFormatError(f"negative dim_a at {neg!r}")
    polys: Dict[Tuple[Hashable, Hashable], List[int]] = {}
    for entry in doc.get("polys", []):
        try:
            i, j, p = entry["i"], entry["j"], entry["p"]
        except (KeyError, TypeError):
            raise KLVFormatError(f"malformed polynomial entry {entry!r}") from None
        i, j = _label(i, idx, "polys"), _label(j, idx, "polys")
        if (i, j) in polys:
            raise KLVFormatError(f"duplicate entry for ({i!r}, {j!r})")
        if not isinstance(p, list):
            raise KLVFormatError(f"polynomial for ({i!r}, {j!r}) must be a coefficient list")
        polys[i, j] = [_int(c, f"coefficient of p({i},{j})") for c in p]
    for i in idx:
        if (i, i) not in polys:
            raise KLVFormatError(f"diagonal polynomial missing for index {i!r}")
    dt = {}
    for k, pairs in (doc.get("dtilde") or {}).items():
        try:
            dt[_label(k, idx, "dtilde")] = LaurentPoly.from_pairs(pairs)
        except (TypeError, ValueError):
            raise KLVFormatError(f"malformed dtilde entry for {k!r}") from None
    order = doc.get("order")
    if order is not None:
        order = [_label(x, idx, "order") for x in order]
        if sorted(map(str, order)) != sorted(map(str, idx)):
            raise KLVFormatError("order must list every index once")
    er = doc.get("equal_rank")
    if er is not None and not isinstance(er, bool):
        raise KLVFormatError("equal_rank must be a boolean")
    return KLVData(list(idx), ell, dim_a, polys, dt, er, order, str(doc.get("name", "")))


def dump_table(data: KLVData) -> dict:
    out = {
        "format": "klv/1",
        "name": data.name,
        "indices": list(data.indices),
        "ell_tilde": {str(i): data.ell_tilde[i] for i in data.indices},
        "dim_a": {str(i): data.dim_a[i] for i in data.indices},
        "polys": [{"i": i, "j": j, "p": data.polys[i, j]} for i in data.indices for j in data.indices
                  if (i, j) in data.polys],
    }
    if data.dtilde:
        out["dtilde"] = {str(i): data.dtilde[i].to_pairs() for i in data.indices if i in data.dtilde}
    if data.equal_rank is not None:
        out["equal_rank"] = data.equal_rank
    if data.order is not None:
        out["order"] = list(data.order)
    return out


@dataclass
class Tilde:
    matrix: PolyMatrix
    warnings: List[str]


def build_atilde(data: KLVData) -> Tilde:
    """``a~_ij = t^(l~(j) - l~(i)) p~_ij(t^-2)``; negative exponents are kept but flagged."""
    warnings = []

    def entry(i, j):
        e = kl_expand(data.ell_tilde[i], data.ell_tilde[j], data.p(i, j))
        if not e.is_polynomial():
            warnings.append(f"entry ({i}, {j}) has negative exponents: {e}")
        return e

    return Tilde(PolyMatrix.from_function(data.indices, entry), warnings)


def build_dtilde(data: KLVData) -> PolyMatrix:
    """``(1 - t^2)^dim_a`` per index unless the table overrides the entry."""
    base = ONE_POLY - T ** 2
    return PolyMatrix.diagonal(data.indices, {i: data.dtilde.get(i, base ** data.dim_a[i]) for i in data.indices})


def exact_product(data: KLVData) -> PolyMatrix:
    a = build_atilde(data).matrix
    return mat_mul(mat_mul(mat_transpose(a), build_dtilde(data)), a)


def default_degree(data: KLVData) -> int:
    """Largest exponent in the exact product, so nothing is lost to truncation."""
    degs = [e.degree for _, _, e in exact_product(data).entries() if not e.is_zero()]
    return max(degs + [0])


def step_a(data: KLVData, N: int) -> PolyMatrix:
    """``transpose(a~) d~ a~`` truncated at degree N."""
    return exact_product(data).map(lambda e: e.truncate(N))


@dataclass(frozen=True)
class Expectation:
    i: Hashable
    j: Hashable
    degree: Optional[int] = None
    dim: Optional[int] = None
    series: Optional[LaurentPoly] = None


def parse_expectations(doc: Mapping, indices: Sequence[Hashable]) -> List[Expectation]:
    if doc.get("format") != "expect/1":
        raise KLVFormatError("expected \"format\": \"expect/1\"")
    out = []
    for c in doc.get("constraints", []):
        try:
            i, j = _label(c["i"], indices, "constraint"), _label(c["j"], indices, "constraint")
        except (KeyError, TypeError):
            raise KLVFormatError(f"malformed constraint {c!r}") from None
        if "series" in c:
            out.append(Expectation(i, j, series=LaurentPoly.from_pairs(c["series"])))
        elif "degree" in c and "dim" in c:
            out.append(Expectation(i, j, _int(c["degree"], "degree"), _int(c["dim"], "dim")))
        else:
            raise KLVFormatError(f"constraint needs either series or degree and dim: {c!r}")
    return out


def expectations_from(E: PolyMatrix) -> List[Expectation]:
    return [Expectation(i, j, series=e) for i, j, e in E.entries()]


def step_b(E: PolyMatrix, expectations: Iterable[Expectation]) -> List[Dict[str, object]]:
    """Every constraint violated by E."""
    out = []
    for x in expectations:
        e = E[x.i, x.j]
        if x.series is not None:
            if e != x.series:
                diff = e - x.series
                out.append({"i": x.i, "j": x.j, "degree": diff.low_degree, "expected": x.series.to_pairs(),
                            "got": e.to_pairs(),
                            "message": f"Ext({x.i},{x.j}) series differs from degree {diff.low_degree}"})
        elif e.coeff(x.degree) != x.dim:
            out.append({"i": x.i, "j": x.j, "degree": x.degree, "expected": x.dim, "got": e.coeff(x.degree),
                        "message": f"dim Ext^{x.degree}({x.i},{x.j}) = {e.coeff(x.degree)}, expected {x.dim}"})
    return out


@dataclass
class OrderResult:
    order: Tuple[Hashable, ...]
    factorization: Optional[Congruence]
    failure: Optional[FactorizationError]
    derived: Optional[PartialOrder] = None

    def as_dict(self):
        d = {"order": list(self.order), "success": self.factorization is not None}
        if self.failure is not None:
            d["failure"] = self.failure.as_dict()
        if self.derived is not None:
            d["derived_order"] = [[i, j] for i, j in self.derived.strict_pairs()]
        return d


@dataclass
class TestOutcome:
    E: PolyMatrix
    N: int
    results: List[OrderResult]

    @property
    def successful(self) -> bool:
        return any(r.factorization is not None for r in self.results)

    def successes(self) -> List[OrderResult]:
        return [r for r in self.results if r.factorization is not None]

    def derived_orderings(self) -> List[PartialOrder]:
        out: List[PartialOrder] = []
        for r in self.successes():
            if not any(r.derived.same_relation(o) for o in out):
                out.append(r.derived)
        return out

    def result_for(self, order: Sequence[Hashable]) -> OrderResult:
        return next(r for r in self.results if list(r.order) == list(order))


def derived_ordering(a: PolyMatrix) -> PartialOrder:
    """Order generated by ``i <= j`` for each nonzero off-diagonal ``a_ij``."""
    return PartialOrder.generated_by(a.labels, [(i, j) for i, j, e in a.entries() if i != j and e])


def step_cd(E: PolyMatrix, N: int, orders: Optional[Iterable[Sequence[Hashable]]] = None) -> TestOutcome:
    """Attempt the factorization under each order (all orders for up to eight indices)."""
    if orders is None:
        if len(E.labels) > MAX_AUTO_ORDERS:
            raise ValueError(f"more than {MAX_AUTO_ORDERS} indices: candidate orders must be supplied")
        orders = itertools.permutations(E.labels)
    results = []
    for order in orders:
        order = tuple(order)
        try:
            fac = congruence_factor(E, order, N)
        except FactorizationError as err:
            results.append(OrderResult(order, None, err))
            continue
        results.append(OrderResult(order, fac, None, derived_ordering(fac.a)))
    return TestOutcome(E, N, results)


def roundtrip(data: KLVData, order: Sequence[Hashable], N: Optional[int] = None) -> Tuple[bool, OrderResult]:
    """Feed the table through the first and last steps and compare with the tilde matrices."""
    N = default_degree(data) if N is None else N
    E = step_a(data, N)
    res = step_cd(E, N, [order]).results[0]
    if res.factorization is None:
        return False, res
    a = build_atilde(data).matrix.map(lambda e: e.truncate(N))
    d = build_dtilde(data).map(lambda e: e.truncate(N))
    return res.factorization.a == a and res.factorization.d == d, res


def perturb(E: PolyMatrix, i, j, delta: LaurentPoly = T) -> PolyMatrix:
    """Add ``delta`` to the symmetric pair of entries (i, j) and (j, i)."""
    return PolyMatrix.from_function(
        E.labels, lambda p, q: E[p, q] + delta if {p, q} == {i, j} and (p, q) in ((i, j), (j, i)) else E[p, q])
