"""Integer Laurent polynomials, truncated power series and matrices of them.

All values are immutable.  ``LaurentPoly`` is exact; ``TruncSeries`` carries
its truncation degree ``N`` and arithmetic between two series keeps the
smaller one.  ``PolyMatrix`` is a square table indexed by an ordered label
list and holds either kind of entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union


class LaurentPoly:
    """Finite sum of ``c * t**k`` with integer ``c`` and integer ``k``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        c: Dict[int, int] = {}
        for k, v in items:
            if int(v) != v:
                raise ValueError(f"non-integer coefficient {v!r}")
            c[int(k)] = c.get(int(k), 0) + int(v)
        self._c = {k: v for k, v in sorted(c.items()) if v}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_list(cls, coeffs: Sequence[int], shift: int = 0) -> "LaurentPoly":
        """``coeffs[k]`` is the coefficient of ``t**(k + shift)``."""
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def terms(self) -> List[Tuple[int, int]]:
        return list(self._c.items())

    def coeff(self, k: int) -> int:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self) -> Optional[int]:
        return max(self._c) if self._c else None

    @property
    def low_degree(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def is_polynomial(self) -> bool:
        """True when no negative exponent occurs."""
        return not self._c or min(self._c) >= 0

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._c.items()})

    def truncate(self, n: int) -> "LaurentPoly":
        return LaurentPoly({e: c for e, c in self._c.items() if e <= n})

    def __call__(self, x: int) -> int:
        return eval_at(self, x)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c.get(k, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c: Dict[int, int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            (k, v), = self._c.items()
            return LaurentPoly({-k * (-n): v ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return other == self
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in self._c.items():
            if k == 0:
                mono = str(abs(v))
            else:
                power = "t" if k == 1 else f"t^{k}"
                mono = power if abs(v) == 1 else f"{abs(v)}*{power}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def to_pairs(self) -> List[List[int]]:
        """``[[exponent, coefficient], ...]`` in increasing exponent order."""
        return [[k, v] for k, v in self._c.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "LaurentPoly":
        seen = set()
        c = {}
        for k, v in pairs:
            if k in seen:
                raise ValueError(f"duplicate exponent {k}")
            seen.add(k)
            c[int(k)] = int(v)
        return cls(c)


T = LaurentPoly.monomial(1)
ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.const(1)


class TruncSeries:
    """Power series ``sum c_k t**k`` known for ``0 <= k <= N``."""

    __slots__ = ("_c", "N")

    def __init__(self, coeffs: Sequence[int], N: int):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        c = [int(x) for x in coeffs[: N + 1]]
        c += [0] * (N + 1 - len(c))
        self._c = tuple(c)
        self.N = N

    @classmethod
    def from_poly(cls, p: LaurentPoly, N: int) -> "TruncSeries":
        if not p.is_polynomial():
            raise ValueError("series cannot hold negative exponents")
        c = [0] * (N + 1)
        for k, v in p.terms():
            if k <= N:
                c[k] = v
        return cls(c, N)

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._c

    def coeff(self, k: int) -> int:
        if k > self.N:
            raise IndexError(f"coefficient {k} beyond truncation {self.N}")
        return self._c[k] if k >= 0 else 0

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_list(self._c)

    def truncate(self, n: int) -> "TruncSeries":
        return TruncSeries(self._c, min(n, self.N))

    def is_zero(self) -> bool:
        return not any(self._c)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, int):
            return TruncSeries([other], self.N)
        if isinstance(other, LaurentPoly):
            return TruncSeries.from_poly(other, self.N)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = min(self.N, o.N)
        return TruncSeries([a + b for a, b in zip(self._c[: n + 1], o._c[: n + 1])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self._c], self.N)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = min(self.N, o.N)
        c = [0] * (n + 1)
        for i, a in enumerate(self._c[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    if o._c[j]:
                        c[i + j] += a * o._c[j]
        return TruncSeries(c, n)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; needs constant term +1 or -1."""
        c0 = self._c[0]
        if c0 not in (1, -1):
            raise ZeroDivisionError(f"constant term {c0} is not a unit in Z[[t]]")
        inv = [0] * (self.N + 1)
        inv[0] = c0
        for k in range(1, self.N + 1):
            s = sum(self._c[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -s * c0
        return TruncSeries(inv, self.N)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, TruncSeries) else other
        if o is NotImplemented:
            return NotImplemented
        n = min(self.N, o.N)
        return self._c[: n + 1] == o._c[: n + 1]

    def __hash__(self):
        return hash((self._c, self.N))

    def __bool__(self):
        return any(self._c)

    def __repr__(self):
        return f"TruncSeries({self.to_poly()} + O(t^{self.N + 1}))"


Entry = Union[LaurentPoly, TruncSeries]


def eval_at(p: LaurentPoly, x: int) -> int:
    """Value of ``p`` at the integer ``x``."""
    if x == 0 and any(k < 0 for k, _ in p.terms()):
        raise ZeroDivisionError("negative exponent evaluated at 0")
    total = 0
    for k, c in p.terms():
        if k >= 0:
            total += c * x ** k
        else:
            # x is +-1 for every use in this package; keep the general case exact
            q, r = divmod(c, x ** (-k))
            if r:
                raise ValueError(f"value at {x} is not an integer")
            total += q
    return total


def twist_neg(p: LaurentPoly) -> LaurentPoly:
    """``p(-t)``."""
    return LaurentPoly({k: (-c if k % 2 else c) for k, c in p.terms()})


def kl_expand(ell_i: int, ell_j: int, p: Sequence[int]) -> LaurentPoly:
    """``t**(ell_j - ell_i) * p(t**-2)`` where ``p[m]`` is the coefficient of ``u**m``."""
    s = ell_j - ell_i
    return LaurentPoly({s - 2 * m: c for m, c in enumerate(p)})


def kl_recover(ell_i: int, ell_j: int, a: LaurentPoly) -> Optional[List[int]]:
    """Inverse of :func:`kl_expand`: coefficients of ``p`` or None if ``a`` has no such shape."""
    s = ell_j - ell_i
    out: Dict[int, int] = {}
    for k, c in a.terms():
        m2 = s - k
        if m2 < 0 or m2 % 2:
            return None
        out[m2 // 2] = c
    if not out:
        return []
    return [out.get(m, 0) for m in range(max(out) + 1)]


class LabelError(ValueError):
    pass


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix with rows and columns indexed by ``labels``."""

    labels: Tuple[Hashable, ...]
    rows: Tuple[Tuple[Entry, ...], ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise LabelError(f"duplicate labels in {labels!r}")
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise ValueError("PolyMatrix must be square and match its labels")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_function(cls, labels: Sequence[Hashable], f) -> "PolyMatrix":
        return cls(tuple(labels), tuple(tuple(_as_entry(f(i, j)) for j in labels) for i in labels))

    @classmethod
    def from_dict(cls, labels: Sequence[Hashable], entries: Mapping[Tuple[Hashable, Hashable], Entry]) -> "PolyMatrix":
        for (i, j) in entries:
            if i not in labels or j not in labels:
                raise LabelError(f"entry ({i!r}, {j!r}) outside labels")
        return cls.from_function(labels, lambda i, j: entries.get((i, j), ZERO_POLY))

    @classmethod
    def identity(cls, labels: Sequence[Hashable]) -> "PolyMatrix":
        return cls.from_function(labels, lambda i, j: ONE_POLY if i == j else ZERO_POLY)

    @classmethod
    def diagonal(cls, labels: Sequence[Hashable], diag: Mapping[Hashable, Entry]) -> "PolyMatrix":
        return cls.from_function(labels, lambda i, j: diag[i] if i == j else ZERO_POLY)

    def index(self, label) -> int:
        return self.labels.index(label)

    def __getitem__(self, key) -> Entry:
        i, j = key
        return self.rows[self.labels.index(i)][self.labels.index(j)]

    def entries(self):
        for a, i in enumerate(self.labels):
            for b, j in enumerate(self.labels):
                yield i, j, self.rows[a][b]

    def diag(self) -> Dict[Hashable, Entry]:
        return {i: self.rows[k][k] for k, i in enumerate(self.labels)}

    def is_diagonal(self) -> bool:
        return all(not e for i, j, e in self.entries() if i != j)

    def is_symmetric(self) -> bool:
        return self.asymmetry() is None

    def asymmetry(self) -> Optional[Tuple[Hashable, Hashable]]:
        n = len(self.labels)
        for a in range(n):
            for b in range(a + 1, n):
                if self.rows[a][b] != self.rows[b][a]:
                    return self.labels[a], self.labels[b]
        return None

    def relabel(self, labels: Sequence[Hashable]) -> "PolyMatrix":
        """Same matrix with rows/columns listed in the order ``labels``."""
        if set(labels) != set(self.labels) or len(labels) != len(self.labels):
            raise LabelError("relabel needs a permutation of the labels")
        return PolyMatrix.from_function(labels, lambda i, j: self[i, j])

    def rename(self, mapping: Mapping[Hashable, Hashable]) -> "PolyMatrix":
        return PolyMatrix(tuple(mapping[i] for i in self.labels), self.rows)

    def map(self, f) -> "PolyMatrix":
        return PolyMatrix(self.labels, tuple(tuple(f(e) for e in r) for r in self.rows))

    def truncate(self, N: int) -> "PolyMatrix":
        return self.map(lambda e: TruncSeries.from_poly(e, N) if isinstance(e, LaurentPoly) else e.truncate(N))

    def to_polys(self) -> "PolyMatrix":
        return self.map(lambda e: e.to_poly() if isinstance(e, TruncSeries) else e)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.labels == other.labels and all(
            x == y for r1, r2 in zip(self.rows, other.rows) for x, y in zip(r1, r2))

    def __hash__(self):
        return hash(self.labels)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        _check_labels(self, other)
        return PolyMatrix(self.labels, tuple(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other):
        _check_labels(self, other)
        return PolyMatrix(self.labels, tuple(
            tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __str__(self):
        w = [[str(e) if isinstance(e, LaurentPoly) else repr(e) for e in r] for r in self.rows]
        return "\n".join(f"{i!s}: [" + ", ".join(r) + "]" for i, r in zip(self.labels, w))


def _as_entry(x) -> Entry:
    if isinstance(x, (LaurentPoly, TruncSeries)):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


def _check_labels(a: PolyMatrix, b: PolyMatrix) -> None:
    if a.labels != b.labels:
        raise LabelError(f"label mismatch: {a.labels!r} vs {b.labels!r}")


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    _check_labels(a, b)
    n = len(a.labels)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc: Entry = ZERO_POLY
            for k in range(n):
                x, y = a.rows[i][k], b.rows[k][j]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        rows.append(tuple(row))
    out = PolyMatrix(a.labels, tuple(rows))
    degs = [N for N in (_trunc_degree(a), _trunc_degree(b)) if N is not None]
    return out.truncate(min(degs)) if degs else out


def _trunc_degree(m: PolyMatrix) -> Optional[int]:
    degs = [e.N for r in m.rows for e in r if isinstance(e, TruncSeries)]
    return min(degs) if degs else None


def mat_transpose(a: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(a.labels, tuple(zip(*a.rows)))


def _positions(a: PolyMatrix, order: Sequence[Hashable]) -> Dict[Hashable, int]:
    if len(order) != len(a.labels) or set(order) != set(a.labels):
        raise LabelError("order must list every label exactly once")
    return {lab: k for k, lab in enumerate(order)}


def unitriangular_violation(a: PolyMatrix, order: Sequence[Hashable]) -> Optional[Tuple[Hashable, Hashable]]:
    """First entry breaking unitriangularity w.r.t. ``order``, or None."""
    pos = _positions(a, order)
    for i, j, e in a.entries():
        if i == j:
            if e != 1:
                return i, j
        elif pos[i] > pos[j] and e:
            return i, j
    return None


def mat_inv_triangular(a: PolyMatrix, order: Sequence[Hashable]) -> PolyMatrix:
    """Exact inverse of a matrix unitriangular with respect to the linear order ``order``.

    Entry ``(i, j)`` may be nonzero only when ``i`` comes no later than ``j``
    in ``order``; diagonal entries must be 1.
    """
    bad = unitriangular_violation(a, order)
    if bad is not None:
        raise ValueError(f"matrix is not unitriangular for this order; entry {bad!r} = {a[bad]}")
    lab = list(order)
    n = len(lab)
    A = [[a[i, j] for j in lab] for i in lab]
    X: List[List[Entry]] = [[ZERO_POLY] * n for _ in range(n)]
    for j in range(n):
        X[j][j] = ONE_POLY
        for i in range(j - 1, -1, -1):
            acc: Entry = ZERO_POLY
            for k in range(i + 1, j + 1):
                if A[i][k] and X[k][j]:
                    acc = A[i][k] * X[k][j] + acc
            X[i][j] = -acc
    inv = {(lab[i], lab[j]): X[i][j] for i in range(n) for j in range(n)}
    out = PolyMatrix.from_function(a.labels, lambda i, j: inv[i, j])
    N = _trunc_degree(a)
    return out.truncate(N) if N is not None else out


class FactorizationError(ArithmeticError):
    """Symmetric elimination failed; ``kind`` is 'asymmetric', 'pivot' or 'divisibility'."""

    def __init__(self, kind: str, position: Tuple[Hashable, ...], detail: str):
        super().__init__(f"{kind} failure at {position!r}: {detail}")
        self.kind = kind
        self.position = position
        self.detail = detail

    def as_dict(self) -> dict:
        return {"kind": self.kind, "position": [str(p) for p in self.position], "detail": self.detail}


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> Optional[LaurentPoly]:
    """``num / den`` in Z[t] when ``den(0)`` is a unit and the division is exact, else None."""
    if num.is_zero():
        return ZERO_POLY
    c0 = den.coeff(0)
    if c0 not in (1, -1) or not den.is_polynomial() or not num.is_polynomial():
        return None
    top = num.degree - den.degree
    if top < 0:
        return None
    q = (TruncSeries.from_poly(num, top) / TruncSeries.from_poly(den, top)).to_poly()
    return q if q * den == num else None


@dataclass(frozen=True)
class Congruence:
    a: PolyMatrix
    d: PolyMatrix
    order: Tuple[Hashable, ...]
    N: int


def congruence_factor(E: PolyMatrix, order: Sequence[Hashable], N: int) -> Congruence:
    """Write symmetric ``E`` as ``transpose(a) * d * a`` with ``a`` unitriangular.

    Symmetric elimination along ``order``: with ``r`` running over earlier
    labels, ``d_k = E_kk - sum d_r a_rk**2`` and
    ``a_kj = (E_kj - sum d_r a_rk a_rj) / d_k``.  Entries are treated as
    polynomials known through degree ``N``; each pivot needs constant term
    +-1 and each quotient must be an exact polynomial.  Raises
    :class:`FactorizationError` with a witness otherwise.
    """
    pos = _positions(E, order)
    E = E.to_polys().map(lambda e: e.truncate(N))
    bad = E.asymmetry()
    if bad is not None:
        raise FactorizationError("asymmetric", bad, f"{E[bad]} != {E[bad[1], bad[0]]}")
    lab = list(order)
    n = len(lab)
    e = [[E[i, j] for j in lab] for i in lab]
    a: List[List[LaurentPoly]] = [[ONE_POLY if i == j else ZERO_POLY for j in range(n)] for i in range(n)]
    d: List[LaurentPoly] = [ZERO_POLY] * n
    for k in range(n):
        dk = e[k][k]
        for r in range(k):
            dk = dk - d[r] * a[r][k] * a[r][k]
        if dk.coeff(0) not in (1, -1) or not dk.is_polynomial():
            raise FactorizationError("pivot", (lab[k],), f"pivot {dk} has no unit constant term")
        d[k] = dk
        for j in range(k + 1, n):
            num = e[k][j]
            for r in range(k):
                num = num - d[r] * a[r][k] * a[r][j]
            q = exact_divide(num, dk)
            if q is None:
                raise FactorizationError(
                    "divisibility", (lab[k], lab[j]), f"{num} is not divisible by pivot {dk}")
            a[k][j] = q
    amap = {(lab[i], lab[j]): a[i][j] for i in range(n) for j in range(n)}
    A = PolyMatrix.from_function(E.labels, lambda i, j: amap[i, j])
    D = PolyMatrix.diagonal(E.labels, {lab[k]: d[k] for k in range(n)})
    back = mat_mul(mat_mul(mat_transpose(A), D), A)
    assert back.map(lambda x: x.truncate(N)) == E, "elimination did not reproduce E"
    return Congruence(A, D, tuple(lab), N)
