"""Exact linear algebra over the rationals.

Matrices are lists of rows, vectors are lists, entries are ``Fraction``.
Everything here is small and dense; the algebras we handle have dimension
in the tens at most.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = List[Fraction]
Matrix = List[List[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def unit_vector(n: int, k: int) -> Vector:
    v = [ZERO] * n
    v[k] = ONE
    return v


def transpose(m: Sequence[Sequence[Fraction]], cols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        orow[j] += x * y
    return out


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s)
    return out


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return [x + y for x, y in zip(u, v)]


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return [c * x for x in v]


def combine(coeffs: Sequence[Fraction], mats: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    """Return ``sum(c * M)`` over paired coefficients and matrices."""
    out = zeros(rows, cols)
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i in range(rows):
            mi, oi = m[i], out[i]
            for j in range(cols):
                if mi[j]:
                    oi[j] += c * mi[j]
    return out


def columns(m: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    return [[row[j] for row in m] for j in range(ncols)]


def from_columns(cols: Sequence[Sequence[Fraction]], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


def is_zero_matrix(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(not x for row in m for x in row)


def rref(m: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(row) for row in m]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            inv = 1 / piv
            a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> List[Vector]:
    """Basis of ``{x : m x = 0}``."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [unit_vector(ncols, k) for k in range(ncols)]
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(r, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def span_basis(vectors: Iterable[Sequence[Fraction]], dim: int) -> List[Vector]:
    """An echelon basis of the span of ``vectors`` (each of length ``dim``)."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    r, _ = rref(vecs)
    return r


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction], ncols: int) -> Optional[Vector]:
    """One solution of ``m x = b`` or None."""
    if not m:
        return [ZERO] * ncols if all(not x for x in b) else None
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    r, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols]
    return x


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(m)
    aug = [list(row) + unit_vector(n, i) for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


class Basis:
    """A linearly independent family in Q^dim with fast coordinate lookup."""

    def __init__(self, vectors: Sequence[Sequence[Fraction]], dim: int):
        self.vectors: List[Vector] = [list(v) for v in vectors]
        self.dim = dim
        k = len(self.vectors)
        if k:
            # independent rows of the column matrix give an invertible square block
            _, rows = rref(self.vectors)
            if len(rows) != k:
                raise ValueError("vectors are linearly dependent")
            self._rows = rows
            block = [[self.vectors[c][r] for c in range(k)] for r in rows]
            self._inv = inverse(block)
        else:
            self._rows = []
            self._inv = []

    def __len__(self) -> int:
        return len(self.vectors)

    def coords(self, v: Sequence[Fraction], check: bool = False) -> Vector:
        """Coordinates of ``v``, assumed to lie in the span."""
        if not self.vectors:
            if check and any(v):
                raise ValueError("vector not in span")
            return []
        sub = [v[r] for r in self._rows]
        x = matvec(self._inv, sub)
        if check:
            back = [ZERO] * self.dim
            for c, vec in zip(x, self.vectors):
                if c:
                    for i, y in enumerate(vec):
                        if y:
                            back[i] += c * y
            if back != list(v):
                raise ValueError("vector not in span")
        return x

    def contains(self, v: Sequence[Fraction]) -> bool:
        try:
            self.coords(v, check=True)
        except ValueError:
            return False
        return True

    def matrix(self) -> Matrix:
        """The vectors as columns of a ``dim x len`` matrix."""
        return from_columns(self.vectors, self.dim)


def complement(sub: Sequence[Sequence[Fraction]], dim: int) -> Tuple[List[int], Matrix]:
    """Standard-basis complement of a subspace and the quotient projection.

    Returns ``(indices, proj)`` where the unit vectors at ``indices`` map to a
    basis of ``Q^dim / span(sub)`` and ``proj`` (``len(indices) x dim``) takes
    a vector to its coordinates in that quotient basis.
    """
    sub = span_basis(sub, dim)
    chosen: List[int] = []
    current = [list(v) for v in sub]
    r = len(current)
    for k in range(dim):
        trial = current + [unit_vector(dim, k)]
        if rank(trial) > r:
            current = trial
            chosen.append(k)
            r += 1
        if r == dim:
            break
    full = from_columns(current, dim)
    inv = inverse(full)
    proj = inv[len(sub):]
    return chosen, proj
