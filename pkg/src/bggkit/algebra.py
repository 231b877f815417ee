"""Finite-dimensional split basic algebras over Q given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from . import linalg as la
from .linalg import ONE, ZERO, Basis, Matrix, Vector


class AlgebraError(ValueError):
    """Raised when structure constants fail an axiom; ``violations`` holds the witnesses."""

    def __init__(self, violations: List["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: Tuple

    def __str__(self):
        return f"{self.kind}: {self.witness!r}"


class Algebra:
    """Associative unital algebra with a complete set of orthogonal idempotents.

    ``table[a][b]`` is the coordinate vector of ``basis[a] * basis[b]``.
    ``idempotents`` maps each vertex label (an element of the index set) to
    the basis index of its idempotent.
    """

    def __init__(
        self,
        basis: Sequence[str],
        table: Sequence[Sequence[Sequence[Fraction]]],
        idempotents: Mapping[Hashable, int],
        unit: Optional[Sequence[Fraction]] = None,
        name: str = "",
        check: bool = True,
    ):
        self.basis = tuple(str(b) for b in basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("duplicate basis labels")
        self.dim = len(self.basis)
        self.table = tuple(tuple(tuple(la.as_fraction(x) for x in v) for v in row) for row in table)
        self.idempotents: Dict[Hashable, int] = dict(idempotents)
        self.vertices: Tuple[Hashable, ...] = tuple(self.idempotents)
        if unit is None:
            unit = [ZERO] * self.dim
            for k in self.idempotents.values():
                unit[k] += ONE
        self.unit = tuple(la.as_fraction(x) for x in unit)
        self.name = name
        if check:
            bad = validate_algebra(self)
            if bad:
                raise AlgebraError(bad)

    @classmethod
    def from_sparse(cls, basis, products: Mapping[Tuple[int, int], Mapping[int, Fraction]], idempotents,
                    unit=None, name="", check=True) -> "Algebra":
        n = len(basis)
        table = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (a, b), vec in products.items():
            for c, x in vec.items():
                table[a][b][c] += la.as_fraction(x)
        return cls(basis, table, idempotents, unit, name, check)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} dim={self.dim} vertices={list(self.vertices)}>"

    # elementary arithmetic

    def element(self, k: int) -> Vector:
        return la.unit_vector(self.dim, k)

    def e(self, i: Hashable) -> Vector:
        if i not in self.idempotents:
            raise KeyError(f"{i!r} is not a vertex")
        return self.element(self.idempotents[i])

    def mul(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.table[a]
            for b, yb in enumerate(y):
                if not yb:
                    continue
                c = xa * yb
                for k, z in enumerate(row[b]):
                    if z:
                        out[k] += c * z
        return out

    @cached_property
    def left_matrices(self) -> Tuple[Matrix, ...]:
        """``L_a`` with ``L_a[c][b]`` the c-coordinate of ``basis[a] * basis[b]``."""
        n = self.dim
        return tuple([[self.table[a][b][c] for b in range(n)] for c in range(n)] for a in range(n))

    @cached_property
    def right_matrices(self) -> Tuple[Matrix, ...]:
        n = self.dim
        return tuple([[self.table[a][b][c] for a in range(n)] for c in range(n)] for b in range(n))

    def left_matrix(self, x: Sequence[Fraction]) -> Matrix:
        return la.combine(x, self.left_matrices, self.dim, self.dim)

    def right_matrix(self, x: Sequence[Fraction]) -> Matrix:
        return la.combine(x, self.right_matrices, self.dim, self.dim)

    # structure

    @cached_property
    def radical(self) -> List[Vector]:
        """Basis of rad(A) via the trace form ``(x, y) -> Tr(L_{xy})``."""
        return trace_radical(self.left_matrices, self.dim)

    @cached_property
    def radical_basis(self) -> Basis:
        return Basis(self.radical, self.dim)

    def radical_power(self, k: int) -> List[Vector]:
        return self._radical_powers(k)[k]

    def _radical_powers(self, k: int) -> List[List[Vector]]:
        cache = self.__dict__.setdefault("_rad_powers", [[la.unit_vector(self.dim, i) for i in range(self.dim)], self.radical])
        while len(cache) <= k:
            prev = cache[-1]
            prods = [self.mul(x, r) for x in prev for r in self.radical]
            cache.append(la.span_basis(prods, self.dim))
        return cache

    @cached_property
    def loewy_length(self) -> int:
        k = 0
        while self.radical_power(k):
            k += 1
        return k

    @cached_property
    def semisimple_coordinates(self) -> Matrix:
        """Row ``a`` gives the coefficients of ``basis[a]`` on the idempotents modulo rad(A)."""
        vecs = [self.e(i) for i in self.vertices] + self.radical
        b = Basis(vecs, self.dim)
        m = len(self.vertices)
        return [b.coords(self.element(a))[:m] for a in range(self.dim)]

    def corner(self, i: Hashable, j: Hashable) -> List[Vector]:
        """Basis of ``e_i A e_j``."""
        ei, ej = self.e(i), self.e(j)
        return la.span_basis([self.mul(self.mul(ei, self.element(a)), ej) for a in range(self.dim)], self.dim)

    def left_ideal(self, x: Sequence[Fraction]) -> List[Vector]:
        """Basis of ``A x``."""
        return la.span_basis([self.mul(self.element(a), x) for a in range(self.dim)], self.dim)

    def right_ideal(self, x: Sequence[Fraction]) -> List[Vector]:
        return la.span_basis([self.mul(x, self.element(a)) for a in range(self.dim)], self.dim)

    def two_sided_ideal(self, gens: Sequence[Sequence[Fraction]]) -> List[Vector]:
        """Basis of the two-sided ideal generated by ``gens``."""
        vecs = []
        for g in gens:
            left = [self.mul(self.element(a), g) for a in range(self.dim)]
            for x in left:
                vecs.extend(self.mul(x, self.element(b)) for b in range(self.dim))
        return la.span_basis(vecs, self.dim)

    def idempotent_sum(self, labels) -> Vector:
        v = [ZERO] * self.dim
        for i in labels:
            v[self.idempotents[i]] += ONE
        return v

    def relabel(self, mapping: Mapping[Hashable, Hashable], basis_order: Optional[Sequence[int]] = None) -> "Algebra":
        """Rename vertices and optionally reorder the basis (``basis_order[new] = old``)."""
        perm = list(basis_order) if basis_order is not None else list(range(self.dim))
        if sorted(perm) != list(range(self.dim)):
            raise ValueError("basis_order must be a permutation")
        inv = {old: new for new, old in enumerate(perm)}
        table = [[[self.table[perm[a]][perm[b]][perm[c]] for c in range(self.dim)]
                  for b in range(self.dim)] for a in range(self.dim)]
        idem = {mapping[i]: inv[k] for i, k in self.idempotents.items()}
        idem = {mapping[i]: idem[mapping[i]] for i in self.vertices}
        unit = [self.unit[perm[c]] for c in range(self.dim)]
        return Algebra([self.basis[k] for k in perm], table, idem, unit, self.name, check=False)


def trace_radical(mats: Sequence[Matrix], size: int) -> List[Vector]:
    """Radical of the algebra spanned by ``mats`` acting faithfully on Q^size.

    In characteristic zero, x lies in the radical iff ``Tr(x y) = 0`` for all
    y in the algebra.  Returns coefficient vectors with respect to ``mats``.
    """
    m = len(mats)
    gram = [[ZERO] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            tr = ZERO
            ma, mb = mats[a], mats[b]
            for i in range(size):
                row = ma[i]
                for k in range(size):
                    if row[k] and mb[k][i]:
                        tr += row[k] * mb[k][i]
            gram[a][b] = gram[b][a] = tr
    return la.nullspace(gram, m)


def validate_algebra(A: Algebra) -> List[Violation]:
    """All axiom violations found; an empty list means the data is a basic split algebra."""
    n = A.dim
    out: List[Violation] = []
    if any(len(row) != n or any(len(v) != n for v in row) for row in A.table) or len(A.table) != n:
        return [Violation("shape", (n,))]
    for i, k in A.idempotents.items():
        if not 0 <= k < n:
            return [Violation("idempotent-index", (i, k))]
    for a in range(n):
        for b in range(n):
            ab = A.table[a][b]
            for c in range(n):
                lhs = A.mul(ab, A.element(c))
                rhs = A.mul(A.element(a), A.table[b][c])
                if lhs != rhs:
                    out.append(Violation("associativity", (A.basis[a], A.basis[b], A.basis[c])))
                    return out
    u = list(A.unit)
    for a in range(n):
        x = A.element(a)
        if A.mul(u, x) != x or A.mul(x, u) != x:
            out.append(Violation("unit", (A.basis[a],)))
            return out
    verts = list(A.vertices)
    for i in verts:
        for j in verts:
            prod = A.mul(A.e(i), A.e(j))
            want = A.e(i) if i == j else [ZERO] * n
            if prod != want:
                out.append(Violation("orthogonality", (i, j)))
    if A.idempotent_sum(verts) != u:
        out.append(Violation("completeness", tuple(verts)))
    if out:
        return out
    top = n - len(A.radical)
    if top != len(verts):
        out.append(Violation("basic-split", (top, len(verts))))
    return out


@dataclass
class IdempotentQuotient:
    """``B = A / A e A`` for ``e`` the sum of the idempotents in ``removed``.

    ``lift[k]`` is the A-basis index representing B-basis element ``k`` and
    ``proj`` maps A-coordinates to B-coordinates.
    """

    A: Algebra
    B: Algebra
    removed: Tuple[Hashable, ...]
    ideal: List[Vector]
    lift: List[int]
    proj: Matrix

    def project(self, x: Sequence[Fraction]) -> Vector:
        return la.matvec(self.proj, x)

    def to_b(self, V):
        """An A-module killed by the ideal, viewed as a B-module."""
        from .modules import LeftModule

        for g in self.ideal:
            if not la.is_zero_matrix(V.act(g)):
                raise ValueError("module is not annihilated by the idempotent ideal")
        return LeftModule(self.B, [V.action[k] for k in self.lift])

    def to_a(self, W):
        """A B-module pulled back along the projection A -> B."""
        from .modules import LeftModule

        acts = [la.combine(self.project(self.A.element(a)), W.action, W.dim, W.dim) for a in range(self.A.dim)]
        return LeftModule(self.A, acts)


def quotient_by_idempotent_ideal(A: Algebra, removed) -> IdempotentQuotient:
    removed = tuple(removed)
    if not removed or set(removed) >= set(A.vertices):
        raise ValueError("the removed vertex set must be a proper nonempty subset")
    for i in removed:
        if i not in A.idempotents:
            raise KeyError(f"{i!r} is not a vertex")
    keep = [i for i in A.vertices if i not in removed]
    ideal = A.two_sided_ideal([A.idempotent_sum(removed)])
    # prefer surviving idempotents as basis representatives
    preferred = [A.idempotents[i] for i in keep] + [a for a in range(A.dim) if a not in {A.idempotents[i] for i in keep}]
    current = list(ideal)
    r = len(current)
    lift: List[int] = []
    for a in preferred:
        trial = current + [A.element(a)]
        if la.rank(trial) > r:
            current = trial
            lift.append(a)
            r += 1
    full = la.from_columns(current, A.dim)
    proj = la.inverse(full)[len(ideal):]
    m = len(lift)

    def proj_vec(x):
        return la.matvec(proj, x)

    table = [[proj_vec(A.table[lift[p]][lift[q]]) for q in range(m)] for p in range(m)]
    idem = {i: lift.index(A.idempotents[i]) for i in keep}
    unit = proj_vec(list(A.unit))
    B = Algebra([A.basis[k] for k in lift], table, idem, unit, name=f"{A.name}/<{','.join(map(str, removed))}>",
                check=True)
    return IdempotentQuotient(A, B, removed, ideal, lift, proj)
