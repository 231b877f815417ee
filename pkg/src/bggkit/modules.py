"""Finite-dimensional left modules, their maps, filtrations and Verma quotients."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import Algebra, trace_radical
from .linalg import ONE, ZERO, Basis, Matrix, Vector
from .order import PartialOrder
from .polyseries import LaurentPoly


class GrothendieckVector:
    """Integer vector indexed by the vertices of an algebra."""

    __slots__ = ("vertices", "counts")

    def __init__(self, vertices: Sequence[Hashable], counts: Mapping[Hashable, int]):
        self.vertices = tuple(vertices)
        for k in counts:
            if k not in self.vertices:
                raise KeyError(f"{k!r} is not a vertex")
        self.counts = tuple(int(counts.get(v, 0)) for v in self.vertices)

    @classmethod
    def indicator(cls, vertices, i) -> "GrothendieckVector":
        return cls(vertices, {i: 1})

    @classmethod
    def zero(cls, vertices) -> "GrothendieckVector":
        return cls(vertices, {})

    def __getitem__(self, i) -> int:
        return self.counts[self.vertices.index(i)]

    def as_dict(self) -> Dict[Hashable, int]:
        return dict(zip(self.vertices, self.counts))

    def _check(self, other):
        if not isinstance(other, GrothendieckVector) or other.vertices != self.vertices:
            raise ValueError("Grothendieck vectors over different vertex sets")

    def __add__(self, other):
        self._check(other)
        return GrothendieckVector(self.vertices, {v: a + b for v, a, b in zip(self.vertices, self.counts, other.counts)})

    def __sub__(self, other):
        self._check(other)
        return GrothendieckVector(self.vertices, {v: a - b for v, a, b in zip(self.vertices, self.counts, other.counts)})

    def __rmul__(self, c: int):
        return GrothendieckVector(self.vertices, {v: c * a for v, a in zip(self.vertices, self.counts)})

    def __eq__(self, other):
        return isinstance(other, GrothendieckVector) and self.vertices == other.vertices and self.counts == other.counts

    def __hash__(self):
        return hash((self.vertices, self.counts))

    def __le__(self, other):
        self._check(other)
        return all(a <= b for a, b in zip(self.counts, other.counts))

    def total(self) -> int:
        return sum(self.counts)

    def __repr__(self):
        return "[" + ", ".join(f"{v}:{c}" for v, c in zip(self.vertices, self.counts)) + "]"


class LeftModule:
    """Module given by one action matrix per basis element of its algebra.

    ``algebra`` may be None for auxiliary modules over an algebra known only
    through the action matrices (End rings, corner rings); such modules
    support Hom and isomorphism tests but not Grothendieck classes.
    """

    def __init__(self, algebra: Optional[Algebra], action: Sequence[Matrix], name: str = "", dim: Optional[int] = None):
        self.algebra = algebra
        self.action: Tuple[Matrix, ...] = tuple(action)
        if dim is None:
            dim = len(self.action[0]) if self.action else 0
        self.dim = dim
        self.name = name
        if algebra is not None and len(self.action) != algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LeftModule{label} dim={self.dim}>"

    def act(self, x: Sequence[Fraction]) -> Matrix:
        return la.combine(x, self.action, self.dim, self.dim)

    def generator_actions(self) -> List[Matrix]:
        """Action matrices of an algebra generating set (all basis elements for raw modules)."""
        if self.algebra is None:
            return list(self.action)
        return [self.act(g) for g in algebra_generators(self.algebra)]

    def is_valid(self) -> bool:
        A = self.algebra
        if A is None:
            return True
        if self.act(list(A.unit)) != la.identity(self.dim):
            return False
        for a in range(A.dim):
            for b in range(A.dim):
                if la.matmul(self.action[a], self.action[b]) != self.act(list(A.table[a][b])):
                    return False
        return True

    def vertex_space(self, i) -> List[Vector]:
        """Basis of ``e_i V``."""
        return _image(self.act(self.algebra.e(i)), self.dim)

    def rename(self, algebra: Algebra, basis_order: Optional[Sequence[int]] = None) -> "LeftModule":
        """Same matrices over a relabelled copy of the algebra."""
        perm = list(basis_order) if basis_order is not None else list(range(len(self.action)))
        return LeftModule(algebra, [self.action[k] for k in perm], self.name)


@dataclass(frozen=True)
class ModuleMap:
    source: LeftModule
    target: LeftModule
    matrix: Matrix

    def is_intertwiner(self) -> bool:
        return all(la.matmul(self.matrix, s) == la.matmul(t, self.matrix)
                   for s, t in zip(self.source.action, self.target.action))

    def rank(self) -> int:
        return la.rank(self.matrix)


def algebra_generators(A: Algebra) -> List[Vector]:
    """Idempotents plus lifts of a basis of rad/rad^2; these generate A as an algebra."""
    cache = A.__dict__.get("_generators")
    if cache is not None:
        return cache
    gens = [A.e(i) for i in A.vertices]
    rad2 = A.radical_power(2)
    current = list(rad2)
    r = la.rank(current) if current else 0
    for v in A.radical:
        trial = current + [v]
        if la.rank(trial) > r:
            current = trial
            r += 1
            gens.append(v)
    A.__dict__["_generators"] = gens
    return gens


def _image(m: Matrix, ncols: int) -> List[Vector]:
    return la.span_basis(la.columns(m, ncols), len(m))


def grothendieck_class(V: LeftModule) -> GrothendieckVector:
    """Entry ``i`` is ``dim e_i V``, the multiplicity of the simple at ``i``."""
    A = V.algebra
    return GrothendieckVector(A.vertices, {i: la.rank(V.act(A.e(i))) for i in A.vertices})


def subspace_class(V: LeftModule, vectors: Sequence[Vector]) -> GrothendieckVector:
    """Class of the submodule spanned by ``vectors`` (assumed closed)."""
    A = V.algebra
    counts = {}
    for i in A.vertices:
        ei = V.act(A.e(i))
        counts[i] = la.rank([la.matvec(ei, v) for v in vectors]) if vectors else 0
    return GrothendieckVector(A.vertices, counts)


# constructions

def simple(A: Algebra, i) -> LeftModule:
    """The one-dimensional module where e_i acts as 1 and rad(A) and the other idempotents as 0."""
    if i not in A.idempotents:
        raise KeyError(f"{i!r} is not a vertex")
    k = A.vertices.index(i)
    coords = A.semisimple_coordinates
    return LeftModule(A, [[[coords[a][k]]] for a in range(A.dim)], name=f"L({i})")


def projective_basis(A: Algebra, i) -> Basis:
    """Basis of the left ideal A e_i inside A."""
    cache = A.__dict__.setdefault("_proj_basis", {})
    if i not in cache:
        cache[i] = Basis(A.left_ideal(A.e(i)), A.dim)
    return cache[i]


def projective(A: Algebra, i) -> LeftModule:
    cache = A.__dict__.setdefault("_proj_module", {})
    if i not in cache:
        basis = projective_basis(A, i)
        acts = []
        for a in range(A.dim):
            La = A.left_matrices[a]
            cols = [basis.coords(la.matvec(La, v)) for v in basis.vectors]
            acts.append(la.from_columns(cols, len(basis)))
        cache[i] = LeftModule(A, acts, name=f"P({i})", dim=len(basis))
    return cache[i]


def regular_module(A: Algebra) -> LeftModule:
    return LeftModule(A, A.left_matrices, name="A")


def direct_sum(modules: Sequence[LeftModule], algebra: Optional[Algebra] = None) -> LeftModule:
    algebra = algebra if algebra is not None else (modules[0].algebra if modules else None)
    dims = [m.dim for m in modules]
    total = sum(dims)
    nact = algebra.dim if algebra is not None else len(modules[0].action)
    acts = []
    for a in range(nact):
        m = la.zeros(total, total)
        off = 0
        for mod in modules:
            blk = mod.action[a]
            for r in range(mod.dim):
                for c in range(mod.dim):
                    if blk[r][c]:
                        m[off + r][off + c] = blk[r][c]
            off += mod.dim
        acts.append(m)
    return LeftModule(algebra, acts, name=" + ".join(m.name for m in modules), dim=total)


def close_submodule(V: LeftModule, vectors: Sequence[Vector]) -> List[Vector]:
    """Echelon basis of the submodule generated by ``vectors``."""
    gens = V.generator_actions()
    basis = la.span_basis(vectors, V.dim)
    while True:
        new = basis + [la.matvec(g, v) for g in gens for v in basis]
        nb = la.span_basis(new, V.dim)
        if len(nb) == len(basis):
            return basis
        basis = nb


def submodule(V: LeftModule, vectors: Sequence[Vector], closed: bool = False) -> Tuple[LeftModule, Basis]:
    """The submodule generated by ``vectors`` and its basis inside V."""
    vecs = list(vectors) if closed else close_submodule(V, vectors)
    vecs = la.span_basis(vecs, V.dim) if vecs else []
    basis = Basis(vecs, V.dim)
    acts = []
    for m in V.action:
        cols = [basis.coords(la.matvec(m, v)) for v in basis.vectors]
        acts.append(la.from_columns(cols, len(basis)))
    return LeftModule(V.algebra, acts, dim=len(basis)), basis


def quotient(V: LeftModule, vectors: Sequence[Vector]) -> Tuple[LeftModule, Matrix]:
    """``V / U`` for the submodule U generated by ``vectors``, with the projection matrix."""
    sub = close_submodule(V, vectors) if vectors else []
    chosen, proj = la.complement(sub, V.dim)
    acts = []
    for m in V.action:
        cols = [la.matvec(proj, [row[c] for row in m]) for c in chosen]
        acts.append(la.from_columns(cols, len(chosen)))
    return LeftModule(V.algebra, acts, dim=len(chosen)), proj


def kernel(f: ModuleMap) -> Tuple[LeftModule, Basis]:
    vecs = la.nullspace(f.matrix, f.source.dim) if f.target.dim else [la.unit_vector(f.source.dim, k) for k in range(f.source.dim)]
    return submodule(f.source, vecs, closed=True)


# Hom and isomorphism

def hom_space(V: LeftModule, W: LeftModule) -> List[Matrix]:
    """Basis of Hom_A(V, W) as ``W.dim x V.dim`` matrices."""
    dv, dw = V.dim, W.dim
    if dv == 0 or dw == 0:
        return []
    if V.algebra is not None and V.algebra is W.algebra:
        gens = algebra_generators(V.algebra)
        pairs = [(V.act(g), W.act(g)) for g in gens]
    else:
        pairs = list(zip(V.action, W.action))
    nvar = dv * dw
    rows = []
    for Va, Wa in pairs:
        for r in range(dw):
            for c in range(dv):
                row = [ZERO] * nvar
                for k in range(dw):
                    if Wa[r][k]:
                        row[k * dv + c] += Wa[r][k]
                for k in range(dv):
                    if Va[k][c]:
                        row[r * dv + k] -= Va[k][c]
                if any(row):
                    rows.append(row)
    sol = la.nullspace(rows, nvar) if rows else [la.unit_vector(nvar, k) for k in range(nvar)]
    return [[v[r * dv:(r + 1) * dv] for r in range(dw)] for v in sol]


def _sweep_candidates(k: int, height: int = 2, cap: int = 400):
    seen = set()
    firsts = [tuple([1] * k), tuple(range(1, k + 1))] + [tuple(int(i == j) for j in range(k)) for i in range(k)]
    count = 0
    for c in firsts:
        if c not in seen:
            seen.add(c)
            count += 1
            yield c
    for h in range(1, height + 1):
        for c in itertools.product(range(-h, h + 1), repeat=k):
            if max(abs(x) for x in c) != h or c in seen:
                continue
            seen.add(c)
            count += 1
            if count > cap:
                return
            yield c


def generic_rank(mats: Sequence[Matrix], rows: int, cols: int) -> int:
    """Rank of ``sum x_k mats[k]`` over Q(x_1, ..., x_m), computed symbolically."""
    from sympy import QQ, symbols
    from sympy.polys.matrices import DomainMatrix

    if not mats or rows == 0 or cols == 0:
        return 0
    R = QQ[symbols(f"x0:{len(mats)}")]
    gens = R.gens
    entries = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = R.zero
            for g, m in zip(gens, mats):
                x = m[r][c]
                if x:
                    acc += g * QQ(x.numerator, x.denominator)
            row.append(acc)
        entries.append(row)
    return DomainMatrix(entries, (rows, cols), R).to_field().rank()


def find_element_of_rank(mats: Sequence[Matrix], rows: int, cols: int, target: int) -> Optional[Tuple[Tuple[int, ...], Matrix]]:
    """A combination of ``mats`` of rank ``target`` (the largest possible rank), or None.

    Integer combinations are swept first; if none works the generic rank is
    decided symbolically and, when it reaches ``target``, a witness is found
    on the grid ``{0..target}^m`` (a nonzero minor of degree <= target cannot
    vanish on all of it).
    """
    k = len(mats)
    if target == 0:
        return (tuple([0] * k), la.zeros(rows, cols))
    if k == 0 or target > min(rows, cols):
        return None
    for c in _sweep_candidates(k):
        m = la.combine([Fraction(x) for x in c], mats, rows, cols)
        if la.rank(m) >= target:
            return c, m
    if generic_rank(mats, rows, cols) < target:
        return None
    for c in itertools.product(range(target + 1), repeat=k):
        m = la.combine([Fraction(x) for x in c], mats, rows, cols)
        if la.rank(m) >= target:
            return c, m
    raise AssertionError("generic rank reached but no grid witness found")


def is_isomorphic(V: LeftModule, W: LeftModule) -> Tuple[bool, Optional[ModuleMap]]:
    """Decide ``V ~ W``; on success the certificate is an invertible intertwiner."""
    if V.dim != W.dim:
        return False, None
    if V.dim == 0:
        return True, ModuleMap(V, W, [])
    if V.algebra is not None and W.algebra is V.algebra and grothendieck_class(V) != grothendieck_class(W):
        return False, None
    homs = hom_space(V, W)
    found = find_element_of_rank(homs, W.dim, V.dim, V.dim)
    if found is None:
        return False, None
    return True, ModuleMap(V, W, found[1])


def find_surjection(V: LeftModule, W: LeftModule) -> Optional[ModuleMap]:
    if W.dim > V.dim:
        return None
    homs = hom_space(V, W)
    found = find_element_of_rank(homs, W.dim, V.dim, W.dim)
    return None if found is None else ModuleMap(V, W, found[1])


# radical and socle series

def radical_submodule(V: LeftModule, vectors: Optional[Sequence[Vector]] = None) -> List[Vector]:
    """Basis of ``rad(A) U`` for U spanned by ``vectors`` (default all of V)."""
    A = V.algebra
    if vectors is None:
        vectors = [la.unit_vector(V.dim, k) for k in range(V.dim)]
    if not vectors:
        return []
    rads = [V.act(r) for r in A.radical]
    return la.span_basis([la.matvec(m, v) for m in rads for v in vectors], V.dim)


def radical_filtration(V: LeftModule) -> List[List[Vector]]:
    """``[V, rad V, rad^2 V, ..., 0]`` as echelon bases."""
    cur = [la.unit_vector(V.dim, k) for k in range(V.dim)]
    out = [la.span_basis(cur, V.dim) if cur else []]
    while cur:
        cur = radical_submodule(V, cur)
        out.append(cur)
    return out


def socle_filtration(V: LeftModule) -> List[List[Vector]]:
    """``[0, soc V, soc^2 V, ..., V]`` with ``soc^k V = {v : rad(A)^k v = 0}``."""
    A = V.algebra
    out: List[List[Vector]] = [[]]
    k = 1
    while len(out[-1]) < V.dim:
        radk = A.radical_power(k)
        if not radk:
            out.append([la.unit_vector(V.dim, j) for j in range(V.dim)])
            break
        rows = [row for r in radk for row in V.act(r)]
        out.append(la.span_basis(la.nullspace(rows, V.dim), V.dim) if rows else [])
        k += 1
    return out


def _layers(V: LeftModule, chain: List[List[Vector]], descending: bool) -> List[GrothendieckVector]:
    classes = [subspace_class(V, s) for s in chain]
    if descending:
        return [classes[k] - classes[k + 1] for k in range(len(classes) - 1)]
    return [classes[k + 1] - classes[k] for k in range(len(classes) - 1)]


def radical_series(V: LeftModule) -> List[GrothendieckVector]:
    """Classes of the radical layers, top first."""
    return _layers(V, radical_filtration(V), descending=True)


def socle_series(V: LeftModule) -> List[GrothendieckVector]:
    """Classes of the socle layers, socle first."""
    return _layers(V, socle_filtration(V), descending=False)


def _same_subspace(u: List[Vector], v: List[Vector], dim: int) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    return la.rank(u + v) == len(u)


def radical_socle_coincide(V: LeftModule) -> bool:
    """``rad(A)^i V = soc^{p-i} V`` for all i, p being the Loewy length."""
    if V.dim == 0:
        raise ValueError("coincidence is defined for nonzero modules")
    rad = radical_filtration(V)
    soc = socle_filtration(V)
    p = len(rad) - 1
    if len(soc) - 1 != p:
        return False
    return all(_same_subspace(rad[i], soc[p - i], V.dim) for i in range(p + 1))


def radical_layer_series(V: LeftModule) -> Dict[Hashable, LaurentPoly]:
    """Per vertex i, ``sum_k dim e_i (rad^k V / rad^{k+1} V) t^k``."""
    layers = radical_series(V)
    return {i: LaurentPoly({k: layer[i] for k, layer in enumerate(layers)}) for i in V.algebra.vertices}


# Verma-type quotients

def _trace_subspace(A: Algebra, P: LeftModule, i, others: Sequence[Hashable]) -> List[Vector]:
    """Coordinates inside A e_i of ``sum_j A e_j A e_i`` over ``others``."""
    basis = projective_basis(A, i)
    vecs = []
    for j in others:
        for v in A.corner(j, i):
            vecs.extend(A.mul(A.element(a), v) for a in range(A.dim))
    if not vecs:
        return []
    return la.span_basis([basis.coords(v) for v in vecs], P.dim)


def verma_minus(A: Algebra, order: PartialOrder, i) -> LeftModule:
    """``A e_i / sum_{j not <= i} A e_j A e_i``."""
    P = projective(A, i)
    others = [j for j in A.vertices if not order.le(j, i)]
    M, _ = quotient(P, _trace_subspace(A, P, i, others))
    M.name = f"M-({i})"
    return M


def verma_plus(A: Algebra, order: PartialOrder, i) -> LeftModule:
    """``A e_i / sum_{j > i} A e_j A e_i``."""
    P = projective(A, i)
    others = [j for j in A.vertices if order.lt(i, j)]
    M, _ = quotient(P, _trace_subspace(A, P, i, others))
    M.name = f"M+({i})"
    return M


def verma_kernel_dims(A: Algebra, order: PartialOrder, i) -> Tuple[int, int]:
    """Dimensions of the subspaces killed in the small and large Verma quotients."""
    P = projective(A, i)
    small = close_submodule(P, _trace_subspace(A, P, i, [j for j in A.vertices if not order.le(j, i)]))
    large = close_submodule(P, _trace_subspace(A, P, i, [j for j in A.vertices if order.lt(i, j)]))
    return len(small), len(large)


def relative_projective(A: Algebra, K, k) -> LeftModule:
    """``A e_k / sum_{l not in K} A e_l A e_k``."""
    K = set(K)
    if k not in K:
        raise KeyError(f"{k!r} is not in the vertex subset")
    P = projective(A, k)
    M, _ = quotient(P, _trace_subspace(A, P, k, [l for l in A.vertices if l not in K]))
    M.name = f"P({sorted(map(str, K))}, {k})"
    return M


# endomorphism rings

@dataclass
class EndRing:
    """End_A(M) with basis ``maps``; structure constants with respect to that basis."""

    module: LeftModule
    maps: List[Matrix]
    radical: List[Vector]

    @property
    def dim(self) -> int:
        return len(self.maps)

    @property
    def is_local(self) -> bool:
        # split local: E / rad E is the base field
        return self.dim - len(self.radical) == 1

    @cached_property
    def _flat_basis(self) -> Basis:
        return Basis([[x for row in m for x in row] for m in self.maps], self.module.dim ** 2)

    def coords(self, m: Matrix) -> Vector:
        return self._flat_basis.coords([x for row in m for x in row], check=True)

    def left_regular(self) -> List[Matrix]:
        """Matrix of left multiplication by each basis map on E itself."""
        out = []
        for f in self.maps:
            cols = [self.coords(la.matmul(f, g)) for g in self.maps]
            out.append(la.from_columns(cols, self.dim))
        return out

    def radical_maps(self) -> List[Matrix]:
        d = self.module.dim
        return [la.combine(v, self.maps, d, d) for v in self.radical]


def end_ring(M: LeftModule) -> EndRing:
    maps = hom_space(M, M)
    rad = trace_radical(maps, M.dim) if maps else []
    return EndRing(M, maps, rad)


def mbar(M: LeftModule) -> LeftModule:
    """``M / rad(End_A M) M``."""
    E = end_ring(M)
    vecs = []
    for f in E.radical_maps():
        vecs.extend(la.columns(f, M.dim))
    vecs = la.span_basis(vecs, M.dim) if vecs else []
    Q, _ = quotient(M, vecs)
    Q.name = f"Mbar({M.name})" if M.name else ""
    return Q


class UnsupportedError(ValueError):
    pass


def is_free_over_local(module_action: Sequence[Matrix], dim: int, regular: Sequence[Matrix], rdim: int) -> bool:
    """Is the module (given by the action of an algebra basis) free over that local algebra?"""
    if rdim == 0:
        return dim == 0
    if dim % rdim:
        return False
    k = dim // rdim
    V = LeftModule(None, module_action, dim=dim)
    free = direct_sum([LeftModule(None, regular, dim=rdim)] * k) if k else LeftModule(None, [la.zeros(0, 0)] * len(regular), dim=0)
    return is_isomorphic(V, free)[0]


def is_flat_over_end(M: LeftModule) -> bool:
    """Flatness of M over E = End_A(M); over a local E this is freeness.

    Raises :class:`UnsupportedError` (carrying the dimension of E) when E is
    not split local.
    """
    E = end_ring(M)
    if not E.is_local:
        raise UnsupportedError(f"End ring of dimension {E.dim} is not local", E.dim)
    return is_free_over_local(E.maps, M.dim, E.left_regular(), E.dim)


# M-filtrations

def grothendieck_decompositions(target: GrothendieckVector, family: Mapping[Hashable, GrothendieckVector],
                                limit: int = 64) -> List[Dict[Hashable, int]]:
    """Nonnegative integer solutions of ``target = sum c_j family[j]`` (at most ``limit``)."""
    labels = [j for j in family if family[j].total() > 0]
    out: List[Dict[Hashable, int]] = []

    def rec(k, rest, acc):
        if len(out) >= limit:
            return
        if k == len(labels):
            if all(x == 0 for x in rest.counts):
                out.append({j: acc.get(j, 0) for j in family})
            return
        j = labels[k]
        cls = family[j]
        bound = min((r // c for r, c in zip(rest.counts, cls.counts) if c > 0), default=0)
        for c in range(bound, -1, -1):
            acc[j] = c
            rec(k + 1, rest - c * cls, acc)
        acc.pop(j, None)

    rec(0, target, {})
    return out


@dataclass
class MFiltration:
    """``indices[p-1]`` labels the quotient ``F_p / F_{p-1}``; ``steps[p]`` spans F_p inside V."""

    indices: Tuple[Hashable, ...]
    steps: List[List[Vector]]

    def multiplicities(self, labels) -> Dict[Hashable, int]:
        return {j: self.indices.count(j) for j in labels}


@dataclass
class FiltrationSearch:
    """Outcome of the backtracking search.

    ``feasible`` is False when the Grothendieck system has no nonnegative
    solution (a certificate of absence).  ``exhaustive`` is True when each
    surjection tried was unique up to scalar, so a failed search proves
    absence too.
    """

    filtration: Optional[MFiltration]
    feasible: bool
    exhaustive: bool


def search_m_filtration(V: LeftModule, family: Mapping[Hashable, LeftModule]) -> FiltrationSearch:
    """Find ``0 = F_0 < ... < F_r = V`` with ``F_p / F_{p-1} ~ family[i_p]``.

    Top quotients are tried in increasing dimension of ``family[j]`` (ties
    by label order); for each the search takes one surjection V -> M_j of
    generic rank and recurses on its kernel.  Branches whose class cannot
    be written as a nonnegative combination of the family classes are cut.
    """
    classes = {j: grothendieck_class(M) for j, M in family.items()}
    labels = list(family)
    cand = sorted((j for j in labels if family[j].dim > 0), key=lambda j: (family[j].dim, labels.index(j)))
    memo_feasible: Dict[GrothendieckVector, bool] = {}
    exhaustive = [True]

    def feasible(cls):
        if cls not in memo_feasible:
            memo_feasible[cls] = bool(grothendieck_decompositions(cls, classes, limit=1))
        return memo_feasible[cls]

    def rec(W: LeftModule, emb: Matrix) -> Optional[Tuple[List[Hashable], List[List[Vector]]]]:
        if W.dim == 0:
            return [], [[]]
        cls = grothendieck_class(W)
        if not feasible(cls):
            return None
        for j in cand:
            if not classes[j] <= cls or not feasible(cls - classes[j]):
                continue
            homs = hom_space(W, family[j])
            found = find_element_of_rank(homs, family[j].dim, W.dim, family[j].dim)
            if found is None:
                continue
            if len(homs) > 1:
                exhaustive[0] = False
            K, kb = kernel(ModuleMap(W, family[j], found[1]))
            kemb = la.matmul(emb, kb.matrix()) if K.dim else la.zeros(len(emb), 0)
            sub = rec(K, kemb)
            if sub is not None:
                idx, steps = sub
                whole = la.columns(emb, W.dim)
                return idx + [j], steps + [la.span_basis(whole, len(emb))]
        return None

    if not feasible(grothendieck_class(V)):
        return FiltrationSearch(None, False, True)
    found = rec(V, la.identity(V.dim))
    if found is None:
        return FiltrationSearch(None, True, exhaustive[0])
    return FiltrationSearch(MFiltration(tuple(found[0]), found[1]), True, exhaustive[0])


def m_filtration(V: LeftModule, family: Mapping[Hashable, LeftModule]) -> Optional[MFiltration]:
    return search_m_filtration(V, family).filtration
