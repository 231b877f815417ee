"""Minimal projective resolutions, Ext series and projective dimensions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

from . import linalg as la
from .algebra import Algebra
from .linalg import Matrix, Vector
from .modules import (
    GrothendieckVector, LeftModule, UnsupportedError, grothendieck_class, is_free_over_local,
    is_isomorphic, projective, projective_basis, simple, submodule,
)
from .polyseries import TruncSeries


@dataclass(frozen=True)
class AtLeast:
    """A projective dimension known only to be at least ``bound``."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


INF = math.inf
PDim = Union[int, float, AtLeast]


def pdim_known(x: PDim) -> bool:
    return not isinstance(x, AtLeast)


def pdim_str(x: PDim) -> str:
    if isinstance(x, AtLeast):
        return str(x)
    return "inf" if x == INF else str(x)


@dataclass(frozen=True)
class Pattern:
    """An integer sequence known in every degree: ``head`` then ``cycle`` repeated forever."""

    head: Tuple[int, ...]
    cycle: Tuple[int, ...] = (0,)

    def __getitem__(self, k: int) -> int:
        if k < len(self.head):
            return self.head[k]
        return self.cycle[(k - len(self.head)) % len(self.cycle)]

    def is_finite(self) -> bool:
        return all(x == 0 for x in self.cycle)

    def top_degree(self) -> Optional[int]:
        """Largest degree with a nonzero value; None if zero everywhere, inf if unbounded."""
        if not self.is_finite():
            return INF
        nz = [k for k, x in enumerate(self.head) if x]
        return nz[-1] if nz else None

    def agrees_with(self, other: "Pattern") -> bool:
        span = max(len(self.head), len(other.head)) + math.lcm(len(self.cycle), len(other.cycle))
        return all(self[k] == other[k] for k in range(span))

    def first_difference(self, other: "Pattern") -> Optional[int]:
        span = max(len(self.head), len(other.head)) + math.lcm(len(self.cycle), len(other.cycle))
        return next((k for k in range(span) if self[k] != other[k]), None)


@dataclass
class Generator:
    """A summand ``A e_vertex`` of a resolution term, sent to ``image`` in the previous term (or in V)."""

    vertex: Hashable
    image: Vector


@dataclass
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> V``.

    ``generators[n]`` lists the summands of P_n; the n-th syzygy is the
    kernel of ``P_{n-1} -> P_{n-2}`` (``syzygies[0]`` is V itself).  When
    ``periodic = (m, n)`` the syzygies at degrees m and n are isomorphic, so
    the term multiplicities repeat with period n - m from degree m on.
    """

    module: LeftModule
    generators: List[List[Generator]]
    syzygies: List[LeftModule]
    terminated: bool
    periodic: Optional[Tuple[int, int]] = None
    computed_to: int = 0

    @property
    def algebra(self) -> Algebra:
        return self.module.algebra

    def term_dim(self, n: int) -> int:
        A = self.algebra
        return sum(len(projective_basis(A, g.vertex)) for g in self.generators[n])

    def multiplicities(self, n: int) -> GrothendieckVector:
        """Multiplicity of each ``A e_i`` in degree n."""
        A = self.algebra
        if n < len(self.generators):
            counts: Dict[Hashable, int] = {}
            for g in self.generators[n]:
                counts[g.vertex] = counts.get(g.vertex, 0) + 1
            return GrothendieckVector(A.vertices, counts)
        if self.terminated:
            return GrothendieckVector.zero(A.vertices)
        if self.periodic is not None:
            m, p = self.periodic
            return self.multiplicities(m + (n - m) % (p - m))
        raise IndexError(f"degree {n} beyond the computed range")

    def multiplicity_pattern(self, j) -> Optional[Pattern]:
        """Sequence of multiplicities of ``A e_j`` in every degree, when known."""
        if self.terminated:
            return Pattern(tuple(self.multiplicities(n)[j] for n in range(len(self.generators))))
        if self.periodic is not None:
            m, p = self.periodic
            return Pattern(tuple(self.multiplicities(n)[j] for n in range(m)),
                           tuple(self.multiplicities(n)[j] for n in range(m, p)))
        return None

    def length(self) -> PDim:
        if self.terminated:
            return max(len(self.generators) - 1, 0) if self.module.dim else -1
        if self.periodic is not None:
            return INF
        return AtLeast(len(self.generators) - 1)

    def known_degrees(self) -> int:
        return len(self.generators)

    def differential(self, n: int) -> Matrix:
        """Matrix of ``P_n -> P_{n-1}`` in the concatenated projective bases."""
        A = self.algebra
        gens = self.generators[n]
        prev_dim = self.term_dim(n - 1)
        cols = []
        for g in gens:
            Pg = projective_basis(A, g.vertex)
            prev = self._term_module(n - 1)
            for b in Pg.vectors:
                cols.append(la.matvec(prev.act(b), g.image))
        return la.from_columns(cols, prev_dim)

    def _term_module(self, n: int) -> LeftModule:
        cache = self.__dict__.setdefault("_terms", {})
        if n not in cache:
            from .modules import direct_sum

            A = self.algebra
            mods = [projective(A, g.vertex) for g in self.generators[n]]
            cache[n] = direct_sum(mods, A) if mods else LeftModule(A, [la.zeros(0, 0)] * A.dim, dim=0)
        return cache[n]

    def summands(self) -> List[List[Hashable]]:
        return [[g.vertex for g in gens] for gens in self.generators]


def _cover_generators(W: LeftModule) -> List[Generator]:
    """Lifts of a basis of ``top(W)``, grouped by vertex in vertex order."""
    A = W.algebra
    if W.dim == 0:
        return []
    from .modules import radical_submodule

    current = radical_submodule(W)
    r = len(current)
    out = []
    full = [la.unit_vector(W.dim, k) for k in range(W.dim)]
    for i in A.vertices:
        ei = W.act(A.e(i))
        for v in la.span_basis([la.matvec(ei, u) for u in full], W.dim):
            trial = current + [v]
            if la.rank(trial) > r:
                current = trial
                r += 1
                out.append(Generator(i, v))
    return out


def _syzygy(A: Algebra, W: LeftModule, gens: List[Generator]) -> Tuple[LeftModule, Matrix]:
    """Kernel of the cover ``P -> W`` as a submodule of P, plus its embedding."""
    from .modules import direct_sum

    cols = []
    for g in gens:
        for b in projective_basis(A, g.vertex).vectors:
            cols.append(la.matvec(W.act(b), g.image))
    P = direct_sum([projective(A, g.vertex) for g in gens], A)
    cover = la.from_columns(cols, W.dim)
    ker = la.nullspace(cover, P.dim)
    K, basis = submodule(P, ker, closed=True)
    return K, basis.matrix() if K.dim else la.zeros(P.dim, 0)


def min_proj_resolution(V: LeftModule, N: int, detect_periodicity: bool = True) -> Resolution:
    """Minimal projective resolution computed through degree ``N`` (or until it is exactly known).

    Construction stops early once a syzygy vanishes or repeats up to
    isomorphism, since every later term is then determined.  One extra
    degree past a detected repetition is computed so that Ext can be read
    over a full period.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    A = V.algebra
    generators: List[List[Generator]] = []
    syzygies: List[LeftModule] = [V]
    classes = [grothendieck_class(V)]
    periodic = None
    W, emb = V, None
    n = 0
    stop_at = N + 1
    while n <= stop_at:
        gens = _cover_generators(W)
        if not gens:
            break
        # kernel in local coordinates of W; stored images live in the previous term
        K, next_emb = _syzygy(A, W, gens)
        if emb is not None:
            gens = [Generator(g.vertex, la.matvec(emb, g.image)) for g in gens]
        generators.append(gens)
        emb = next_emb
        kc = grothendieck_class(K)
        if periodic is None and detect_periodicity and K.dim:
            for m, (S, c) in enumerate(zip(syzygies, classes)):
                if c == kc and S.dim == K.dim and is_isomorphic(S, K)[0]:
                    periodic = (m, n + 1)
                    stop_at = n + 2
                    break
        classes.append(kc)
        syzygies.append(K)
        W = K
        n += 1
        if K.dim == 0:
            break
    terminated = syzygies[-1].dim == 0 or V.dim == 0
    res = Resolution(V, generators, syzygies, terminated, None if terminated else periodic, len(generators) - 1)
    return res


def _hom_complex_rank(res: Resolution, W: LeftModule, n: int) -> Tuple[int, int]:
    """``(dim Hom(P_n, W), rank of Hom(P_n, W) -> Hom(P_{n+1}, W))``."""
    A = res.algebra
    if n >= len(res.generators):
        return 0, 0
    src = res.generators[n]
    blocks = [la.span_basis(la.columns(W.act(A.e(g.vertex)), W.dim), W.dim) for g in src]
    hom_dim = sum(len(b) for b in blocks)
    if n + 1 >= len(res.generators) or hom_dim == 0:
        return hom_dim, 0
    tgt = res.generators[n + 1]
    offsets = []
    off = 0
    for g in src:
        offsets.append(off)
        off += len(projective_basis(A, g.vertex))
    # phi restricted to summand k is determined by w_k in e_{i_k} W; phi(d(g)) = sum_k x_{g,k} w_k
    rows: List[List[Fraction]] = []
    for g in tgt:
        comp = []
        for k, s in enumerate(src):
            Pk = projective_basis(A, s.vertex)
            coords = g.image[offsets[k]:offsets[k] + len(Pk)]
            x = [Fraction(0)] * A.dim
            for c, v in zip(coords, Pk.vectors):
                if c:
                    x = la.add_vectors(x, la.scale(c, v))
            comp.append(W.act(x))
        for r in range(W.dim):
            row = []
            for k, blk in enumerate(blocks):
                for w in blk:
                    row.append(la.matvec(comp[k], w)[r])
            rows.append(row)
    return hom_dim, la.rank(rows) if rows else 0


def ext_dimensions(res: Resolution, W: LeftModule, N: int) -> List[int]:
    """``dim Ext^n(V, W)`` for n = 0..N from a resolution of V."""
    known = len(res.generators)
    cache: Dict[int, Tuple[int, int]] = {}

    def hr(n):
        if n not in cache:
            cache[n] = _hom_complex_rank(res, W, n)
        return cache[n]

    def direct(n):
        h, r = hr(n)
        prev = hr(n - 1)[1] if n > 0 else 0
        return h - r - prev

    out = []
    for n in range(N + 1):
        if n + 1 < known or (res.terminated and n < known + 1):
            out.append(direct(n) if n < known else 0)
        elif res.terminated:
            out.append(0)
        elif res.periodic is not None:
            m, p = res.periodic
            base = m + 1 + (n - m - 1) % (p - m)
            out.append(direct(base))
        else:
            raise IndexError(f"resolution does not reach degree {n + 1}")
    return out


def ext_pattern(res: Resolution, W: LeftModule) -> Optional[Pattern]:
    """``dim Ext^n(V, W)`` in every degree, when the resolution is exactly known."""
    if res.terminated:
        k = len(res.generators)
        return Pattern(tuple(ext_dimensions(res, W, max(k - 1, 0))))
    if res.periodic is not None:
        m, p = res.periodic
        vals = ext_dimensions(res, W, p)
        return Pattern(tuple(vals[:m + 1]), tuple(vals[m + 1:p + 1]))
    return None


def ext_series(V: LeftModule, W: LeftModule, N: int, resolution: Optional[Resolution] = None) -> TruncSeries:
    """Poincare series of ``Ext^*(V, W)`` truncated at degree ``N``."""
    res = resolution if resolution is not None else min_proj_resolution(V, N)
    return TruncSeries(ext_dimensions(res, W, N), N)


@dataclass
class SimpleData:
    """Resolutions of all simples of an algebra, shared by the higher-level checks."""

    algebra: Algebra
    N: int
    resolutions: Dict[Hashable, Resolution]

    def pdim(self, i) -> PDim:
        return self.resolutions[i].length()

    def ext(self, i, j) -> TruncSeries:
        """``Ext^*(L_i, L_j)`` to degree N, read off the minimal resolution."""
        res = self.resolutions[i]
        return TruncSeries([res.multiplicities(n)[j] for n in range(self.N + 1)], self.N)

    def ext_degree(self, i, j, n: int) -> int:
        return self.resolutions[i].multiplicities(n)[j]

    def pattern(self, i, j) -> Optional[Pattern]:
        return self.resolutions[i].multiplicity_pattern(j)

    def complete(self) -> bool:
        return all(pdim_known(self.pdim(i)) for i in self.algebra.vertices)


def simple_data(A: Algebra, N: int) -> SimpleData:
    cache = A.__dict__.setdefault("_simple_data", {})
    if N not in cache:
        cache[N] = SimpleData(A, N, {i: min_proj_resolution(simple(A, i), N) for i in A.vertices})
    return cache[N]


def projective_dimension(A: Algebra, i, N: int) -> PDim:
    """``pd L_i``: an integer, ``inf`` (certified by a repeating syzygy), or ``AtLeast(N)``."""
    return simple_data(A, N).pdim(i)


# corner-ring test

@dataclass
class Lemma26Result:
    holds: bool
    tensor_dim: int
    ideal_dim: int
    injective: bool
    flat: Optional[bool]
    detail: str = ""

    def as_dict(self) -> Dict[str, object]:
        return {"holds": self.holds, "tensor_dim": self.tensor_dim, "ideal_dim": self.ideal_dim,
                "injective": self.injective, "flat": self.flat, "detail": self.detail}


def lemma26_condition_a(A: Algebra, i) -> Lemma26Result:
    """Injectivity of ``Ae (x)_C eA -> A`` and right C-flatness of Ae, for e = e_i and C = eAe.

    The tensor product is the cokernel of the balancing map
    ``Ae (x) C (x) eA -> Ae (x) eA``; its image in A is always AeA, so the
    multiplication map is injective iff the two dimensions agree.
    """
    e = A.e(i)
    left = A.left_ideal(e)               # Ae
    right = A.right_ideal(e)             # eA
    corner = A.corner(i, i)              # C
    lb, rb = la.Basis(left, A.dim), la.Basis(right, A.dim)
    nl, nr = len(left), len(right)
    rel = []
    for x in left:
        for c in corner:
            xc = lb.coords(A.mul(x, c))
            for yk, y in enumerate(right):
                cy = rb.coords(A.mul(c, y))
                v = [Fraction(0)] * (nl * nr)
                for a, ca in enumerate(xc):
                    if ca:
                        v[a * nr + yk] += ca
                xk = left.index(x)
                for b, cb in enumerate(cy):
                    if cb:
                        v[xk * nr + b] -= cb
                if any(v):
                    rel.append(v)
    tensor_dim = nl * nr - (la.rank(rel) if rel else 0)
    ideal_dim = len(A.two_sided_ideal([e]))
    injective = tensor_dim == ideal_dim
    # right C-module structure on Ae, read as a left module over the opposite ring
    acts = []
    for c in corner:
        cols = [lb.coords(A.mul(x, c)) for x in left]
        acts.append(la.from_columns(cols, nl))
    cb = la.Basis(corner, A.dim)
    reg = []
    for c in corner:
        cols = [cb.coords(A.mul(x, c)) for x in corner]
        reg.append(la.from_columns(cols, len(corner)))
    from .algebra import trace_radical

    crad = trace_radical(reg, len(corner))
    if len(corner) - len(crad) != 1:
        return Lemma26Result(False, tensor_dim, ideal_dim, injective, None, "corner ring is not local")
    flat = is_free_over_local(acts, nl, reg, len(corner))
    return Lemma26Result(injective and flat, tensor_dim, ideal_dim, injective, flat)
