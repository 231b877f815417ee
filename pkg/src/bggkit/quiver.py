"""Bound quiver algebras expanded into structure constants.

A path traversing arrows ``a`` then ``b`` is written ``b*a``; it lies in
``e_{t(b)} A e_{s(a)}``.  Left modules therefore put the simple at each
vertex and arrows act covariantly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import Algebra

Path = Tuple[str, ...]   # arrows in traversal order


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Hashable
    target: Hashable


@dataclass
class BoundQuiver:
    vertices: Tuple[Hashable, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[Tuple[Fraction, Path], ...], ...]
    bound: int

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"unknown arrow {name!r}")

    def endpoints(self, path: Path, vertex: Optional[Hashable] = None) -> Tuple[Hashable, Hashable]:
        """(source, target) of a path; trivial paths need their vertex."""
        if not path:
            return vertex, vertex
        return self.arrow(path[0]).source, self.arrow(path[-1]).target


def parse_path(text: str) -> Path:
    """``"b*a"`` -> ``("a", "b")``."""
    parts = [p.strip() for p in text.split("*")]
    if any(not p for p in parts):
        raise QuiverError(f"malformed path {text!r}")
    return tuple(reversed(parts))


def format_path(path: Path) -> str:
    return "*".join(reversed(path))


def make_quiver(vertices, arrows, relations=(), bound: int = 2) -> BoundQuiver:
    """``arrows`` as (name, source, target); ``relations`` as lists of (coefficient, path string)."""
    verts = tuple(vertices)
    if len(set(verts)) != len(verts):
        raise QuiverError("duplicate vertices")
    arr = tuple(Arrow(str(n), s, t) for n, s, t in arrows)
    names = [a.name for a in arr]
    if len(set(names)) != len(names):
        raise QuiverError("duplicate arrow names")
    for a in arr:
        if a.source not in verts or a.target not in verts:
            raise QuiverError(f"arrow {a.name!r} has an endpoint outside the vertex set")
        if "*" in a.name or not a.name.strip():
            raise QuiverError(f"bad arrow name {a.name!r}")
    if bound < 1:
        raise QuiverError("nilpotency bound must be positive")
    Q = BoundQuiver(verts, arr, (), bound)
    rels = []
    for rel in relations:
        terms = []
        ends = set()
        for c, p in rel:
            path = parse_path(p) if isinstance(p, str) else tuple(p)
            if not path:
                raise QuiverError("relations must be combinations of nontrivial paths")
            for x, y in zip(path, path[1:]):
                if Q.arrow(x).target != Q.arrow(y).source:
                    raise QuiverError(f"path {format_path(path)!r} is not composable")
            ends.add(Q.endpoints(path))
            terms.append((la.as_fraction(c), path))
        if len(ends) > 1:
            raise QuiverError(f"relation mixes paths with different endpoints: {sorted(map(str, ends))}")
        rels.append(tuple(terms))
    Q.relations = tuple(rels)
    return Q


def _paths(Q: BoundQuiver, max_len: int) -> List[Tuple[Hashable, Path]]:
    """All paths up to ``max_len`` as (source vertex, arrows), ordered by length then name."""
    out = [(v, ()) for v in Q.vertices]
    layer = [(Q.arrow(a.name).source, (a.name,)) for a in Q.arrows]
    k = 1
    while layer and k <= max_len:
        out.extend(layer)
        nxt = []
        for s, p in layer:
            t = Q.arrow(p[-1]).target
            for a in Q.arrows:
                if a.source == t:
                    nxt.append((s, p + (a.name,)))
        layer = nxt
        k += 1
    return out


def quiver_algebra(Q: BoundQuiver, name: str = "") -> Algebra:
    """``kQ / (I + R^{bound+1})``, rejected unless every path of length ``bound`` already lies in the ideal."""
    paths = _paths(Q, Q.bound)
    index = {p: k for k, p in enumerate(paths)}
    n = len(paths)

    def src(p):
        return p[0]

    def tgt(p):
        return Q.arrow(p[1][-1]).target if p[1] else p[0]

    def concat(x, y):
        """Path ``y`` followed by ``x``, i.e. the product ``x y``; None when zero or too long."""
        if src(x) != tgt(y):
            return None
        arrows = y[1] + x[1]
        if len(arrows) > Q.bound:
            return None
        return (src(y), arrows)

    gens = []
    for rel in Q.relations:
        v = [Fraction(0)] * n
        for c, path in rel:
            if len(path) > Q.bound:
                continue
            v[index[(Q.arrow(path[0]).source, path)]] += c
        if any(v):
            gens.append(v)

    ideal_vecs = []
    for g in gens:
        for u in paths:
            for w in paths:
                v = [Fraction(0)] * n
                for k, x in enumerate(g):
                    if not x:
                        continue
                    left = concat(paths[k], w)
                    if left is None:
                        continue
                    full = concat(u, left)
                    if full is not None:
                        v[index[full]] += x
                if any(v):
                    ideal_vecs.append(v)
    ideal = la.span_basis(ideal_vecs, n) if ideal_vecs else []
    ib = la.Basis(ideal, n) if ideal else None
    for p in paths:
        if len(p[1]) == Q.bound:
            v = la.unit_vector(n, index[p])
            if ib is None or not ib.contains(v):
                raise QuiverError(
                    f"path {format_path(p[1])!r} of length {Q.bound} is not in the relation ideal; "
                    "the algebra is not finite-dimensional within the bound")
    chosen, proj = la.complement(ideal, n)
    dim = len(chosen)
    table = []
    for a in chosen:
        row = []
        for b in chosen:
            prod = concat(paths[a], paths[b])
            if prod is None:
                row.append([Fraction(0)] * dim)
            else:
                row.append(la.matvec(proj, la.unit_vector(n, index[prod])))
        table.append(row)
    labels = [f"e{p[0]}" if not p[1] else format_path(p[1]) for p in (paths[k] for k in chosen)]
    idem = {v: chosen.index(index[(v, ())]) for v in Q.vertices}
    return Algebra(labels, table, idem, name=name)
