"""Small algebras used as worked examples and test targets."""
from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra
from .quiver import make_quiver, quiver_algebra


def semisimple(n: int = 2) -> Algebra:
    """``k x ... x k`` with vertices 1..n."""
    table = [[[Fraction(int(a == b == c)) for c in range(n)] for b in range(n)] for a in range(n)]
    return Algebra([f"e{i + 1}" for i in range(n)], table, {i + 1: i for i in range(n)}, name=f"k^{n}")


def a2() -> Algebra:
    """Path algebra of the arrow ``alpha: 2 -> 1``."""
    return quiver_algebra(make_quiver([1, 2], [("alpha", 2, 1)], bound=2), name="A2")


def dual_numbers() -> Algebra:
    """``k[x]/(x^2)`` as the loop quiver with ``x*x = 0``."""
    return quiver_algebra(make_quiver([1], [("x", 1, 1)], [[(1, "x*x")]], bound=2), name="k[x]/(x^2)")


def zigzag() -> Algebra:
    """Two vertices, arrows both ways, all paths of length two killed."""
    Q = make_quiver([1, 2], [("a", 1, 2), ("b", 2, 1)], [[(1, "b*a")], [(1, "a*b")]], bound=2)
    return quiver_algebra(Q, name="zigzag")


def o_block() -> Algebra:
    """Regular block of category O for sl(2): vertex 1 antidominant, 2 dominant.

    ``a: 2 -> 1`` and ``b: 1 -> 2`` with ``b*a = 0``; the surviving loop
    ``a*b`` at vertex 1 gives dimension 5.
    """
    Q = make_quiver([1, 2], [("a", 2, 1), ("b", 1, 2)], [[(1, "b*a")]], bound=3)
    return quiver_algebra(Q, name="O(sl2)")


DESK = {
    "semisimple": semisimple,
    "a2": a2,
    "dual_numbers": dual_numbers,
    "zigzag": zigzag,
    "o_sl2": o_block,
}
