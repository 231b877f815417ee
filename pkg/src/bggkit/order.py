"""Finite partial orders on vertex sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, Iterator, List, Sequence, Tuple


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class PartialOrder:
    """Reflexive-transitive-antisymmetric relation stored as its full closure.

    ``(i, j) in relation`` means ``i <= j``.  ``ground`` fixes the reference
    order used for every deterministic tie-break.
    """

    ground: Tuple[Hashable, ...]
    relation: FrozenSet[Tuple[Hashable, Hashable]]

    @classmethod
    def generated_by(cls, ground: Sequence[Hashable], pairs: Iterable[Tuple[Hashable, Hashable]]) -> "PartialOrder":
        ground = tuple(ground)
        rel = {(i, i) for i in ground}
        for i, j in pairs:
            if i not in ground or j not in ground:
                raise ValueError(f"pair ({i!r}, {j!r}) outside the ground set")
            rel.add((i, j))
        changed = True
        while changed:
            changed = False
            for (i, j), (k, l) in itertools.product(list(rel), repeat=2):
                if j == k and (i, l) not in rel:
                    rel.add((i, l))
                    changed = True
        for i, j in rel:
            if i != j and (j, i) in rel:
                raise ValueError(f"relation is not antisymmetric at ({i!r}, {j!r})")
        return cls(ground, frozenset(rel))

    @classmethod
    def discrete(cls, ground: Sequence[Hashable]) -> "PartialOrder":
        return cls.generated_by(ground, ())

    @classmethod
    def chain(cls, ground: Sequence[Hashable]) -> "PartialOrder":
        """``ground[0] <= ground[1] <= ...``."""
        g = tuple(ground)
        return cls.generated_by(g, zip(g, g[1:]))

    def le(self, i, j) -> bool:
        return (i, j) in self.relation

    def lt(self, i, j) -> bool:
        return i != j and (i, j) in self.relation

    def below(self, i) -> List[Hashable]:
        return [j for j in self.ground if self.le(j, i)]

    def above(self, i) -> List[Hashable]:
        return [j for j in self.ground if self.le(i, j)]

    def maximal(self) -> List[Hashable]:
        return [i for i in self.ground if not any(self.lt(i, j) for j in self.ground)]

    def minimal(self) -> List[Hashable]:
        return [i for i in self.ground if not any(self.lt(j, i) for j in self.ground)]

    def strict_pairs(self) -> List[Tuple[Hashable, Hashable]]:
        return [(i, j) for i in self.ground for j in self.ground if self.lt(i, j)]

    def covers(self) -> List[Tuple[Hashable, Hashable]]:
        """Hasse diagram edges."""
        out = []
        for i, j in self.strict_pairs():
            if not any(self.lt(i, k) and self.lt(k, j) for k in self.ground):
                out.append((i, j))
        return out

    def is_initial_segment(self, subset) -> bool:
        s = set(subset)
        return all(i in s for j in s for i in self.ground if self.le(i, j))

    def initial_segments(self, bound: int = 12) -> List[Tuple[Hashable, ...]]:
        """All downward-closed subsets, by size and then lexicographically in ground order."""
        if len(self.ground) > bound:
            raise EnumerationBoundError(
                f"{len(self.ground)} vertices exceed the enumeration bound {bound}; supply segments explicitly")
        out = []
        for size in range(len(self.ground) + 1):
            for combo in itertools.combinations(self.ground, size):
                if self.is_initial_segment(combo):
                    out.append(combo)
        return out

    def linear_extension(self) -> List[Hashable]:
        """Deterministic linear extension: repeatedly take the first minimal element in ground order."""
        left = list(self.ground)
        out = []
        while left:
            nxt = next(i for i in left if not any(self.lt(j, i) for j in left))
            out.append(nxt)
            left.remove(nxt)
        return out

    def linear_extensions(self) -> Iterator[List[Hashable]]:
        for perm in itertools.permutations(self.ground):
            pos = {v: k for k, v in enumerate(perm)}
            if all(pos[i] < pos[j] for i, j in self.strict_pairs()):
                yield list(perm)

    def restrict(self, subset) -> "PartialOrder":
        s = [i for i in self.ground if i in set(subset)]
        return PartialOrder(tuple(s), frozenset((i, j) for i, j in self.relation if i in s and j in s))

    def rename(self, mapping) -> "PartialOrder":
        return PartialOrder(tuple(mapping[i] for i in self.ground),
                            frozenset((mapping[i], mapping[j]) for i, j in self.relation))

    def opposite(self) -> "PartialOrder":
        return PartialOrder(self.ground, frozenset((j, i) for i, j in self.relation))

    def same_relation(self, other: "PartialOrder") -> bool:
        return set(self.ground) == set(other.ground) and self.relation == other.relation
