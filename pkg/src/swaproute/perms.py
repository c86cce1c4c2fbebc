"""Permutations on 0..n-1 as destination maps.

Composition convention everywhere: (p.compose(q))(v) = p(q(v)), i.e. the
right factor is applied first.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random


@dataclass(frozen=True)
class Permutation:
    """Bijection on 0..n-1; dest[v] is where the pebble at v must go."""

    dest: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.dest)
        if sorted(self.dest) != list(range(n)):
            raise ValueError("dest is not a bijection on 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        dest = list(range(n))
        for cyc in cycles:
            for i, v in enumerate(cyc):
                dest[v] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(dest))

    @property
    def n(self) -> int:
        return len(self.dest)

    def __call__(self, v: int) -> int:
        return self.dest[v]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: result(v) = self(other(v))."""
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.dest[x] for x in other.dest))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, d in enumerate(self.dest):
            inv[d] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(d == v for v, d in enumerate(self.dest))

    def is_involution(self) -> bool:
        return all(self.dest[d] == v for v, d in enumerate(self.dest))

    def cycles(self) -> list[list[int]]:
        """Nontrivial cycles, each starting at its smallest element, traversed
        in the direction of the permutation."""
        seen = [False] * self.n
        out: list[list[int]] = []
        for v in range(self.n):
            if seen[v] or self.dest[v] == v:
                seen[v] = True
                continue
            cyc = []
            x = v
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.dest[x]
            out.append(cyc)
        return out

    def transpositions(self) -> list[tuple[int, int]]:
        """The disjoint 2-cycles of an involution."""
        if not self.is_involution():
            raise ValueError("not an involution")
        return [(v, d) for v, d in enumerate(self.dest) if v < d]

    def support(self) -> list[int]:
        return [v for v, d in enumerate(self.dest) if d != v]


def decompose_two_involutions(p: Permutation) -> tuple[Permutation, Permutation]:
    """Write p = s1 . s2 with both factors involutions (s2 applied first).

    Per cycle (c_0, ..., c_{k-1}) of p the factors are the reflections
    s2(c_i) = c_{-i mod k} and s1(c_i) = c_{1-i mod k}.
    """
    n = p.n
    d1 = list(range(n))
    d2 = list(range(n))
    for cyc in p.cycles():
        k = len(cyc)
        for i, v in enumerate(cyc):
            d2[v] = cyc[(-i) % k]
            d1[v] = cyc[(1 - i) % k]
    return Permutation(tuple(d1)), Permutation(tuple(d2))


def random_permutation(n: int, rng: Random) -> Permutation:
    dest = list(range(n))
    rng.shuffle(dest)
    return Permutation(tuple(dest))


def complete_partial_map(n: int, partial: dict[int, int]) -> Permutation:
    """Extend an injective partial vertex map to a full permutation.

    Unassigned sources are matched to unassigned targets in ascending order.
    """
    targets = set(partial.values())
    if len(targets) != len(partial):
        raise ValueError("partial map is not injective")
    free_targets = iter(sorted(set(range(n)) - targets))
    dest = [0] * n
    for v in range(n):
        if v in partial:
            dest[v] = partial[v]
        else:
            dest[v] = next(free_targets)
    return Permutation(tuple(dest))
