"""Explicit ranked posets P_{n,m} and intervals in face posets."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .signvec import SignVector, enumerate_pv, leq, wt


@dataclass(frozen=True)
class RankedPoset:
    """Sign-variation poset with element IDs in canonical-text order.

    ``covers[i]`` lists IDs covering ``i``; ``above[i]`` lists every ID
    strictly greater than ``i``.
    """

    n: int
    m: int
    elements: tuple[SignVector, ...]
    rank: tuple[int, ...]
    covers: tuple[tuple[int, ...], ...]
    above: tuple[tuple[int, ...], ...]
    index: dict[SignVector, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def id_of(self, v: SignVector) -> int:
        return self.index[v]

    def by_rank(self) -> list[list[int]]:
        layers: list[list[int]] = [[] for _ in range(self.n)]
        for i, r in enumerate(self.rank):
            layers[r].append(i)
        return layers

    def less_equal(self, i: int, j: int) -> bool:
        return i == j or j in self._above_sets[i]

    @cached_property
    def _above_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.above)

    def maximal_chains(self) -> Iterator[tuple[int, ...]]:
        """Saturated chains from a rank-0 element to a rank-(n-1) element."""
        stack = [(i,) for i in self.by_rank()[0]]
        while stack:
            chain = stack.pop()
            ups = self.covers[chain[-1]]
            if not ups:
                yield chain
            for j in reversed(ups):
                stack.append(chain + (j,))

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, v in enumerate(self.elements):
            lines.append(f'  v{i} [label="{v}"];')
        for i, ups in enumerate(self.covers):
            for j in ups:
                lines.append(f"  v{i} -> v{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_pnm(n: int, m: int) -> RankedPoset:
    elements = enumerate_pv(n, m)
    index = {v: i for i, v in enumerate(elements)}
    rank = tuple(wt(v) - 1 for v in elements)
    layers: list[list[int]] = [[] for _ in range(n)]
    for i, r in enumerate(rank):
        layers[r].append(i)

    covers: list[tuple[int, ...]] = []
    above: list[tuple[int, ...]] = []
    for i, v in enumerate(elements):
        r = rank[i]
        # comparisons only against strictly higher weights
        up = [j for rr in range(r + 1, n) for j in layers[rr] if leq(v, elements[j])]
        up.sort()
        above.append(tuple(up))
        covers.append(tuple(j for j in up if rank[j] == r + 1))
    return RankedPoset(n, m, elements, rank, tuple(covers), tuple(above), index)


@dataclass(frozen=True)
class Interval:
    bottom: frozenset
    top: frozenset
    members: frozenset  # frozenset of frozensets

    @property
    def size(self) -> int:
        return len(self.members)


def face_interval(faces: Iterable[Iterable], bottom: Iterable, top: Iterable) -> Interval:
    """The closed interval ``[bottom, top]`` in the face poset of ``faces``."""
    lo, hi = frozenset(bottom), frozenset(top)
    if not lo <= hi:
        raise ValueError("interval bottom is not contained in its top")
    members = frozenset(
        f for f in map(frozenset, faces) if lo <= f <= hi
    )
    return Interval(lo, hi, members)


def boolean_members(bottom: frozenset, top: frozenset) -> Iterator[frozenset]:
    free = sorted(top - bottom, key=repr)
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            yield bottom | frozenset(extra)


def is_boolean(iv: Interval) -> bool:
    """True iff the interval holds every set between its bottom and top."""
    expected = 1 << len(iv.top - iv.bottom)
    if len(iv.members) != expected:
        return False
    return all(s in iv.members for s in boolean_members(iv.bottom, iv.top))
