"""GF(2) cycle-space arithmetic.

A :class:`CycleVec` holds fundamental-basis coordinates as a Python int used
as a bitset (bit ``j`` set when non-tree edge ``e_j`` is in the cycle). An
:class:`EdgeCycle` is the explicit edge set.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, overload

from .graph import Edge, SpanningForest

__all__ = [
    "CycleVec",
    "EdgeCycle",
    "NotSimpleLoop",
    "symdiff",
    "gf2_inner_product",
    "edges_to_vec",
    "vec_to_edges",
    "loop_edges",
    "bits_of",
]


class NotSimpleLoop(ValueError):
    pass


def bits_of(x: int) -> list[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True, slots=True)
class CycleVec:
    bits: int = 0

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "CycleVec":
        b = 0
        for i in indices:
            b ^= 1 << i
        return cls(b)

    @property
    def indices(self) -> list[int]:
        return bits_of(self.bits)

    def __xor__(self, other: "CycleVec") -> "CycleVec":
        return CycleVec(self.bits ^ other.bits)

    def dot(self, other: "CycleVec") -> int:
        return (self.bits & other.bits).bit_count() & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.bits.bit_count()


def _norm(e: Edge) -> Edge:
    return e if e[0] < e[1] else (e[1], e[0])


@dataclass(frozen=True)
class EdgeCycle:
    edges: frozenset[Edge]

    @classmethod
    def of(cls, edges: Iterable[Edge]) -> "EdgeCycle":
        out: set[Edge] = set()
        for e in edges:
            out ^= {_norm(e)}
        return cls(frozenset(out))

    @classmethod
    def from_loop(cls, nodes: Iterable[int]) -> "EdgeCycle":
        return cls.of(loop_edges(list(nodes)))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(x for e in self.edges for x in e)

    def __xor__(self, other: "EdgeCycle") -> "EdgeCycle":
        return EdgeCycle(self.edges ^ other.edges)

    def is_even(self) -> bool:
        deg: dict[int, int] = defaultdict(int)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return all(d % 2 == 0 for d in deg.values())

    def circulation(self) -> list[int]:
        """Node loop starting at the lowest node, heading to its lower neighbour."""
        if not self.edges:
            raise NotSimpleLoop("empty cycle")
        nbrs: dict[int, list[int]] = defaultdict(list)
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        if any(len(v) != 2 for v in nbrs.values()):
            raise NotSimpleLoop("node of degree other than 2")
        start = min(nbrs)
        loop = [start]
        prev, cur = start, min(nbrs[start])
        while cur != start:
            loop.append(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(loop) != len(nbrs):
            raise NotSimpleLoop("more than one component")
        return loop


def loop_edges(nodes: list[int]) -> list[Edge]:
    return [_norm((nodes[i - 1], nodes[i])) for i in range(len(nodes))]


@overload
def symdiff(a: CycleVec, b: CycleVec) -> CycleVec: ...
@overload
def symdiff(a: EdgeCycle, b: EdgeCycle) -> EdgeCycle: ...
def symdiff(a, b):
    if type(a) is not type(b):
        raise TypeError("symdiff operands must share a representation")
    return a ^ b


def gf2_inner_product(a: CycleVec, b: CycleVec) -> int:
    return a.dot(b)


def edges_to_vec(cycle: EdgeCycle, forest: SpanningForest) -> CycleVec:
    index = forest.nontree_index
    b = 0
    for e in cycle.edges:
        j = index.get(e)
        if j is not None:
            b |= 1 << j
    return CycleVec(b)


def vec_to_edges(vec: CycleVec, forest: SpanningForest) -> EdgeCycle:
    out: set[Edge] = set()
    loops = forest.fundamental_loops
    for j in vec.indices:
        out ^= set(loop_edges(list(loops[j])))
    return EdgeCycle(frozenset(out))
