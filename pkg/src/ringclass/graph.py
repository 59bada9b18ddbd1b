"""Simple undirected graphs, biconnected decomposition and BFS spanning forests.

Every coordinate system used downstream (fundamental-cycle coordinates, root
edges of the shortest-path DAGs, MCB columns) is anchored on the deterministic
enumerations defined here: edges are stored as sorted ``(u, v)`` pairs with
``u < v``, the spanning forest is grown breadth-first from the lowest node of
each connected component, and non-tree edges are numbered in lexicographic
order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GraphError",
    "DuplicateEdge",
    "SelfLoop",
    "IndexOutOfRange",
    "Graph",
    "Component",
    "SpanningForest",
    "load_graph",
    "biconnected_components",
    "spanning_forest",
    "cyclomatic_number",
    "connected_components",
]


class GraphError(ValueError):
    """Base class for malformed graph input."""


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    ``edges`` is sorted and every pair satisfies ``u < v``; ``adjacency[x]``
    lists the neighbours of ``x`` in ascending order.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_index

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.edge_index[(u, v)]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, neighbours, edge_ids)`` arrays for compiled kernels."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for x, nbrs in enumerate(self.adjacency):
            indptr[x + 1] = indptr[x] + len(nbrs)
        nbr = np.empty(indptr[-1], dtype=np.int64)
        eid = np.empty(indptr[-1], dtype=np.int64)
        index = self.edge_index
        for x, nbrs in enumerate(self.adjacency):
            start = indptr[x]
            for k, y in enumerate(nbrs):
                nbr[start + k] = y
                eid[start + k] = index[(x, y) if x < y else (y, x)]
        return indptr, nbr, eid

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def load_graph(edges: Iterable[Sequence[int]], n: int | None = None) -> Graph:
    """Build a :class:`Graph` from index pairs.

    ``n`` defaults to one more than the largest index. Self-loops, repeated
    edges (in either orientation) and indices outside ``0..n-1`` raise.
    """
    pairs = [(int(a), int(b)) for a, b in edges]
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    if n < 0:
        raise IndexOutOfRange(f"negative node count {n}")
    seen: set[Edge] = set()
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"edge ({a}, {b}) outside 0..{n - 1}")
        if a == b:
            raise SelfLoop(f"self-loop at node {a}")
        e = (a, b) if a < b else (b, a)
        if e in seen:
            raise DuplicateEdge(f"edge {e} given more than once")
        seen.add(e)
    ordered = tuple(sorted(seen))
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in ordered:
        adj[a].append(b)
        adj[b].append(a)
    return Graph(n, ordered, tuple(tuple(sorted(a)) for a in adj))


def connected_components(graph: Graph) -> list[list[int]]:
    """Node lists of the connected components, ordered by lowest node."""
    label = [-1] * graph.n
    comps = []
    for s in range(graph.n):
        if label[s] >= 0:
            continue
        label[s] = len(comps)
        nodes = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in graph.adjacency[x]:
                if label[y] < 0:
                    label[y] = label[s]
                    nodes.append(y)
                    queue.append(y)
        comps.append(sorted(nodes))
    return comps


def cyclomatic_number(graph: Graph) -> int:
    """Dimension of the cycle space, ``m - n + #components``."""
    return graph.m - graph.n + len(connected_components(graph))


@dataclass(frozen=True)
class Component:
    """An edge-induced biconnected piece of a parent graph.

    ``graph`` uses local node ids; ``nodes[i]`` is the parent id of local node
    ``i`` (local ids preserve the parent order).
    """

    graph: Graph
    nodes: tuple[int, ...]

    @property
    def is_bridge(self) -> bool:
        return self.graph.m == 1

    def to_parent(self, local: int) -> int:
        return self.nodes[local]

    def parent_edges(self) -> list[Edge]:
        return [(self.nodes[a], self.nodes[b]) for a, b in self.graph.edges]


def biconnected_components(graph: Graph) -> list[Component]:
    """Split ``graph`` into maximal biconnected pieces (Hopcroft-Tarjan).

    Bridges come out as single-edge components; isolated nodes are dropped.
    Components are ordered by their smallest parent edge.
    """
    n = graph.n
    disc = [-1] * n
    low = [0] * n
    time = 0
    edge_stack: list[Edge] = []
    groups: list[list[Edge]] = []
    adj = graph.adjacency

    for root in range(n):
        if disc[root] >= 0 or not adj[root]:
            continue
        disc[root] = low[root] = time
        time += 1
        # frames: (node, parent, next neighbour position)
        stack = [(root, -1, 0)]
        while stack:
            x, parent, pos = stack[-1]
            if pos < len(adj[x]):
                stack[-1] = (x, parent, pos + 1)
                y = adj[x][pos]
                if disc[y] < 0:
                    edge_stack.append((x, y))
                    disc[y] = low[y] = time
                    time += 1
                    stack.append((y, x, 0))
                elif y != parent and disc[y] < disc[x]:
                    edge_stack.append((x, y))
                    low[x] = min(low[x], disc[y])
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[x])
            if low[x] >= disc[parent]:
                group = []
                while True:
                    e = edge_stack.pop()
                    group.append(e if e[0] < e[1] else (e[1], e[0]))
                    if e == (parent, x):
                        break
                groups.append(sorted(group))

    groups.sort()
    comps = []
    for group in groups:
        nodes = sorted({x for e in group for x in e})
        local = {x: i for i, x in enumerate(nodes)}
        sub = load_graph(((local[a], local[b]) for a, b in group), len(nodes))
        comps.append(Component(sub, tuple(nodes)))
    return comps


@dataclass(frozen=True, eq=False)
class SpanningForest:
    """BFS spanning forest plus the ordered non-tree edges ``e_0..e_{nu-1}``."""

    graph: Graph
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    tree_edges: frozenset[Edge]
    nontree: tuple[Edge, ...]

    @property
    def nu(self) -> int:
        return len(self.nontree)

    @cached_property
    def nontree_index(self) -> dict[Edge, int]:
        return {e: j for j, e in enumerate(self.nontree)}

    @cached_property
    def edge_rank(self) -> np.ndarray:
        """Per edge id: its non-tree index ``j``, or -1 for tree edges."""
        rank = np.full(self.graph.m, -1, dtype=np.int64)
        for j, e in enumerate(self.nontree):
            rank[self.graph.edge_index[e]] = j
        return rank

    def tree_path(self, a: int, b: int) -> list[int]:
        """Node sequence of the unique tree path from ``a`` to ``b``."""
        left, right = [a], [b]
        x, y = a, b
        while self.depth[x] > self.depth[y]:
            x = self.parent[x]
            left.append(x)
        while self.depth[y] > self.depth[x]:
            y = self.parent[y]
            right.append(y)
        while x != y:
            x = self.parent[x]
            y = self.parent[y]
            left.append(x)
            right.append(y)
        right.pop()
        return left + right[::-1]

    @cached_property
    def fundamental_loops(self) -> tuple[tuple[int, ...], ...]:
        """Node loop of the fundamental cycle closed by each non-tree edge."""
        return tuple(tuple(self.tree_path(u, v)) for u, v in self.nontree)


def spanning_forest(graph: Graph) -> SpanningForest:
    parent = [-1] * graph.n
    depth = [-1] * graph.n
    tree: set[Edge] = set()
    for s in range(graph.n):
        if depth[s] >= 0:
            continue
        depth[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in graph.adjacency[x]:
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    tree.add((x, y) if x < y else (y, x))
                    queue.append(y)
    nontree = tuple(e for e in graph.edges if e not in tree)
    return SpanningForest(graph, tuple(parent), tuple(depth), frozenset(tree), nontree)
