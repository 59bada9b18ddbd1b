"""Edge-rooted V'-families and their shortest-path DAGs.

For every non-tree edge ``e_j = (u, v)`` a breadth-first search labels each
node with its distance to ``e_j``, which endpoint(s) it descends from, and the
number of shortest paths back to ``e_j`` that avoid every non-tree edge
``e_k`` with ``k > j``. Odd families sit on nodes reached from both endpoints
at once; even families sit on edges joining a ``u``-side node to a ``v``-side
node at equal distance.

The bulk search runs in :mod:`ringclass._kernels`. :class:`ShortestPathDag`
is the exact (big-integer) version, built on demand for sampling and used as
the fallback when int64 counts would overflow.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ._kernels import BOTH, U_ONLY, V_ONLY, families_for_roots
from .cycles import CycleVec, EdgeCycle
from .graph import Graph, SpanningForest

__all__ = [
    "VFamily",
    "ShortestPathDag",
    "DagCollection",
    "RMatrix",
    "compute_vfamilies",
    "family_prototype",
    "build_R0",
    "sample_family_cycle",
    "enumerate_family_cycles",
]


@dataclass(eq=False)
class VFamily:
    """Descriptor record; ``q is None`` for odd families."""

    id: int
    root: int
    p: int
    q: int | None
    length: int
    count: int
    prototype: EdgeCycle = field(repr=False)
    relevant: bool | None = None

    @property
    def parity(self) -> str:
        return "odd" if self.q is None else "even"

    @property
    def descriptor(self) -> tuple[int, ...]:
        return (self.p,) if self.q is None else (self.p, self.q)


class ShortestPathDag:
    """Exact labels of the search rooted at ``e_j``.

    ``parents[x]`` lists the heads ``y`` of the DAG arcs ``x -> y`` in
    ascending order. Arcs point one level closer to the root edge, never
    cross an excluded edge, and only lead to nodes with admissible paths.
    """

    def __init__(self, graph: Graph, forest: SpanningForest, j: int):
        self.graph = graph
        self.j = j
        u, v = forest.nontree[j]
        self.root_edge = (u, v)
        rank = forest.nontree_index
        n = graph.n
        dist = [-1] * n
        anc = [0] * n
        npth = [0] * n
        valid = [True] * n
        parents: list[list[int]] = [[] for _ in range(n)]
        order: list[int] = []
        found: list[tuple[int, int | None, int, int, int]] = []

        def excluded(a: int, b: int) -> bool:
            k = rank.get((a, b) if a < b else (b, a))
            return k is not None and k > j

        dist[u] = dist[v] = 0
        anc[u], anc[v] = U_ONLY, V_ONLY
        npth[u] = npth[v] = 1
        level = sorted((u, v))
        while level:
            nxt = []
            for p in level:
                order.append(p)
                d = dist[p]
                if anc[p] == BOTH and valid[p]:
                    n1 = sum(npth[x] for x in parents[p] if anc[x] == U_ONLY)
                    n2 = sum(npth[x] for x in parents[p] if anc[x] == V_ONLY)
                    if n1 and n2:
                        found.append((p, None, 2 * d + 1, n1, n2))
                for q in graph.adjacency[p]:
                    ex = excluded(p, q)
                    if dist[q] < 0:
                        dist[q] = d + 1
                        anc[q] = anc[p]
                        valid[q] = anc[p] != BOTH
                        if not ex and npth[p] > 0:
                            npth[q] = npth[p]
                            parents[q].append(p)
                        nxt.append(q)
                    elif dist[q] == d + 1:
                        anc[q] |= anc[p]
                        if anc[p] == BOTH:
                            valid[q] = False
                        if npth[p] > 0 and not ex:
                            npth[q] += npth[p]
                            parents[q].append(p)
                    elif anc[p] == U_ONLY and anc[q] == V_ONLY and d > 0 and not ex:
                        if npth[p] and npth[q]:
                            found.append((p, q, 2 * d + 2, npth[p], npth[q]))
            level = sorted(nxt)
        for ps in parents:
            ps.sort()
        self.dist = dist
        self.ancestor = anc
        self.num_paths = npth
        self.valid = valid
        self.parents = parents
        self.order = order
        self.found = found

    def path_to_root(self, x: int, rng: random.Random | None = None) -> list[int]:
        """Node path from ``x`` up to ``u`` or ``v``.

        Without ``rng`` the lowest-index parent is taken at every step,
        otherwise parents are drawn with probability proportional to their
        path counts.
        """
        path = [x]
        while self.dist[x] > 0:
            x = self._step(self.parents[x], rng)
            path.append(x)
        return path

    def _step(self, options: list[int], rng: random.Random | None) -> int:
        if rng is None:
            return options[0]
        total = sum(self.num_paths[y] for y in options)
        r = rng.randrange(total)
        for y in options:
            r -= self.num_paths[y]
            if r < 0:
                return y
        raise AssertionError("unreachable")

    def family_loop(self, fam: VFamily, rng: random.Random | None = None) -> list[int]:
        """One member of ``fam`` as a node loop running ``u ... v``."""
        if fam.q is None:
            ups = [y for y in self.parents[fam.p] if self.ancestor[y] == U_ONLY]
            vps = [y for y in self.parents[fam.p] if self.ancestor[y] == V_ONLY]
            left = self.path_to_root(self._step(ups, rng), rng)
            right = self.path_to_root(self._step(vps, rng), rng)
            return left[::-1] + [fam.p] + right
        left = self.path_to_root(fam.p, rng)
        right = self.path_to_root(fam.q, rng)
        return left[::-1] + right

    def member_loops(self, fam: VFamily) -> Iterator[list[int]]:
        """Every member of ``fam``; exponential in general, meant for tests."""

        def paths(x: int) -> Iterator[list[int]]:
            if self.dist[x] == 0:
                yield [x]
                return
            for y in self.parents[x]:
                for rest in paths(y):
                    yield [x] + rest

        if fam.q is None:
            for a in self.parents[fam.p]:
                if self.ancestor[a] != U_ONLY:
                    continue
                for b in self.parents[fam.p]:
                    if self.ancestor[b] != V_ONLY:
                        continue
                    for pa in paths(a):
                        for pb in paths(b):
                            yield pa[::-1] + [fam.p] + pb
        else:
            for pa in paths(fam.p):
                for pb in paths(fam.q):
                    yield pa[::-1] + pb


class DagCollection:
    """Lazily built exact DAGs, one per root edge."""

    def __init__(self, graph: Graph, forest: SpanningForest):
        self.graph = graph
        self.forest = forest
        self._cache: dict[int, ShortestPathDag] = {}

    def __getitem__(self, j: int) -> ShortestPathDag:
        dag = self._cache.get(j)
        if dag is None:
            dag = self._cache[j] = ShortestPathDag(self.graph, self.forest, j)
        return dag

    def __len__(self) -> int:
        return self.forest.nu


def _loop_cycle(loop: list[int]) -> EdgeCycle:
    return EdgeCycle.from_loop(loop)


def _default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))


def compute_vfamilies(
    graph: Graph,
    forest: SpanningForest,
    workers: int | None = 1,
    chunk: int = 256,
) -> tuple[list[VFamily], DagCollection]:
    """All V'-families with nonzero count, ordered by root edge then discovery.

    ``workers`` > 1 splits the root edges into chunks processed on a thread
    pool (the compiled kernel releases the GIL). ``None`` picks a worker count
    from the machine.
    """
    nu = forest.nu
    dags = DagCollection(graph, forest)
    if nu == 0:
        return [], dags
    indptr, nbr, eid = graph.csr
    rank = forest.edge_rank
    roots = np.arange(nu, dtype=np.int64)
    us = np.array([e[0] for e in forest.nontree], dtype=np.int64)
    vs = np.array([e[1] for e in forest.nontree], dtype=np.int64)
    reids = np.array([graph.edge_index[e] for e in forest.nontree], dtype=np.int64)

    def run(lo: int, hi: int):
        return families_for_roots(
            roots[lo:hi], us[lo:hi], vs[lo:hi], reids[lo:hi], graph.n, indptr, nbr, eid, rank
        )

    if workers is None:
        workers = _default_workers()
    bounds = [(lo, min(lo + chunk, nu)) for lo in range(0, nu, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: run(*b), bounds))
    else:
        parts = [run(lo, hi) for lo, hi in bounds]

    families: list[VFamily] = []
    edges = graph.edges
    for (lo, _hi), (records, ptr, eids, overflow) in zip(bounds, parts):
        by_root: dict[int, list[VFamily]] = {}
        for i in range(records.shape[0]):
            j, p, q, length, a, b = (int(x) for x in records[i])
            proto = EdgeCycle(frozenset(edges[e] for e in eids[ptr[i] : ptr[i + 1]]))
            by_root.setdefault(j, []).append(
                VFamily(-1, j, p, None if q < 0 else q, length, a * b, proto)
            )
        for off in np.flatnonzero(overflow):
            j = lo + int(off)
            dag = dags[j]
            by_root[j] = [
                VFamily(-1, j, p, q, length, a * b, _loop_cycle(_proto_loop(dag, p, q)))
                for p, q, length, a, b in dag.found
            ]
        for j in sorted(by_root):
            families.extend(by_root[j])
    for i, fam in enumerate(families):
        fam.id = i
    return families, dags


def _proto_loop(dag: ShortestPathDag, p: int, q: int | None) -> list[int]:
    tmp = VFamily(-1, dag.j, p, q, 0, 0, EdgeCycle(frozenset()))
    return dag.family_loop(tmp)


def family_prototype(fam: VFamily, dag: ShortestPathDag) -> EdgeCycle:
    """Deterministic representative: lowest-index parent at every step."""
    return _loop_cycle(dag.family_loop(fam))


def sample_family_cycle(fam: VFamily, dag: ShortestPathDag, rng: random.Random) -> EdgeCycle:
    """Uniform member of ``fam`` by count-weighted backtracking."""
    return _loop_cycle(dag.family_loop(fam, rng))


def enumerate_family_cycles(fam: VFamily, dag: ShortestPathDag) -> list[EdgeCycle]:
    return [_loop_cycle(loop) for loop in dag.member_loops(fam)]


@dataclass
class RMatrix:
    """GF(2) rows as int bitsets with per-row metadata.

    ``source`` is the R0 row each row descends from and ``slot`` the basis
    column a row occupies (-1 for non-basis rows); both are filled in once an
    MCB is known.
    """

    rows: list[int]
    lengths: list[int]
    families: list[list[int]]
    ncols: int
    source: list[int] = field(default_factory=list)
    slot: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def subset(self, keep: list[int]) -> "RMatrix":
        return RMatrix(
            [self.rows[i] for i in keep],
            [self.lengths[i] for i in keep],
            [list(self.families[i]) for i in keep],
            self.ncols,
            [self.source[i] for i in keep] if self.source else [],
            [self.slot[i] for i in keep] if self.slot else [],
        )

    def dense(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[i, low.bit_length() - 1] = 1
                r ^= low
        return out


def build_R0(families: list[VFamily], forest: SpanningForest) -> RMatrix:
    """Prototype rows in fundamental coordinates, stably sorted by length."""
    index = forest.nontree_index
    order = sorted(range(len(families)), key=lambda i: families[i].length)
    rows, lengths, fams = [], [], []
    for i in order:
        f = families[i]
        b = 0
        for e in f.prototype.edges:
            k = index.get(e)
            if k is not None:
                b |= 1 << k
        rows.append(b)
        lengths.append(f.length)
        fams.append([f.id])
    n = len(rows)
    return RMatrix(rows, lengths, fams, forest.nu, list(range(n)), [-1] * n)


def row_vec(matrix: RMatrix, i: int) -> CycleVec:
    return CycleVec(matrix.rows[i])
