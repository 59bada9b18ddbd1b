"""How pairs of MCB cycles intersect, single-path rewriting, and dual graphs.

Two cycles of a minimum cycle basis meet over paths ``P_1..P_k`` that occur
in the same cyclic order and orientation on both loops, for a suitable
orientation of each. Between consecutive paths the loops run along separator
paths ``Q_i^(1)``, ``Q_i^(2)``; all separator pairs have equal lengths except
possibly the longest, which is indexed last. Lengths are edge counts, so a
single-node path has length 0.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .cycles import EdgeCycle, NotSimpleLoop, loop_edges
from .gf2 import XorBasis

__all__ = [
    "FormatViolation",
    "Disjoint",
    "NotApplicable",
    "NotConverged",
    "MultiPathPair",
    "IntersectionDecomposition",
    "intersection_paths",
    "decompose_intersection",
    "McbExpander",
    "single_path_exchange",
    "postprocess_mcb",
    "DualGraph",
    "build_dual_graph",
]


class FormatViolation(ValueError):
    def __init__(self, equation: str, message: str):
        super().__init__(f"{equation}: {message}")
        self.equation = equation


class Disjoint(ValueError):
    pass


class NotApplicable(ValueError):
    pass


class NotConverged(RuntimeError):
    def __init__(self, iterations: int, remaining: int):
        super().__init__(f"{remaining} multi-path pairs left after {iterations} iterations")
        self.iterations = iterations
        self.remaining = remaining


class MultiPathPair(ValueError):
    pass


def _components(c1: EdgeCycle, c2: EdgeCycle) -> list[set[int]]:
    shared = c1.nodes & c2.nodes
    adj: dict[int, list[int]] = {x: [] for x in shared}
    for a, b in c1.edges & c2.edges:
        adj[a].append(b)
        adj[b].append(a)
    seen: set[int] = set()
    out = []
    for x in sorted(shared):
        if x in seen:
            continue
        comp = {x}
        stack = [x]
        seen.add(x)
        while stack:
            y = stack.pop()
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    comp.add(z)
                    stack.append(z)
        out.append(comp)
    return out


def intersection_paths(c1: EdgeCycle, c2: EdgeCycle) -> int:
    """Number of maximal shared paths (0 when disjoint)."""
    return len(_components(c1, c2))


@dataclass
class IntersectionDecomposition:
    """Oriented view of a pair with ``|C1| <= |C2|``.

    ``loop1``/``loop2`` start at the first node of ``paths[0]`` and follow
    the matching orientations. ``q1[i]``/``q2[i]`` are the separator paths
    leaving ``paths[i]`` (endpoints included); the large pair is last.
    ``swapped`` is True when the caller's arguments were exchanged.
    """

    loop1: list[int]
    loop2: list[int]
    paths: list[list[int]]
    q1: list[list[int]]
    q2: list[list[int]]
    swapped: bool

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def q1_lengths(self) -> list[int]:
        return [len(q) - 1 for q in self.q1]

    @property
    def q2_lengths(self) -> list[int]:
        return [len(q) - 1 for q in self.q2]


def _arc(loop: list[int], start: int, steps: int) -> list[int]:
    n = len(loop)
    return [loop[(start + t) % n] for t in range(steps + 1)]


def _locate_paths(loop: list[int], comps: list[set[int]]) -> list[tuple[int, int]]:
    """``(start index, edge length)`` of each component as an arc of ``loop``,
    ordered along the loop."""
    n = len(loop)
    where = {}
    for ci, comp in enumerate(comps):
        for x in comp:
            where[x] = ci
    out = []
    for i, x in enumerate(loop):
        ci = where.get(x)
        if ci is None:
            continue
        prev = loop[i - 1]
        if where.get(prev) == ci and len(comps[ci]) > 1:
            continue
        out.append((i, len(comps[ci]) - 1, ci))
    if len(out) != len(comps):
        # a component wraps the whole loop
        raise ValueError("cycles coincide")
    for i, length, ci in out:
        arc = {loop[(i + t) % n] for t in range(length + 1)}
        if arc != comps[ci]:
            raise ValueError("shared component is not an arc")
    return [(i, length) for i, length, _ in out]


def _check(q1: list[int], q2: list[int], l1: int, l2: int) -> int:
    """Index of the large pair, or raise FormatViolation."""
    k = len(q1)
    unequal = [i for i in range(k) if q1[i] != q2[i]]
    if len(unequal) > 1:
        raise FormatViolation("sm_path_equal", f"separator pairs {unequal} differ in length")
    if unequal:
        big = unequal[0]
    else:
        big = max(range(k), key=lambda i: (q1[i], -i))
    for i in range(k):
        if i == big:
            continue
        if 2 * q1[i] > l1 or 2 * q2[i] > l1:
            raise FormatViolation("sm_path_len", f"separator pair {i} longer than |C1|/2")
    if q2[big] != q1[big] + l2 - l1:
        raise FormatViolation("lg_path_equal", "large separator lengths do not differ by |C2|-|C1|")
    if 2 * q1[big] < l1 or 2 * q2[big] < l2:
        raise FormatViolation("lg_path_len", "large separator shorter than half its cycle")
    return big


def decompose_intersection(c1: EdgeCycle, c2: EdgeCycle) -> IntersectionDecomposition:
    swapped = len(c1) > len(c2)
    if swapped:
        c1, c2 = c2, c1
    comps = _components(c1, c2)
    if not comps:
        raise Disjoint("cycles share no node")
    loop1 = c1.circulation()
    l1, l2 = len(loop1), len(c2)
    arcs1 = _locate_paths(loop1, comps)
    k = len(arcs1)
    start0 = arcs1[0][0]
    loop1 = loop1[start0:] + loop1[:start0]
    arcs1 = [((s - start0) % l1, ln) for s, ln in arcs1]
    paths = [_arc(loop1, s, ln) for s, ln in arcs1]

    base2 = c2.circulation()
    failure: FormatViolation | None = None
    for loop2 in (base2, [base2[0]] + base2[:0:-1]):
        pos = {x: i for i, x in enumerate(loop2)}
        ok = all(
            (pos[p[t + 1]] - pos[p[t]]) % l2 == 1 for p in paths for t in range(len(p) - 1)
        )
        if not ok:
            failure = failure or FormatViolation("orientation", "shared paths run in opposite directions")
            continue
        shift = pos[paths[0][0]]
        loop2 = loop2[shift:] + loop2[:shift]
        pos = {x: i for i, x in enumerate(loop2)}
        starts2 = [pos[p[0]] for p in paths]
        if any(starts2[i] >= starts2[i + 1] for i in range(k - 1)):
            failure = failure or FormatViolation("orientation", "shared paths appear in a different order")
            continue
        q1, q2 = [], []
        for i in range(k):
            ln = len(paths[i]) - 1
            if k == 1:
                s1 = l1 - ln
                s2 = l2 - ln
            else:
                s1 = (arcs1[(i + 1) % k][0] - (arcs1[i][0] + ln)) % l1
                s2 = (starts2[(i + 1) % k] - (starts2[i] + ln)) % l2
            q1.append(_arc(loop1, arcs1[i][0] + ln, s1))
            q2.append(_arc(loop2, starts2[i] + ln, s2))
        try:
            big = _check([len(q) - 1 for q in q1], [len(q) - 1 for q in q2], l1, l2)
        except FormatViolation as exc:
            failure = exc if failure is None or failure.equation == "orientation" else failure
            continue
        r = (big + 1) % k
        paths_r = paths[r:] + paths[:r]
        q1 = q1[r:] + q1[:r]
        q2 = q2[r:] + q2[:r]
        s1 = loop1.index(paths_r[0][0])
        s2 = loop2.index(paths_r[0][0])
        return IntersectionDecomposition(
            loop1[s1:] + loop1[:s1], loop2[s2:] + loop2[:s2], paths_r, q1, q2, swapped
        )
    assert failure is not None
    raise failure


def _path_edges(path: list[int]) -> set[tuple[int, int]]:
    return {(a, b) if a < b else (b, a) for a, b in zip(path, path[1:])}


class McbExpander:
    """Expansion of edge-set cycles over a fixed list of basis cycles."""

    def __init__(self, cycles: list[EdgeCycle]):
        index: dict[tuple[int, int], int] = {}
        for c in cycles:
            for e in c.edges:
                index.setdefault(e, len(index))
        self.index = index
        self.basis = XorBasis(track=True)
        for i, c in enumerate(cycles):
            if not self.basis.insert(self.mask(c), 1 << i):
                raise ValueError("cycles are linearly dependent")

    def mask(self, c: EdgeCycle) -> int:
        m = 0
        for e in c.edges:
            j = self.index.get(e)
            if j is None:
                return -1
            m |= 1 << j
        return m

    def expand(self, c: EdgeCycle) -> int | None:
        """Bitset of basis cycles summing to ``c``; None when outside the span."""
        m = self.mask(c)
        if m < 0:
            return None
        residue, combo = self.basis.reduce(m)
        return combo if residue == 0 else None


def _is_loop(c: EdgeCycle) -> bool:
    try:
        c.circulation()
    except NotSimpleLoop:
        return False
    return True


def single_path_exchange(
    mcb: list[EdgeCycle], a: int, b: int, expander: McbExpander | None = None
) -> tuple[list[EdgeCycle], EdgeCycle]:
    """Replace ``mcb[a]`` by a cycle meeting ``mcb[b]`` over a single path."""
    ca, cb = mcb[a], mcb[b]
    dec = decompose_intersection(ca, cb)
    if dec.k < 2:
        raise NotApplicable("pair already meets over a single path")
    qa, qb = (dec.q2, dec.q1) if dec.swapped else (dec.q1, dec.q2)
    expander = expander or McbExpander(mcb)

    def accept(cand: EdgeCycle) -> bool:
        if len(cand) != len(ca) or not _is_loop(cand):
            return False
        combo = expander.expand(cand)
        return combo is not None and bool(combo >> a & 1)

    main = set(ca.edges)
    shorter = True
    for i in range(dec.k - 1):
        ce = _path_edges(qa[i]) | _path_edges(qb[i])
        shorter &= len(ce) < len(ca)
        main ^= ce
    cand = EdgeCycle(frozenset(main))
    if shorter and accept(cand):
        return _replace(mcb, a, cand), cand

    if dec.k == 2 and all(len(p) == 1 for p in dec.paths):
        r = min(qb, key=len)
        for q in sorted(qa, key=lambda q: (len(q), q)):
            cand = EdgeCycle(frozenset(_path_edges(q) | _path_edges(r)))
            if accept(cand):
                return _replace(mcb, a, cand), cand
    raise NotApplicable("no admissible single-path exchange found")


def _replace(mcb: list[EdgeCycle], a: int, c: EdgeCycle) -> list[EdgeCycle]:
    out = list(mcb)
    out[a] = c
    return out


def _pick_target(mcb: list[EdgeCycle], i: int, j: int) -> tuple[int, int]:
    """The longer cycle is rewritten; ties go to the lower index."""
    if len(mcb[j]) > len(mcb[i]):
        return j, i
    return i, j


def postprocess_mcb(
    mcb: list[EdgeCycle], rng: random.Random | int | None = None, n_max: int = 100
) -> tuple[list[EdgeCycle], int]:
    """Rewrite cycles until every pair meets over at most one path.

    Returns the new basis and the number of exchanges performed.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    mcb = list(mcb)
    nu = len(mcb)
    multi: set[tuple[int, int]] = set()
    for i in range(nu):
        for j in range(i + 1, nu):
            if intersection_paths(mcb[i], mcb[j]) > 1:
                multi.add((i, j))
    it = 0
    while multi and it < n_max:
        i, j = sorted(multi)[rng.randrange(len(multi))]
        a, b = _pick_target(mcb, i, j)
        mcb, _ = single_path_exchange(mcb, a, b)
        it += 1
        for o in range(nu):
            if o == a:
                continue
            key = (min(a, o), max(a, o))
            if intersection_paths(mcb[a], mcb[o]) > 1:
                multi.add(key)
            else:
                multi.discard(key)
    if multi:
        raise NotConverged(it, len(multi))
    return mcb, it


@dataclass
class DualGraph:
    weights: list[int]
    edges: list[tuple[int, int, int]]
    loops: list[list[int]]

    def to_dot(self, name: str = "dual") -> str:
        lines = [f"graph {name} {{"]
        for i, w in enumerate(self.weights):
            lines.append(f'  c{i} [label="c{i} (len={w})"];')
        for i, j, w in self.edges:
            lines.append(f'  c{i} -- c{j} [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": [
                {"id": i, "label": f"c{i} (len={w})", "length": w, "loop": loop}
                for i, (w, loop) in enumerate(zip(self.weights, self.loops))
            ],
            "edges": [{"source": i, "target": j, "length": w} for i, j, w in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def build_dual_graph(mcb: list[EdgeCycle]) -> DualGraph:
    edges = []
    for i in range(len(mcb)):
        for j in range(i + 1, len(mcb)):
            k = intersection_paths(mcb[i], mcb[j])
            if k > 1:
                raise MultiPathPair(f"cycles {i} and {j} meet over {k} paths")
            if k == 1:
                edges.append((i, j, len(mcb[i].edges & mcb[j].edges)))
    return DualGraph([len(c) for c in mcb], edges, [c.circulation() for c in mcb])


def loop_to_cycle(loop: list[int]) -> EdgeCycle:
    return EdgeCycle(frozenset(loop_edges(loop)))
