"""Brute-force reference implementations for small graphs.

Cycles are int bitmasks over edge ids of the input graph. Nothing here is used
by the main pipeline; it only exists to check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import prod

from .cycles import EdgeCycle, NotSimpleLoop
from .gf2 import XorBasis
from .graph import Graph, spanning_forest

__all__ = [
    "TooLarge",
    "OracleReport",
    "enumerate_cycles",
    "relevant_oracle",
    "mcb_tiers",
    "enumerate_mcbs",
    "count_mcbs",
    "pi_oracle",
    "sli_oracle",
    "oracle_report",
    "mask_to_cycle",
    "cycle_to_mask",
    "check_pipeline",
]

MAX_EDGES = 20
MAX_MCBS = 200_000


class TooLarge(ValueError):
    pass


def cycle_to_mask(graph: Graph, cycle: EdgeCycle) -> int:
    idx = graph.edge_index
    m = 0
    for e in cycle.edges:
        m |= 1 << idx[e]
    return m


def mask_to_cycle(graph: Graph, mask: int) -> EdgeCycle:
    edges = graph.edges
    out = []
    while mask:
        low = mask & -mask
        out.append(edges[low.bit_length() - 1])
        mask ^= low
    return EdgeCycle(frozenset(out))


def _is_simple(graph: Graph, mask: int) -> bool:
    try:
        mask_to_cycle(graph, mask).circulation()
    except NotSimpleLoop:
        return False
    return True


def enumerate_cycles(graph: Graph, max_edges: int = MAX_EDGES) -> list[tuple[int, bool]]:
    """Every nonzero cycle-space element as ``(edge mask, is simple loop)``."""
    if graph.m > max_edges:
        raise TooLarge(f"{graph.m} edges exceeds the oracle cap of {max_edges}")
    forest = spanning_forest(graph)
    fund = []
    for loop in forest.fundamental_loops:
        m = 0
        for i in range(len(loop)):
            m ^= 1 << graph.edge_id(loop[i - 1], loop[i])
        fund.append(m)
    out = []
    for code in range(1, 1 << len(fund)):
        m = 0
        for j, f in enumerate(fund):
            if code >> j & 1:
                m ^= f
        out.append((m, _is_simple(graph, m)))
    return out


def _by_length(cycles: list[int]) -> dict[int, list[int]]:
    tiers: dict[int, list[int]] = {}
    for c in sorted(cycles, key=lambda c: (c.bit_count(), c)):
        tiers.setdefault(c.bit_count(), []).append(c)
    return tiers


def relevant_oracle(cycles: list[tuple[int, bool]] | list[int]) -> list[int]:
    """Cycles outside the span of all strictly shorter cycles, sorted by (length, mask)."""
    masks = [c[0] if isinstance(c, tuple) else c for c in cycles]
    shorter = XorBasis()
    relevant = []
    for _length, tier in sorted(_by_length(masks).items()):
        relevant += [c for c in tier if not shorter.contains(c)]
        for c in tier:
            shorter.insert(c)
    return relevant


@dataclass
class Tier:
    length: int
    cycles: list[int]
    rank: int
    below: XorBasis

    def independent(self, subset) -> bool:
        b = self.below.copy()
        return all(b.insert(c) for c in subset)

    def selections(self) -> list[tuple[int, ...]]:
        return [s for s in combinations(self.cycles, self.rank) if self.independent(s)]


def mcb_tiers(relevant: list[int]) -> list[Tier]:
    """Per length: the relevant cycles and how many of them every MCB uses."""
    tiers = []
    below = XorBasis()
    for length, tier in sorted(_by_length(relevant).items()):
        after = below.copy()
        for c in tier:
            after.insert(c)
        tiers.append(Tier(length, tier, len(after) - len(below), below))
        below = after
    return tiers


def enumerate_mcbs(relevant: list[int], nu: int | None = None, limit: int = MAX_MCBS) -> list[frozenset[int]]:
    """All minimum cycle bases as frozensets of edge masks."""
    tiers = mcb_tiers(relevant)
    if nu is not None and sum(t.rank for t in tiers) != nu:
        raise ValueError("relevant cycles do not span the cycle space")
    per = [t.selections() for t in tiers]
    if prod(len(p) for p in per) > limit:
        raise TooLarge("too many MCBs to list")
    return [frozenset(c for part in choice for c in part) for choice in product(*per)]


def count_mcbs(relevant: list[int]) -> int:
    return prod(len(t.selections()) for t in mcb_tiers(relevant))


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def groups(self) -> list[frozenset]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(g) for g in out.values()), key=min)


def pi_oracle(relevant: list[int]) -> list[frozenset[int]]:
    """Transitive closure of the pairwise swap test over all MCBs."""
    dsu = _DSU(relevant)
    for t in mcb_tiers(relevant):
        for sel in t.selections():
            chosen = set(sel)
            for c2 in sel:
                rest = [c for c in sel if c != c2]
                for c1 in t.cycles:
                    if c1 in chosen or dsu.find(c1) == dsu.find(c2):
                        continue
                    if t.independent(rest + [c1]):
                        dsu.union(c1, c2)
    return dsu.groups()


def sli_oracle(relevant: list[int]) -> list[frozenset[int]]:
    """Equal-length cycles whose sum lies in the span of strictly shorter cycles."""
    dsu = _DSU(relevant)
    for t in mcb_tiers(relevant):
        for a, b in combinations(t.cycles, 2):
            if t.below.contains(a ^ b):
                dsu.union(a, b)
    return dsu.groups()


@dataclass
class OracleReport:
    cycles: list[tuple[int, bool]]
    relevant: list[int]
    mcb_count: int
    mcb_cost: int
    pi: list[frozenset[int]]
    sli: list[frozenset[int]]


def oracle_report(graph: Graph, max_edges: int = MAX_EDGES) -> OracleReport:
    cycles = enumerate_cycles(graph, max_edges)
    relevant = relevant_oracle(cycles)
    tiers = mcb_tiers(relevant)
    return OracleReport(
        cycles,
        relevant,
        count_mcbs(relevant),
        sum(t.length * t.rank for t in tiers),
        pi_oracle(relevant),
        sli_oracle(relevant),
    )


def _pipeline_sets(graph: Graph, dec) -> tuple[set[int], set, set, list[tuple]]:
    """Relevant masks, sli and pi partitions, and per-pi polyhedron data from a decomposition."""
    from .vfamilies import enumerate_family_cycles

    relevant: set[int] = set()
    sli_groups, pi_groups, polys = set(), set(), []
    for comp in dec.components:
        nodes = comp.component.nodes

        def mask(cyc: EdgeCycle) -> int:
            return sum(1 << graph.edge_id(nodes[a], nodes[b]) for a, b in cyc.edges)

        by_pi: dict[int, set[int]] = {}
        for s in comp.classes.sli:
            members = set()
            for f in s.families:
                fam = comp.families[f]
                members.update(mask(c) for c in enumerate_family_cycles(fam, comp.dags[fam.root]))
            relevant |= members
            sli_groups.add(frozenset(members))
            by_pi.setdefault(s.pi, set()).update(members)
        pi_groups.update(frozenset(g) for g in by_pi.values())
        basis = [mask(c) for c in comp.basis_cycles()]
        for p in comp.classes.pi:
            sums = []
            for poly in p.polyhedra:
                acc = mask(comp.sli_cycle(poly.row))
                for j in poly.faces_slots:
                    acc ^= basis[j]
                sums.append(acc)
            polys.append((frozenset(by_pi[p.id]), len(p.polyhedra), sums))
    return relevant, sli_groups, pi_groups, polys


def check_pipeline(graph: Graph, max_edges: int = MAX_EDGES) -> dict[str, bool]:
    """Compare the main pipeline with the oracle on one graph.

    Keys: relevant set, sli and pi partitions, MCB cost, relevant-cycle
    count, number of MCBs, and polyhedra (each has a null sum, and a pi class
    of rank r with s sli classes carries s - r of them).
    """
    from .pipeline import decompose
    from .sampler import mcb_count

    rep = oracle_report(graph, max_edges)
    dec = decompose(graph)
    relevant, sli, pi, polys = _pipeline_sets(graph, dec)
    tiers = mcb_tiers(rep.relevant)
    poly_ok = True
    for members, n_poly, sums in polys:
        n_sli = sum(1 for s in rep.sli if s <= members)
        ordered = sorted(members, key=lambda c: (c.bit_count(), c))
        length = ordered[0].bit_count()
        below = XorBasis()
        for c in rep.relevant:
            if c.bit_count() < length:
                below.insert(c)
        span = below.copy()
        rank = sum(span.insert(c) for c in ordered)
        poly_ok &= n_poly == n_sli - rank and all(s == 0 for s in sums)
    return {
        "relevant": relevant == set(rep.relevant),
        "sli": sli == set(rep.sli),
        "pi": pi == set(rep.pi),
        "cost": sum(c.mcb.cost for c in dec.components) == sum(t.length * t.rank for t in tiers),
        "relevant_count": dec.relevant_count == len(rep.relevant),
        "mcb_count": mcb_count(dec) == rep.mcb_count,
        "polyhedra": poly_ok,
    }
