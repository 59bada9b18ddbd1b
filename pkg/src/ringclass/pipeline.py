"""End-to-end decomposition of a graph, one biconnected component at a time."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .classes import Classes, classify
from .cycles import EdgeCycle
from .graph import Component, Graph, SpanningForest, biconnected_components, spanning_forest
from .mcb import McbBasis, build_R1, compute_mcb, compute_modified_witnesses
from .vfamilies import DagCollection, RMatrix, VFamily, build_R0, compute_vfamilies

__all__ = ["json_count", "ComponentDecomposition", "Decomposition", "decompose_component", "decompose"]

SCHEMA = 1


def json_count(x: int) -> int | str:
    """Counts at or above 2**53 become decimal strings."""
    return str(x) if x >= 1 << 53 else x


@dataclass
class ComponentDecomposition:
    component: Component
    forest: SpanningForest
    families: list[VFamily]
    dags: DagCollection
    R0: RMatrix
    mcb: McbBasis
    R1: RMatrix
    classes: Classes

    @property
    def graph(self) -> Graph:
        return self.component.graph

    @property
    def nu(self) -> int:
        return self.forest.nu

    def basis_cycles(self) -> list[EdgeCycle]:
        """Concrete MCB: the prototype of each basis row, in slot order."""
        return [self.families[self.R0.families[i][0]].prototype for i in self.mcb.rows]

    def sli_cycle(self, sli_id: int) -> EdgeCycle:
        return self.families[self.classes.sli[sli_id].representative].prototype

    @cached_property
    def relevant_families(self) -> list[VFamily]:
        return [f for f in self.families if f.relevant]

    @property
    def relevant_count(self) -> int:
        return sum(s.count for s in self.classes.sli)

    def to_parent(self, loop: list[int]) -> list[int]:
        return [self.component.nodes[x] for x in loop]

    def to_json(self) -> dict:
        sli_rows = []
        for s in self.classes.sli:
            sli_rows.append(
                {
                    "id": s.id,
                    "length": s.length,
                    "cycle_count": json_count(s.count),
                    "family_descriptors": [self._family_json(self.families[f]) for f in s.families],
                    "in_basis": s.in_basis,
                    "pi": s.pi,
                }
            )
        pis = []
        for p in self.classes.pi:
            pis.append(
                {
                    "id": p.id,
                    "length": p.length,
                    "rank": p.rank,
                    "member_sli_ids": list(p.sli),
                    "polyhedra": [
                        {
                            "faces": [self.to_parent(self.sli_cycle(f).circulation()) for f in poly.faces_sli],
                            "face_sli_ids": poly.faces_sli,
                            "non_unique": poly.non_unique,
                        }
                        for poly in p.polyhedra
                    ],
                }
            )
        return {
            "nodes": list(self.component.nodes),
            "nu": self.nu,
            "families": [self._family_json(f) for f in self.families],
            "relevant_cycle_count": json_count(self.relevant_count),
            "sli_classes": sli_rows,
            "pi_classes": pis,
        }

    def _family_json(self, f: VFamily) -> dict:
        u, v = self.forest.nontree[f.root]
        nodes = self.component.nodes
        return {
            "id": f.id,
            "root_edge": [nodes[u], nodes[v]],
            "descriptor": [nodes[x] for x in f.descriptor],
            "parity": f.parity,
            "length": f.length,
            "count": json_count(f.count),
            "relevant": bool(f.relevant),
        }


def decompose_component(component: Component, workers: int | None = 1) -> ComponentDecomposition:
    graph = component.graph
    forest = spanning_forest(graph)
    families, dags = compute_vfamilies(graph, forest, workers=workers)
    R0 = build_R0(families, forest)
    mcb = compute_mcb(R0)
    compute_modified_witnesses(mcb)
    R1 = build_R1(R0, mcb)
    classes = classify(R1, mcb.lengths, families)
    return ComponentDecomposition(component, forest, families, dags, R0, mcb, R1, classes)


@dataclass
class Decomposition:
    graph: Graph
    components: list[ComponentDecomposition]
    bridges: int

    @property
    def nu(self) -> int:
        return sum(c.nu for c in self.components)

    @property
    def relevant_count(self) -> int:
        return sum(c.relevant_count for c in self.components)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.graph.n,
            "m": self.graph.m,
            "nu": self.nu,
            "relevant_cycle_count": json_count(self.relevant_count),
            "components": [c.to_json() for c in self.components],
        }


def decompose(graph: Graph, component: str = "all", workers: int | None = 1) -> Decomposition:
    """Decompose every cyclic biconnected component (or only the largest one)."""
    if component not in ("all", "largest"):
        raise ValueError("component must be 'all' or 'largest'")
    comps = biconnected_components(graph)
    cyclic = [c for c in comps if not c.is_bridge]
    if component == "largest" and cyclic:
        cyclic = [max(cyclic, key=lambda c: (c.graph.m, -c.nodes[0]))]
    return Decomposition(
        graph,
        [decompose_component(c, workers) for c in cyclic],
        len(comps) - len([c for c in comps if not c.is_bridge]),
    )
