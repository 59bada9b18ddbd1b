"""Named small graphs used as fixtures by the tests, the CLI and ``oracle-check``."""

from __future__ import annotations

import re
from itertools import product
from typing import Callable

from .graph import Graph, load_graph

__all__ = ["FIXTURES", "fixture", "fixture_names", "bracelet"]


def _ring(nodes: list[int]) -> list[tuple[int, int]]:
    return [(nodes[i - 1], nodes[i]) for i in range(len(nodes))]


def triangle() -> Graph:
    return load_graph([(0, 1), (1, 2), (0, 2)], 3)


def fcb_hexagons() -> Graph:
    """Two hexagons sharing the edge (0, 5)."""
    return load_graph(_ring([0, 1, 2, 3, 4, 5]) + [(5, 6), (6, 7), (7, 8), (8, 9), (9, 0)], 10)


def barallene() -> Graph:
    """Bridgeheads 0 and 1 joined by three paths of length 3."""
    edges = []
    for a, b in [(2, 3), (4, 5), (6, 7)]:
        edges += [(0, a), (a, b), (b, 1)]
    return load_graph(edges, 8)


def cube() -> Graph:
    return load_graph([(x, x ^ (1 << k)) for x in range(8) for k in range(3) if x < x ^ (1 << k)], 8)


def square_pyramid() -> Graph:
    return load_graph(_ring([0, 1, 2, 3]) + [(i, 4) for i in range(4)], 5)


def adamantane() -> Graph:
    """Bridgeheads 0-3, one CH2 node between every pair of bridgeheads."""
    edges = []
    for node, (a, b) in enumerate([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], start=4):
        edges += [(a, node), (node, b)]
    return load_graph(edges, 10)


def bracelet(k: int) -> Graph:
    """``k`` diamonds closed into a ring.

    Diamond ``i`` uses nodes ``4i..4i+3`` with tips ``4i`` and ``4i+3``; the
    tip ``4i+3`` is joined to ``4(i+1)``. The large loops have length ``3k``.
    """
    if k < 2:
        raise ValueError("bracelet needs at least 2 diamonds")
    edges = []
    for i in range(k):
        a, t, b, c = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(a, t), (a, b), (t, c), (b, c), (c, (4 * (i + 1)) % (4 * k))]
    return load_graph(edges, 4 * k)


def overlapping_diamonds() -> Graph:
    """A square with two length-3 detours on opposite diagonals."""
    return load_graph(_ring([0, 1, 2, 3]) + [(0, 4), (4, 5), (5, 2), (1, 6), (6, 7), (7, 3)], 8)


def visfamex_prism() -> Graph:
    """Triangular prism with subdivided laterals, a doubled lateral and an attached hexagon.

    Top triangle 0-1-3, bottom triangle 10-11-12. Laterals 0-5-10 and 1-6-11;
    the third lateral is the pair of paths 3-7-12 and 3-8-12. A six-ring
    through 3-0-5 closes over nodes 2, 4, 9.
    """
    edges = [(0, 1), (1, 3), (0, 3), (10, 11), (11, 12), (10, 12)]
    edges += [(0, 5), (5, 10), (1, 6), (6, 11), (3, 7), (7, 12), (3, 8), (8, 12)]
    edges += [(5, 2), (2, 4), (4, 9), (9, 3)]
    return load_graph(edges, 13)


def twistane() -> Graph:
    return load_graph(_ring(list(range(10))) + [(0, 5), (2, 7)], 10)


def hex_prism() -> Graph:
    return load_graph(
        _ring(list(range(6))) + _ring(list(range(6, 12))) + [(i, i + 6) for i in range(6)], 12
    )


def glued_cubes() -> Graph:
    """Two cubes sharing a face: the 3x2x2 grid graph."""
    idx = {p: i for i, p in enumerate(product(range(3), range(2), range(2)))}
    edges = []
    for (x, y, z), i in idx.items():
        for d in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
            nb = (x + d[0], y + d[1], z + d[2])
            if nb in idx:
                edges.append((i, idx[nb]))
    return load_graph(edges, 12)


def intersect_thm() -> Graph:
    """Two 16-cycles meeting over three paths, plus two squares.

    Spine 0..8 with detours 1-9-3 and 5-10-7; outer paths 0-11..17-8 and
    0-18..24-8, each of length 8.
    """
    edges = [(i, i + 1) for i in range(8)] + [(1, 9), (9, 3), (5, 10), (10, 7)]
    for first in (11, 18):
        path = [0] + list(range(first, first + 7)) + [8]
        edges += [(path[i], path[i + 1]) for i in range(8)]
    return load_graph(edges, 25)


def twisted_pair() -> Graph:
    """Hexagon 0..5 and the loop 0-1-6-4-3-7 sharing edges 0-1 and 3-4 in crossed order."""
    return load_graph(_ring(list(range(6))) + [(1, 6), (6, 4), (3, 7), (7, 0)], 8)


FIXTURES: dict[str, Callable[[], Graph]] = {
    "triangle": triangle,
    "fcb-hexagons": fcb_hexagons,
    "barallene": barallene,
    "cube": cube,
    "square-pyramid": square_pyramid,
    "adamantane": adamantane,
    "three-diamonds": lambda: bracelet(3),
    "overlapping-diamonds": overlapping_diamonds,
    "visfamex-prism": visfamex_prism,
    "twistane": twistane,
    "hex-prism": hex_prism,
    "glued-cubes": glued_cubes,
    "intersect-thm": intersect_thm,
    "twisted-pair": twisted_pair,
}

_BRACELET = re.compile(r"bracelet-(\d+)$")


def fixture_names() -> list[str]:
    return list(FIXTURES) + [f"bracelet-{k}" for k in range(2, 7)]


def fixture(name: str) -> Graph:
    m = _BRACELET.match(name)
    if m:
        return bracelet(int(m.group(1)))
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None
