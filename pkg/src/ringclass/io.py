"""Reading graphs from edge lists, JSON, and bond frames."""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph, GraphError, load_graph

__all__ = ["ParseError", "EmptyGraph", "parse_edgelist", "parse_json", "parse_bonds", "read_frames", "FORMATS"]

FORMATS = ("edgelist", "json", "bonds")


class ParseError(ValueError):
    pass


class EmptyGraph(ParseError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _pair(tokens: list[str], lineno: int) -> tuple[int, int]:
    if len(tokens) != 2:
        raise ParseError(f"line {lineno}: expected 'u v', got {' '.join(tokens)!r}")
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer node index") from None


def _build(edges, n, where: str) -> Graph:
    if n is None and not edges:
        raise EmptyGraph(f"{where}: no nodes or edges")
    try:
        return load_graph(edges, n)
    except GraphError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def parse_edgelist(text: str) -> Graph:
    """``u v`` per line, ``#`` comments, optional leading ``n <count>``."""
    n = None
    edges = []
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if seen_data or n is not None:
                raise ParseError(f"line {lineno}: 'n' header must come first")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f"line {lineno}: malformed 'n' header")
            n = int(tokens[1])
        else:
            edges.append(_pair(tokens, lineno))
        seen_data = True
    return _build(edges, n, "edge list")


def parse_json(text: str) -> Graph:
    """``{"n": int, "edges": [[u, v], ...]}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "edges" not in obj:
        raise ParseError("JSON graph needs an 'edges' list")
    n = obj.get("n")
    if n is not None and (not isinstance(n, int) or isinstance(n, bool)):
        raise ParseError("'n' must be an integer")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list")
    pairs = []
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ParseError(f"edge {i}: expected [u, v] integers")
        pairs.append((e[0], e[1]))
    return _build(pairs, n, "JSON graph")


def parse_bonds(text: str) -> list[tuple[str, Graph]]:
    """Blocks of ``frame <t>`` followed by bond lines; one graph per frame.

    Every frame shares the node count of the largest index seen in any frame,
    unless an ``n <count>`` header precedes the first frame.
    """
    n = None
    frames: list[tuple[str, list[tuple[int, int]]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "frame":
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: expected 'frame <t>'")
            frames.append((tokens[1], []))
        elif tokens[0] == "n" and not frames and n is None:
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f"line {lineno}: malformed 'n' header")
            n = int(tokens[1])
        else:
            if not frames:
                raise ParseError(f"line {lineno}: bond before the first 'frame' line")
            frames[-1][1].append(_pair(tokens, lineno))
    if not frames:
        raise EmptyGraph("bond file has no frames")
    if n is None:
        n = 1 + max((max(p) for _, bonds in frames for p in bonds), default=-1)
    return [(t, _build(bonds, n, f"frame {t}")) for t, bonds in frames]


def read_frames(path: str | Path, fmt: str | None = None) -> list[tuple[str, Graph]]:
    """Read a file as a list of ``(label, graph)``; non-bond formats give one frame."""
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "edgelist"
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    try:
        text = path.read_text()
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not a text file") from exc
    if fmt == "bonds":
        return parse_bonds(text)
    g = parse_json(text) if fmt == "json" else parse_edgelist(text)
    return [("0", g)]
