"""Command-line entry point: ``ringclass <subcommand> ...``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 postprocessing did
not converge, 4 pipeline and oracle disagree. Output depends only on the
arguments, so identical invocations give byte-identical results. The default
seed is 0.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .cycles import EdgeCycle
from .fixtures import fixture, fixture_names
from .graph import Graph
from .intersections import NotConverged, build_dual_graph, postprocess_mcb
from .io import FORMATS, ParseError, read_frames
from .oracle import TooLarge
from .pipeline import SCHEMA, ComponentDecomposition, decompose
from .sampler import initial_state, realize, run

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_CONVERGED = 3
EXIT_MISMATCH = 4

U64 = 1 << 64


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < U64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def load_input(source: str, fmt: str | None) -> tuple[list[tuple[str, Graph]], bool]:
    """Frames from a file, or a single frame for a fixture name.

    The flag is True when the input is a bond-frame file.
    """
    path = Path(source)
    if path.is_file():
        return read_frames(path, fmt), fmt == "bonds"
    if fmt in (None, "edgelist"):
        try:
            return [("0", fixture(source))], False
        except KeyError:
            pass
    raise ParseError(f"{source}: no such file or fixture")


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _framed(frames, is_bonds: bool, per_frame) -> dict:
    if is_bonds:
        return {"schema": SCHEMA, "frames": [{"frame": t, **per_frame(g)} for t, g in frames]}
    return {"schema": SCHEMA, **per_frame(frames[0][1])}


def _parent_cycle(comp: ComponentDecomposition, c: EdgeCycle) -> EdgeCycle:
    nodes = comp.component.nodes
    return EdgeCycle.of((nodes[a], nodes[b]) for a, b in c.edges)


def _sample_components(dec, rng: random.Random, steps: int) -> list[list[EdgeCycle]]:
    """One MCB per component in parent node ids; zero steps gives the computed basis."""
    out = []
    for comp in dec.components:
        if steps == 0:
            cycles = comp.basis_cycles()
        else:
            cycles = realize(run(initial_state(comp, rng), steps), comp)
        out.append([_parent_cycle(comp, c) for c in cycles])
    return out


def cmd_decompose(args) -> int:
    frames, bonds = load_input(args.input, args.format)

    def one(g: Graph) -> dict:
        d = decompose(g, args.component, args.workers).to_json()
        d.pop("schema")
        return d

    _write(_dump(_framed(frames, bonds, one)), args.output)
    return EXIT_OK


def cmd_sample(args) -> int:
    frames, bonds = load_input(args.input, args.format)
    rng = random.Random(args.seed)

    def one(g: Graph) -> dict:
        dec = decompose(g, args.component)
        reps = []
        for _ in range(args.replicates):
            comps = _sample_components(dec, rng, args.steps)
            reps.append([[c.circulation() for c in cycles] for cycles in comps])
        return {"seed": args.seed, "steps": args.steps, "nu": dec.nu, "replicates": reps}

    _write(_dump(_framed(frames, bonds, one)), args.output)
    return EXIT_OK


def cmd_dualgraph(args) -> int:
    frames, bonds = load_input(args.input, args.format)
    rng = random.Random(args.seed)
    dots, docs = [], []
    for t, g in frames:
        dec = decompose(g, args.component)
        graphs = []
        for c, cycles in enumerate(_sample_components(dec, rng, args.steps)):
            cycles, iterations = postprocess_mcb(cycles, rng, args.max_iterations)
            dual = build_dual_graph(cycles)
            name = f"dual_f{t}_c{c}" if bonds else f"dual_c{c}"
            dots.append(dual.to_dot(name))
            graphs.append({"component": c, "iterations": iterations, **dual.to_json()})
        docs.append((t, graphs))
    if bonds:
        doc = {"schema": SCHEMA, "frames": [{"frame": t, "components": gs} for t, gs in docs]}
    else:
        doc = {"schema": SCHEMA, "components": docs[0][1]}
    dot = "".join(dots)
    if args.output is None:
        sys.stdout.write(_dump(doc) if args.emit == "json" else dot)
    else:
        base = Path(args.output)
        base.with_suffix(".dot").write_text(dot)
        base.with_suffix(".json").write_text(_dump(doc))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .stats import average_rates, rgg_study

    lines = ["length,rate,source"]
    summary = ["n,seeds,mean_nu,mean_relevant,mean_relevant_per_nu"]
    for n in args.n:
        runs = rgg_study(n, args.mean_degree, range(args.seeds))
        for kind in ("mcb", "relevant"):
            avg = average_rates(getattr(r, f"{kind}_rates") for r in runs)
            avg.source = f"{kind}:n={n}"
            lines += avg.csv_rows()
        ratios = [r.relevant / r.nu for r in runs if r.nu]
        summary.append(
            f"{n},{len(runs)},{sum(r.nu for r in runs) / len(runs):.6g},"
            f"{sum(r.relevant for r in runs) / len(runs):.6g},"
            f"{sum(ratios) / len(ratios) if ratios else 0.0:.6g}"
        )
    _write("\n".join(lines) + "\n", args.output)
    text = "\n".join(summary) + "\n"
    if args.summary:
        Path(args.summary).write_text(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    from .oracle import check_pipeline

    if args.input == "all":
        targets = [(name, fixture(name)) for name in fixture_names()]
    else:
        frames, _ = load_input(args.input, args.format)
        targets = [(args.input if len(frames) == 1 else f"{args.input}:{t}", g) for t, g in frames]
    rows, failed = [], False
    for name, g in targets:
        result = check_pipeline(g, args.max_edges)
        for check, ok in result.items():
            rows.append(f"{name:<24} {check:<15} {'PASS' if ok else 'FAIL'}")
            failed |= not ok
    _write("\n".join(rows) + "\n", args.output)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ringclass", description="Cycle-structure decomposition of undirected graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", help="graph file or fixture name")
            sp.add_argument("--format", choices=FORMATS, default=None, help="input format (default: by suffix)")
            sp.add_argument("--component", choices=("all", "largest"), default="all")
        sp.add_argument("--output", default=None, help="output path (default: stdout)")

    sp = sub.add_parser("decompose", help="families, classes and polyhedra as JSON")
    common(sp)
    sp.add_argument("--workers", type=_positive, default=1)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("sample", help="uniformly random MCBs as node loops")
    common(sp)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--steps", type=_nonneg, default=None, help="chain steps (default: 10 per class)")
    sp.add_argument("--replicates", type=_positive, default=1)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("dualgraph", help="postprocessed MCB as a dual graph (DOT and JSON)")
    common(sp)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--steps", type=_nonneg, default=None)
    sp.add_argument("--max-iterations", type=_positive, default=100)
    sp.add_argument("--emit", choices=("dot", "json"), default="dot", help="stdout format without --output")
    sp.set_defaults(func=cmd_dualgraph)

    sp = sub.add_parser("bench", help="ring-rate study on random geometric graphs (CSV)")
    common(sp, needs_input=False)
    sp.add_argument("model", nargs="?", choices=("rgg",), default="rgg")
    sp.add_argument("--n", type=_positive, nargs="+", default=[100])
    sp.add_argument("--mean-degree", type=float, default=3.0)
    sp.add_argument("--seeds", type=_positive, default=10, help="number of seeds, starting at 0")
    sp.add_argument("--summary", default=None, help="path for the |C_R|/nu table (default: stderr)")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("oracle-check", help="compare the pipeline with brute force")
    common(sp)
    sp.add_argument("--max-edges", type=_positive, default=40)
    sp.set_defaults(func=cmd_oracle_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as exc:
        print(f"error: too large for the oracle: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotConverged as exc:
        print(f"error: postprocessing did not converge: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED


if __name__ == "__main__":
    sys.exit(main())
