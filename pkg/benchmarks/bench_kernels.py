"""Edge-rooted family search (the BFS kernel) with and without numba.

Each mode runs in a fresh interpreter, because the JIT switch is read at
import time. The first numba call is timed separately so compilation does
not count against the kernel.

    python benchmarks/bench_kernels.py --n 2000 10000 --repeats 3
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from ringclass._accel import JIT_ENABLED
from ringclass.graph import biconnected_components, spanning_forest
from ringclass.stats import RggSpec, generate_rgg
from ringclass.vfamilies import compute_vfamilies

n, degree, seed, repeats = int(sys.argv[1]), float(sys.argv[2]), int(sys.argv[3]), int(sys.argv[4])
g = generate_rgg(RggSpec(n, degree, seed))
comps = [(c.graph, spanning_forest(c.graph)) for c in biconnected_components(g) if not c.is_bridge]

def once():
    t = time.perf_counter()
    total = sum(len(compute_vfamilies(cg, f)[0]) for cg, f in comps)
    return time.perf_counter() - t, total

warm, families = once()
times = [once()[0] for _ in range(repeats)]
print(json.dumps({"jit": JIT_ENABLED, "first": warm, "best": min(times), "families": families,
                  "nu": sum(f.nu for _, f in comps)}))
"""


def run(mode_env, n, degree, seed, repeats):
    env = dict(os.environ, **mode_env)
    out = subprocess.run(
        [sys.executable, "-c", CHILD, str(n), str(degree), str(seed), str(repeats)],
        env=env, check=True, capture_output=True, text=True,
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[1000, 3000])
    ap.add_argument("--mean-degree", type=float, default=3.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"{'n':>7} {'nu':>7} {'families':>9} {'numba s':>9} {'python s':>9} {'speedup':>8}")
    for n in args.n:
        fast = run({"RINGCLASS_DISABLE_JIT": "0"}, n, args.mean_degree, args.seed, args.repeats)
        slow = run({"RINGCLASS_DISABLE_JIT": "1"}, n, args.mean_degree, args.seed, args.repeats)
        assert fast["families"] == slow["families"]
        print(
            f"{n:>7} {fast['nu']:>7} {fast['families']:>9} {fast['best']:>9.3f} "
            f"{slow['best']:>9.3f} {slow['best'] / fast['best']:>7.1f}x"
        )


if __name__ == "__main__":
    main()
