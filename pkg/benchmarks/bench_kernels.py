"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own interpreter because the switch
(NETINDUCE_PURE_NUMPY=1) is read at import time.  Usage:

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, time
import numpy as np
from netinduce import backend, net_count, per_vertex_net_counts
from netinduce.graph import random_graph
from netinduce import gridcert

def best_of(fn, repeat):
    fn()  # warm-up (compilation for numba)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

repeat = REPEAT
rng = np.random.default_rng(1)
graphs = {n: random_graph(n, 0.5, rng) for n in (24, 48, 96)}
out = {"backend": backend()}
for n, g in graphs.items():
    out[f"net_count_n{n}"] = best_of(lambda: net_count(g), repeat)
    out[f"per_vertex_n{n}"] = best_of(lambda: per_vertex_net_counts(g), repeat)
out["certify_2000_boxes"] = best_of(lambda: gridcert.certify(budget=2000), repeat)
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["NETINDUCE_PURE_NUMPY"] = "1"
    else:
        env.pop("NETINDUCE_PURE_NUMPY", None)
    res = subprocess.run([sys.executable, "-c", WORKER.replace("REPEAT", str(repeat))],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':24s} {fast['backend']:>12s} {slow['backend']:>12s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:24s} {fast[key]:12.6f} {slow[key]:12.6f} {slow[key] / fast[key]:8.1f}x")


if __name__ == "__main__":
    main()
