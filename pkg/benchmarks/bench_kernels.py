"""Compare the numba and numpy backends of the cell kernels.

Each backend runs in its own interpreter since the choice is made at import
time through HOMCYL_BACKEND.  Timings exclude the first (compiling) call.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    ("Hom(K2, K6)", "complete_graph(2)", "complete_graph(6)"),
    ("Hom(C5, K4)", "cycle_graph(5)", "complete_graph(4)"),
    ("Hom(K2, D2 of complete-pair 6,5)", "complete_graph(2)", "double_mapping_cylinder(complete_pair_spec(6, 5, 2)).d"),
]


def worker(repeat):
    from homcyl._accel import BACKEND
    from homcyl.catalog import complete_pair_spec
    from homcyl.complexes import hom_complex, order_complex
    from homcyl.cylinder import double_mapping_cylinder
    from homcyl.graphs import complete_graph, cycle_graph

    scope = dict(complete_graph=complete_graph, cycle_graph=cycle_graph,
                 double_mapping_cylinder=double_mapping_cylinder, complete_pair_spec=complete_pair_spec)
    rows = []
    for name, t_expr, g_expr in CASES:
        T, G = eval(t_expr, scope), eval(g_expr, scope)

        def once():
            P = hom_complex(T, G)
            P.face_lists()
            return P, order_complex(P, cap=5_000_000)

        P, K = once()  # warm-up, includes JIT compilation
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            once()
            times.append(time.perf_counter() - t0)
        times.sort()
        rows.append({"case": name, "cells": P.num_cells, "simplices": K.num_simplices(), "median": times[len(times) // 2]})
    print(json.dumps({"backend": BACKEND, "rows": rows}))


def run_backend(backend, repeat):
    env = dict(os.environ, HOMCYL_BACKEND=backend)
    out = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return
    fast = run_backend("numba", args.repeat)
    slow = run_backend("numpy", args.repeat)
    print(f"{'case':36s} {'cells':>8s} {'simplices':>10s} {'numba':>9s} {'numpy':>9s} {'speedup':>8s}")
    for a, b in zip(fast["rows"], slow["rows"]):
        assert (a["cells"], a["simplices"]) == (b["cells"], b["simplices"]), "backends disagree"
        ratio = b["median"] / a["median"] if a["median"] else float("inf")
        print(f"{a['case']:36s} {a['cells']:8d} {a['simplices']:10d} {a['median']:8.3f}s {b['median']:8.3f}s {ratio:7.1f}x")
    if fast["backend"] != "numba":
        print("note: numba is not importable, both columns used the numpy path")


if __name__ == "__main__":
    main()
