"""Compare the compiled kernels against the pure-numpy fallback.

Runs the two hot workloads — group closure and coordinate-vector reduction —
on the (2, 3, 5) family instance, first with whatever backend the normal
import picks, then in a subprocess with YBRACE_PURE=1.

Usage: python3 benchmarks/bench_closure.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def run_workload(repeat):
    import numpy as np

    from ybrace import kernels
    from ybrace.family import construct
    from ybrace.gbrace import diagonal_table

    S = construct([2, 3, 5])
    gens = np.array([p.images for p in {s: None for s in S.sigma}], dtype=np.int32)

    best_closure = min(
        _timed(kernels.bfs_closure, gens, 2**21)[0] for _ in range(repeat)
    )
    elements = kernels.bfs_closure(gens, 2**21)[0]

    rng = np.random.default_rng(0)
    vecs = rng.integers(-3, 4, size=(2000, S.n)).astype(np.int64)
    diag = diagonal_table(S)
    best_reduce = min(
        _timed(kernels.reduce_vectors, S.smat.astype(np.int32),
               S.sinv.astype(np.int32), diag, vecs)[0]
        for _ in range(repeat)
    )
    return {
        "backend": kernels.BACKEND,
        "group_order": int(elements.shape[0]) if hasattr(elements, "shape")
        else len(elements),
        "closure_seconds": best_closure,
        "reduce_2000_vectors_seconds": best_reduce,
    }


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - start, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    args = ap.parse_args()

    if os.environ.get("YBRACE_BENCH_CHILD") == "1":
        print(json.dumps(run_workload(args.repeat)))
        return

    results = [run_workload(args.repeat)]
    env = dict(os.environ, YBRACE_PURE="1", YBRACE_BENCH_CHILD="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--repeat", str(args.repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    results.append(json.loads(child.stdout.strip().splitlines()[-1]))

    if args.json:
        print(json.dumps(results, indent=2))
        return
    for r in results:
        print(f"backend={r['backend']:<8} group_order={r['group_order']} "
              f"closure={r['closure_seconds']:.3f}s "
              f"reduce(2000 vecs)={r['reduce_2000_vectors_seconds']:.3f}s")
    if results[0]["backend"] != results[1]["backend"]:
        speedup = results[1]["closure_seconds"] / results[0]["closure_seconds"]
        print(f"closure speedup: {speedup:.1f}x")


if __name__ == "__main__":
    main()
