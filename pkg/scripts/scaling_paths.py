#!/usr/bin/env python3
"""Wall-time scaling of the fast variant on paths of doubling length.

The decision threshold stays fixed across sizes so runs differ only in n;
per-bag work is then bounded by a function of the width and threshold alone
and total time should grow linearly.  Prints CSV plus per-doubling ratios.
"""
import argparse
import csv
import io
import sys
import time

sys.path.insert(0, "src")

from tdsolve.generators import path_graph
from tdsolve.solvers import SolverConfig, solve_fast


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("-t", type=int, default=10, help="fixed decision threshold")
    ap.add_argument("--repeats", type=int, default=1)
    ap.add_argument("--out", help="CSV output path (default stdout)")
    args = ap.parse_args()

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "t", "answer", "peak_table_size", "wall_time_s"])
    times = {}
    for n in args.sizes:
        g = path_graph(n)
        best = None
        for _ in range(args.repeats):
            started = time.perf_counter()
            out = solve_fast(g, args.t, config=SolverConfig(decide_only=True))
            elapsed = time.perf_counter() - started
            best = elapsed if best is None else min(best, elapsed)
        times[n] = best
        writer.writerow(
            [n, args.t, "yes" if out.answer else "no",
             out.report.peak_table_size, f"{best:.3f}"]
        )
        print(f"n={n:5d}  {best:7.2f}s  peak={out.report.peak_table_size}",
              file=sys.stderr)
    sizes = sorted(times)
    for a, b in zip(sizes, sizes[1:]):
        if b == 2 * a:
            print(f"ratio {a}->{b}: {times[b] / times[a]:.2f}", file=sys.stderr)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
