#!/usr/bin/env python3
"""Render a benchmark CSV as cumulative-time curves, one line per engine.

Usage: plot_bench.py bench.csv [out.png]
"""

import csv
import sys


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    csv_path = sys.argv[1]
    out_path = sys.argv[2] if len(sys.argv) > 2 else "bench.png"

    series: dict[str, tuple[list[int], list[float]]] = {}
    with open(csv_path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            xs, ys = series.setdefault(row["engine"], ([], []))
            xs.append(int(row["op_index"]))
            ys.append(float(row["cumulative_seconds"]))

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    for engine in sorted(series):
        xs, ys = series[engine]
        ax.plot(xs, ys, label=engine)
    ax.set_xlabel("operations")
    ax.set_ylabel("cumulative time (s)")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
