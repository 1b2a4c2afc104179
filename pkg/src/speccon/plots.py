"""Figure rendering for bench results; writes image files, never a window."""

from __future__ import annotations

import os
from collections import defaultdict

from .bench import BenchRow


def render_bench_plots(rows: list[BenchRow], out_dir: str) -> list[str]:
    """Render summary figures into out_dir; returns the written paths.

    Two figures: median wall time versus n per solver, and the fraction of
    connectable cases versus n.  Non-numeric outcomes (timeout, refused,
    error) are excluded from the timing medians; timeouts count as their
    own series in neither figure.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    written: list[str] = []

    # solver -> n -> list of millis
    timing: dict[str, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    # n -> [connectable count, decided count]
    rate: dict[int, list[int]] = defaultdict(lambda: [0, 0])
    for row in rows:
        if row.connectable in ("true", "false"):
            timing[row.solver][row.n].append(float(row.millis))
            rate[row.n][1] += 1
            if row.connectable == "true":
                rate[row.n][0] += 1

    def median(values: list[float]) -> float:
        ordered = sorted(values)
        mid = len(ordered) // 2
        if len(ordered) % 2:
            return ordered[mid]
        return (ordered[mid - 1] + ordered[mid]) / 2.0

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for solver in sorted(timing):
        xs = sorted(timing[solver])
        ys = [median(timing[solver][x]) for x in xs]
        ax.plot(xs, ys, marker="o", label=solver)
    ax.set_xlabel("users (n)")
    ax.set_ylabel("median wall time (ms)")
    ax.set_yscale("log")
    ax.set_title("Solver runtime by instance size")
    if timing:
        ax.legend()
    fig.tight_layout()
    path = os.path.join(out_dir, "runtime_vs_n.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = sorted(rate)
    ys = [rate[x][0] / rate[x][1] if rate[x][1] else 0.0 for x in xs]
    ax.plot(xs, ys, marker="s", color="tab:green")
    ax.set_xlabel("users (n)")
    ax.set_ylabel("fraction connectable")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title("Connectable rate by instance size")
    fig.tight_layout()
    path = os.path.join(out_dir, "connectable_rate.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    return written
