"""Monitored-metric sweep: CSV tables plus rendered figures.

Three experiments, none of which is a hard contract elsewhere:
compiled-depth ratios against the 6 * rt-bound regression threshold,
partition runtime scaling against the cubic claim, and partition set-size
quality relative to the topology's routing bound. Wall-clock timings in the
scaling table vary run to run; everything else is seed-deterministic.
"""

from __future__ import annotations

import csv
import math
import time
from pathlib import Path
from random import Random

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .circuits import depth, random_layered_circuit
from .compiler import compile_matching, compile_partition
from .partition import partition
from .perms import Permutation
from .topologies import TopologySpec, build, rt_upper_bound

_TOPOLOGIES = (
    ("path", dict(n=16)),
    ("grid", dict(n1=4, n2=4)),
    ("star", dict(n=16)),
    ("random_tree", dict(n=16, seed=11)),
)


def _depth_ratio_rows(seed: int, trials: int = 10) -> list[dict]:
    rows = []
    for kind, params in _TOPOLOGIES:
        spec = TopologySpec.make(kind, **params)
        g = build(spec)
        bound = rt_upper_bound(spec)
        fams = partition(g)
        rng = Random(seed)
        for trial in range(trials):
            c = random_layered_circuit(g.n, 20, rng)
            d0 = depth(c)
            for strategy, result in (
                ("matching", compile_matching(c, g)),
                ("partition", compile_partition(c, g, fams)),
            ):
                d1 = depth(result.circuit)
                rows.append(
                    {
                        "topology": kind,
                        "strategy": strategy,
                        "trial": trial,
                        "original_depth": d0,
                        "compiled_depth": d1,
                        "ratio": round(d1 / d0, 4),
                        "threshold": 6 * bound,
                    }
                )
    return rows


def _partition_scaling_rows(seed: int) -> list[dict]:
    rows = []
    for n in (32, 64, 128, 256):
        g = build(TopologySpec.make("random_tree", n=n, seed=seed + n))
        timings = []
        for _ in range(3):
            t0 = time.perf_counter()
            partition(g)
            timings.append(time.perf_counter() - t0)
        rows.append({"n": n, "seconds": f"{sorted(timings)[1]:.6f}"})
    return rows


def _loglog_slope(rows: list[dict]) -> float:
    xs = [math.log(int(r["n"])) for r in rows]
    ys = [math.log(float(r["seconds"])) for r in rows]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den = sum((x - mean_x) ** 2 for x in xs)
    return num / den


def _partition_quality_rows(seed: int) -> list[dict]:
    rows = []
    specs = [
        TopologySpec.make("path", n=32),
        TopologySpec.make("grid", n1=4, n2=8),
        TopologySpec.make("star", n=32),
        TopologySpec.make("random_tree", n=32, seed=seed + 1),
    ]
    for spec in specs:
        g = build(spec)
        fams = partition(g)
        largest = max((len(s) for s in fams.wprime_sets), default=0)
        bound = rt_upper_bound(spec)
        rows.append(
            {
                "topology": spec.kind,
                "largest_wprime": largest,
                "certificate_plus_one": fams.size_certificate + 1,
                "rt_upper": bound,
                "size_over_rt": round(largest / bound, 4) if bound else "",
            }
        )
    return rows


def _write_csv(path: Path, rows: list[dict]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def _plot_depth_ratios(rows: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    topologies = sorted({r["topology"] for r in rows})
    markers = {"matching": "o", "partition": "s"}
    for strategy in ("matching", "partition"):
        xs, ys = [], []
        for i, topo in enumerate(topologies):
            for r in rows:
                if r["topology"] == topo and r["strategy"] == strategy:
                    xs.append(i + (0.12 if strategy == "partition" else -0.12))
                    ys.append(r["ratio"])
        ax.scatter(xs, ys, marker=markers[strategy], s=18, alpha=0.7, label=strategy)
    for i, topo in enumerate(topologies):
        threshold = next(r["threshold"] for r in rows if r["topology"] == topo)
        ax.hlines(threshold, i - 0.3, i + 0.3, colors="red", linestyles="dashed",
                  label="6*rt bound" if i == 0 else None)
    ax.set_xticks(range(len(topologies)))
    ax.set_xticklabels(topologies)
    ax.set_ylabel("compiled depth / original depth")
    ax.set_yscale("log")
    ax.set_title("Depth overhead vs monitored threshold")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _plot_partition_scaling(rows: list[dict], slope: float, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [int(r["n"]) for r in rows]
    ys = [float(r["seconds"]) for r in rows]
    ax.loglog(xs, ys, "o-", label=f"measured (slope {slope:.2f})")
    anchor = ys[0] / xs[0] ** 3
    ax.loglog(xs, [anchor * x**3 for x in xs], "--", label="cubic reference")
    ax.set_xlabel("n")
    ax.set_ylabel("partition runtime (s)")
    ax.set_title("Partition runtime scaling")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def run_report(out_dir: str, seed: int = 0) -> list[str]:
    """Write depth_ratios/partition_scaling/partition_quality CSVs + figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    produced = []

    ratio_rows = _depth_ratio_rows(seed)
    _write_csv(out / "depth_ratios.csv", ratio_rows)
    _plot_depth_ratios(ratio_rows, out / "depth_ratios.png")
    produced += ["depth_ratios.csv", "depth_ratios.png"]

    scaling_rows = _partition_scaling_rows(seed)
    slope = _loglog_slope(scaling_rows)
    for r in scaling_rows:
        r["loglog_slope"] = f"{slope:.3f}"
    _write_csv(out / "partition_scaling.csv", scaling_rows)
    _plot_partition_scaling(scaling_rows, slope, out / "partition_scaling.png")
    produced += ["partition_scaling.csv", "partition_scaling.png"]

    quality_rows = _partition_quality_rows(seed)
    _write_csv(out / "partition_quality.csv", quality_rows)
    produced.append("partition_quality.csv")

    return [str(out / name) for name in produced]
