"""Figures for campaign summaries and the sharpness table, written as PNG files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import STATUSES, SharpnessRow, Summary  # noqa: E402

_COLORS = {
    "consistent": "#4c72b0",
    "counterexample": "#c44e52",
    "exception-family": "#dd8452",
    "skipped-budget": "#8c8c8c",
}


def plot_campaign(summary: Summary, out_dir: str | Path) -> Path:
    """Stacked bars of record statuses per order, log-scaled."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    orders = sorted(summary.per_n, key=int)
    fig, ax = plt.subplots(figsize=(7, 4))
    bottom = [0] * len(orders)
    for status in STATUSES:
        vals = [summary.per_n[n][status] for n in orders]
        if not any(vals):
            continue
        ax.bar(orders, vals, bottom=bottom, label=status, color=_COLORS[status])
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_yscale("log")
    ax.set_xlabel("order n" if orders != ["0"] else "source file")
    ax.set_ylabel("graphs")
    ax.set_title(f"{summary.campaign}: {summary.verdict}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = out / f"{summary.campaign}-statuses.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_sharpness(rows: list[SharpnessRow], out_dir: str | Path) -> Path:
    """Order against connectivity for both joins, with the order threshold 3k+3."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ks = sorted({r.kappa for r in rows})
    ax.plot(ks, [3 * k + 3 for k in ks], "k--", label="n = 3k+3")
    for kind, marker in (("sharpness", "o"), ("alpha-sharpness", "s")):
        sel = [r for r in rows if r.kind == kind]
        ax.scatter(
            [r.kappa for r in sel],
            [r.n for r in sel],
            marker=marker,
            c=["#4c72b0" if r.ok else "#c44e52" for r in sel],
            label=kind,
        )
    ax.set_xlabel("connectivity k")
    ax.set_ylabel("order n")
    ax.set_xticks(ks)
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = out / "sharpness.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
