"""Figures written next to the CSV outputs."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .experiment import BatchResult, ReportRow, TraceAggregate, best_by_alpha, histogram  # noqa: E402
from .subjective_reward import REPORTED_CATEGORIES, RewardCategory  # noqa: E402

PAIN_COLORS = {"none": "#7f7f7f", "normal": "#1f77b4", "chronic": "#d62728"}
PAIN_LABELS = {"none": "No pain", "normal": "Normal pain", "chronic": "Chronic pain"}
CATEGORY_LABELS = {
    RewardCategory.OBJECTIVE_ONLY: "Obj.",
    RewardCategory.EXPECT_ONLY: "Exp.",
    RewardCategory.COMPARE_ONLY: "Comp.",
    RewardCategory.OBJECTIVE_EXPECT: "Obj.+Exp.",
    RewardCategory.OBJECTIVE_COMPARE: "Obj.+Comp.",
    RewardCategory.EXPECT_COMPARE: "Exp.+Comp.",
    RewardCategory.ALL: "All",
}

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def _save(fig, path: Path) -> Path:
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def plot_report(rows: Sequence[ReportRow], path: Path, title: str = "", ymin: float | None = None) -> Path:
    """Grouped bars of the best mean COR per category and pain model, SD as error bars."""
    pains = ("none", "normal", "chronic")
    cats = [c for c in REPORTED_CATEGORIES if any(r.category is c for r in rows)]
    lookup = {(r.category, r.pain): r for r in rows}
    width = 0.27
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(7.0, 3.2))
        x = np.arange(len(cats))
        for k, pain in enumerate(pains):
            xs, means, sds, stars = [], [], [], []
            for i, cat in enumerate(cats):
                row = lookup.get((cat, pain))
                if row is None:
                    continue
                xs.append(x[i] + (k - 1) * width)
                means.append(row.result.mean)
                sds.append(row.result.sd)
                stars.append(row.significant)
            ax.bar(xs, means, width, yerr=sds, color=PAIN_COLORS[pain], label=PAIN_LABELS[pain],
                   capsize=2, error_kw={"elinewidth": 0.8})
            for xi, m, sd, star in zip(xs, means, sds, stars):
                if star:
                    ax.text(xi, m + sd, "*", ha="center", va="bottom")
        ax.set_xticks(x, [CATEGORY_LABELS[c] for c in cats])
        ax.set_ylabel("Mean COR")
        if ymin is not None:
            ax.set_ylim(bottom=ymin)
        if title:
            ax.set_title(title)
        ax.legend(ncol=3, loc="upper left", bbox_to_anchor=(0, 1.15))
        return _save(fig, path)


def plot_distribution(
    results: Sequence[BatchResult],
    category: RewardCategory,
    path: Path,
    pains: Sequence[str] = ("normal", "chronic"),
    bins: int = 30,
) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.0))
        for pain in pains:
            edges, counts = histogram(results, category, pain, bins)
            if len(counts) == 0:
                continue
            ax.stairs(counts, edges, fill=True, alpha=0.5, color=PAIN_COLORS[pain], label=PAIN_LABELS[pain])
        ax.set_xlabel("Mean COR")
        ax.set_ylabel("Reward functions")
        ax.set_title(CATEGORY_LABELS.get(category, str(category)))
        ax.legend()
        return _save(fig, path)


def plot_alpha_sweep(
    results: Sequence[BatchResult],
    category: RewardCategory,
    path: Path,
    pains: Sequence[str] = ("normal", "chronic"),
) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        for pain in pains:
            best = best_by_alpha(results, category, pain)
            if not best:
                continue
            alphas = list(best)
            ax.plot(alphas, [best[a].mean for a in alphas], marker="o", color=PAIN_COLORS[pain],
                    label=PAIN_LABELS[pain])
        ax.set_xlabel(r"Learning rate $\alpha$")
        ax.set_ylabel("Best mean COR")
        ax.set_title(CATEGORY_LABELS.get(category, str(category)))
        ax.legend()
        return _save(fig, path)


def plot_traces(agg: TraceAggregate, path: Path, title: str = "") -> Path:
    panels = (
        ("objective", "Objective reward"),
        ("fw", "Momentary well-being"),
        ("pain", "Subjective pain"),
        ("cum_fw", "Cumulative well-being"),
    )
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(len(panels), 1, figsize=(6.5, 7.0), sharex=True)
        for ax, (name, label) in zip(axes, panels):
            mean = getattr(agg, f"mean_{name}")
            sd = getattr(agg, f"sd_{name}")
            ax.plot(agg.t, mean, lw=0.8, color="#1f77b4")
            ax.fill_between(agg.t, mean - sd, mean + sd, color="#1f77b4", alpha=0.2, lw=0)
            ax.set_ylabel(label)
        axes[-1].set_xlabel("Time step")
        if title:
            axes[0].set_title(title)
        return _save(fig, path)


def plot_replication(labels: Sequence[str], measured, published, path: Path, title: str = "") -> Path:
    """Measured against published mean COR, one pair of bars per row (means, SDs)."""
    (m_mean, m_sd), (p_mean, p_sd) = measured, published
    x = np.arange(len(labels))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(5.0, 0.45 * len(labels)), 3.2))
        ax.bar(x - 0.2, p_mean, 0.4, yerr=p_sd, color="#bbbbbb", label="Published", capsize=2)
        ax.bar(x + 0.2, m_mean, 0.4, yerr=m_sd, color="#1f77b4", label="Measured", capsize=2)
        ax.set_xticks(x, labels, rotation=60, ha="right")
        ax.set_ylabel("Mean COR")
        if title:
            ax.set_title(title)
        ax.legend()
        return _save(fig, path)
