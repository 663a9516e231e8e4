"""Render experiment records to figure files next to their CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = [
    "write_lambda_figure",
    "write_histogram_figure",
    "write_bounds_figure",
    "figure_path",
]


def figure_path(csv_path: str) -> str:
    stem = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    return stem + ".png"


def write_lambda_figure(rows: list[dict], path: str) -> None:
    """Burst-ratio bounds and BP threshold against the section count."""
    conv = sorted((r for r in rows if r["variant"] == "conventional"),
                  key=lambda r: int(r["L"]))
    perm = sorted((r for r in rows if r["variant"] == "permuted"),
                  key=lambda r: int(r["L"]))
    ls = [int(r["L"]) for r in conv]

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(ls, [float(r["lambda_upper"]) for r in conv],
            "s--", color="tab:orange", label="conventional upper bound")
    ax.plot(ls, [float(r["lambda_lower"]) for r in perm],
            "^-", color="tab:blue", label="band-split lower bound")
    ax.plot(ls, [float(r["lambda_upper"]) for r in perm],
            "v-", color="tab:cyan", label="band-split upper bound")
    ax.plot(ls, [float(r["theta"]) for r in conv],
            "o:", color="tab:green", label="BP threshold")
    for variant, marker, color in (("conventional", "x", "tab:red"),
                                   ("permuted", "+", "tab:purple")):
        pts = [(int(r["L"]), float(r["measured_lambda"]))
               for r in rows if r["variant"] == variant and r["measurement"] == "ok"]
        if pts:
            ax.plot(*zip(*pts), marker, color=color, markersize=9,
                    linestyle="none", label=f"measured ({variant})")
    ax.set_xlabel("sections L")
    ax.set_ylabel("maximal correctable burst ratio")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_histogram_figure(rows: list[dict], path: str) -> None:
    """Histogram of sampled burst ratios with the band-split value marked."""
    sampled = [float(r["lambda"]) for r in rows if r["kind"] == "random"]
    bsp = [float(r["lambda"]) for r in rows if r["kind"] == "bsp"]

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.hist(sampled, bins=30, color="tab:blue", alpha=0.75,
            label=f"random column permutations ({len(sampled)})")
    if bsp:
        ax.axvline(bsp[0], color="tab:red", linewidth=2,
                   label=f"band splitting permutation ({bsp[0]:.3f})")
    ax.set_xlabel("maximal correctable burst ratio")
    ax.set_ylabel("count")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_bounds_figure(rows: list[dict], path: str) -> None:
    """Measured lifted wmax per sample against its open interval."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 5), sharex=True)
    for ax, prefix, title in ((axes[0], "conv", "conventional"),
                              (axes[1], "bsp", "band split")):
        xs = range(len(rows))
        ax.plot(xs, [int(r[f"{prefix}_wmax"]) for r in rows], "o",
                color="tab:blue", label="measured")
        ax.step(xs, [int(r[f"{prefix}_lower"]) for r in rows], where="mid",
                color="tab:red", label="open bounds")
        ax.step(xs, [int(r[f"{prefix}_upper"]) for r in rows], where="mid",
                color="tab:red")
        fails = [(x, int(r[f"{prefix}_wmax"])) for x, r in zip(xs, rows)
                 if r[f"{prefix}_result"] == "fail"]
        if fails:
            ax.plot(*zip(*fails), "x", color="black", markersize=10, label="violation")
        ax.set_title(title)
        ax.set_xlabel("instance")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    axes[0].set_ylabel("maximal correctable burst length")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
