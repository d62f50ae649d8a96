"""Figure rendering for the scenario runner (opt-in via --plot)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render"]


def render(scenario: str, plot: dict, outdir: str) -> str:
    """Draw the scenario's summary figure into outdir; returns the file path."""
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, f"{scenario}.png")
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    kind = plot.get("kind")
    if kind == "norm":
        lam = np.asarray(plot["lam"])
        ax.plot(lam, plot["modular"], lw=1.5)
        ax.axhline(1.0, color="k", lw=0.8, ls="--")
        if plot["norm"] > 0:
            ax.axvline(plot["norm"], color="C3", lw=0.8, ls=":",
                       label=f"norm = {plot['norm']:.6g}")
            ax.legend(frameon=False)
        ax.set_xlabel("scale")
        ax.set_ylabel("modular")
        ax.set_xscale("log")
        ax.set_yscale("log")
    elif kind == "decay":
        for curve in plot["curves"]:
            mags = np.asarray(curve["mags"])
            ax.loglog(1 + mags, curve["C"] * (1 + mags) ** -curve["alpha"],
                      label=f"{curve['label']}: slope -{curve['alpha']:.3f}")
        ax.set_xlabel("1 + |xi|")
        ax.set_ylabel("fitted bound")
        ax.legend(frameon=False)
    elif kind == "range":
        for i, item in enumerate(plot["intervals"]):
            hi = item["upper"] if np.isfinite(item["upper"]) else plot["pplus"] * 4
            color = "C2" if item["admissible"] else "C3"
            ax.plot([item["lower"], hi], [i, i], color=color, lw=4, alpha=0.7)
            ax.text(item["lower"], i + 0.15, item["rule"], fontsize=8)
        ax.axvspan(plot["pminus"], plot["pplus"] + 0.02, color="k", alpha=0.15,
                   label="exponent range")
        ax.set_yticks([])
        ax.set_xlabel("exponent")
        ax.legend(frameon=False)
    elif kind == "ratio-vs-j":
        js = np.asarray(plot["js"], dtype=float)
        vals = np.asarray(plot["values"], dtype=float)
        ax.semilogy(js, np.maximum(vals, 1e-300), "o-", lw=1.2)
        anchor = max(vals[0], 1e-300)
        ax.semilogy(js, anchor * 2.0 ** (plot["slope"] * (js - js[0])), "--",
                    label=f"fitted slope {plot['slope']:.3f}")
        ax.set_xlabel("band index j")
        ax.set_ylabel(plot["ylabel"])
        ax.legend(frameon=False)
    elif kind == "maximal-ratio":
        ws = [p[0] for p in plot["points"]]
        rs = [p[1] for p in plot["points"]]
        ax.plot(ws, rs, "o-")
        ax.set_xlabel("profile width")
        ax.set_ylabel("norm ratio")
    elif kind == "verify":
        names = [b[0] for b in plot["bars"]]
        vals = [1.0 if b[1] else 0.0 for b in plot["bars"]]
        colors = ["C2" if b[1] else "C3" for b in plot["bars"]]
        ax.barh(range(len(names)), vals, color=colors)
        ax.set_yticks(range(len(names)), names, fontsize=7)
        ax.set_xticks([])
        ax.set_xlim(0, 1.2)
    else:  # pragma: no cover - defensive
        ax.text(0.5, 0.5, "no figure for this scenario", ha="center")
    ax.set_title(scenario)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
