"""Figures for the size-explosion report."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_family(points: list, path: str) -> None:
    """Shared final size against unfolded size, log scale, one point per n."""
    ns = [p.n for p in points]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [p.final_program_size for p in points], "o-",
            label="final program (with sharing)")
    measured = [(p.n, p.unfold_size) for p in points if isinstance(p.unfold_size, int)]
    if measured:
        ax.plot(*zip(*measured), "s-", label="unfolded result")
    ax.plot(ns, [2 ** n for n in ns], ":", color="grey", label="2^n")
    ax.set_yscale("log", base=2)
    ax.set_xlabel("n")
    ax.set_ylabel("nodes")
    ax.set_title("size explosion: t(n) applied to the identity")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
