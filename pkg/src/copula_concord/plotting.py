"""Figure rendering for the curve-emitting CLI paths.

Matplotlib is imported lazily with the Agg backend so the CLI stays usable
on headless machines and does not pay the import cost unless a figure is
actually requested.
"""

from __future__ import annotations

__all__ = ["plot_range_band", "plot_inverse_curve"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def plot_range_band(kind: str, ms, lows, highs, path: str) -> None:
    """Render the attainable band [lower(m), upper(m)] to ``path``."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.fill_between(ms, lows, highs, alpha=0.25, color="tab:blue", linewidth=0)
    ax.plot(ms, lows, color="tab:blue", label="lower boundary")
    ax.plot(ms, highs, color="tab:red", label="upper boundary")
    ax.axhline(0.0, color="0.6", linewidth=0.8)
    ax.set_xlabel("maximal asymmetry m")
    ax.set_ylabel(kind)
    ax.set_title(f"attainable {kind} values")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_inverse_curve(kind: str, kappas, mus, path: str) -> None:
    """Render the largest compatible asymmetry as a function of the value."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(kappas, mus, color="tab:blue")
    ax.axhline(1.0 / 3.0, color="0.6", linewidth=0.8, linestyle="--")
    ax.set_xlabel(kind)
    ax.set_ylabel("largest compatible asymmetry")
    ax.set_title(f"maximal asymmetry given {kind}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
