"""Optional PNG rendering of the CSV sweep data.

Import cost is deferred: matplotlib is only pulled in when a render
function is called, and the Agg backend keeps everything headless.
"""

from __future__ import annotations

from collections.abc import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_ellipse(
    beta1: Sequence[float],
    beta2: Sequence[float],
    path,
    marked: Sequence[tuple[float, float]] = (),
) -> None:
    """Draw the constraint ellipse in the (beta1, beta2) plane to a PNG."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.plot(beta1, beta2, lw=1.2, color="tab:blue")
    if marked:
        mx = [p[0] for p in marked]
        my = [p[1] for p in marked]
        ax.plot(mx, my, "o", ms=6, color="tab:red", zorder=3)
    ax.set_xlabel(r"$\beta_1$")
    ax.set_ylabel(r"$\beta_2$")
    ax.set_title("spectra with fixed purity 7/18")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sweep(
    t: Sequence[float],
    moving: Sequence[float],
    reference: Sequence[float],
    path,
    equal_t: Sequence[float] = (),
) -> None:
    """Draw both measure curves over the sweep angle, with crossings marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(t, moving, lw=1.2, color="tab:red", label="swept spectrum")
    ax.plot(t, reference, lw=1.2, ls="--", color="tab:blue", label="reference spectrum")
    for i, tc in enumerate(equal_t):
        ax.axvline(tc, color="0.6", lw=0.8, ls=":", zorder=0,
                   label="equality" if i == 0 else None)
    ax.set_xlabel("t")
    ax.set_ylabel("measure value")
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
