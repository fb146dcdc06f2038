"""Rendering of the thermodynamic-curve figure.

One solid curve per inverse temperature in the (<N>, <H>) plane plus the
two dashed boundary rays of the attainable wedge.  Output is written as a
self-contained SVG (text stroked as paths, no external fonts or scripts).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .thermo import RangeBoundary, SweepPoint, numerical_range_boundary

matplotlib.rcParams["svg.fonttype"] = "path"


def render_figure(
    rows: list[SweepPoint],
    spec,
    path: str,
    boundary: RangeBoundary | None = None,
) -> None:
    """Draw the sweep curves and wedge boundary and save to ``path``.

    The boundary rays are truncated to 1.1 times the largest plotted
    occupation so every curve fits the viewport.
    """
    if not rows:
        raise ValueError("no sweep points to plot")
    betas = sorted({row.beta for row in rows})
    n_top = max(row.number for row in rows)
    if boundary is None:
        boundary = numerical_range_boundary(spec, t_max=max(n_top * 1.1, 1e-6), samples=64)

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for beta in betas:
        curve = [(row.number, row.energy) for row in rows if row.beta == beta]
        curve.sort()
        xs = [c[0] for c in curve]
        ys = [c[1] for c in curve]
        ax.plot(xs, ys, lw=1.4, label=rf"$\beta = {beta:g}$")
    for ray in (boundary.lower, boundary.upper):
        ax.plot(ray[:, 0], ray[:, 1], "k--", lw=1.0)
    ax.set_xlabel(r"$\langle \hat{N} \rangle$")
    ax.set_ylabel(r"$\langle H \rangle$")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
