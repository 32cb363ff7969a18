"""SVG pictures of section polygons on the lattice M = Z^2."""
from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from scipy.spatial import ConvexHull  # noqa: E402

from divisors.polytope import QPolytope  # noqa: E402
from lattice.errors import DimensionUnsupported  # noqa: E402

logger = logging.getLogger(__name__)

plt.rcParams.update({
    "figure.dpi": 150,
    "font.size": 9,
})


def _outline(P: QPolytope) -> np.ndarray:
    """Vertices in drawing order; exact polytopes only need qhull for the ordering."""
    pts = np.array([[float(x) for x in v] for v in P.vertices])
    if P.dim < 2:
        return pts
    hull = ConvexHull(pts)
    return pts[hull.vertices]


def save(fig, path: Path):
    fig.tight_layout()
    fig.savefig(path, format="svg", bbox_inches="tight")
    logger.info("wrote %s", path)


def render_polygons(polygons: Sequence[tuple[str, QPolytope | None]], path: str | Path,
                    title: str = "") -> Path:
    """Draws labelled polygons over the lattice points of their bounding box.

    Empty polytopes are listed in the legend only.

    Raises:
        DimensionUnsupported: If a polytope does not live in M_Q = Q^2.
    """
    path = Path(path)
    fig, ax = plt.subplots()
    lo, hi = [0, 0], [0, 0]
    for k, (label, P) in enumerate(polygons):
        colour = f"C{k % 10}"
        if P is None:
            ax.plot([], [], color=colour, label=f"{label} (empty)")
            continue
        if P.ambient != 2:
            raise DimensionUnsupported(P.ambient)
        outline = _outline(P)
        closed = np.vstack([outline, outline[:1]])
        if P.dim == 2:
            ax.fill(outline[:, 0], outline[:, 1], color=colour, alpha=0.2)
        ax.plot(closed[:, 0], closed[:, 1], "-o", color=colour, markersize=3, label=label)
        for r in range(2):
            lo[r] = min(lo[r], math.floor(outline[:, r].min()))
            hi[r] = max(hi[r], math.ceil(outline[:, r].max()))
    xs, ys = np.meshgrid(np.arange(lo[0] - 1, hi[0] + 2), np.arange(lo[1] - 1, hi[1] + 2))
    ax.scatter(xs.ravel(), ys.ravel(), s=4, color="k", zorder=0)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right")
    save(fig, path)
    plt.close(fig)
    return path
