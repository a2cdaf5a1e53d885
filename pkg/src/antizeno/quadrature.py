"""Composite Gauss-Legendre rules used by every integral in the package.

Band integrals are always taken in the angle variable ``theta`` defined by
``omega = omega0 + 2*zeta*sin(theta)``; the Jacobian ``2*zeta*cos(theta)``
cancels the inverse square-root edge divergence of the density of states,
leaving smooth integrands on ``[-pi/2, pi/2]``.
"""
from functools import lru_cache

import numpy as np

HALF_PI = 0.5 * np.pi

#: points per panel
PANEL_ORDER = 32


@lru_cache(maxsize=None)
def _legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def composite_rule(edges, order=PANEL_ORDER):
    """Nodes and weights of a composite Gauss-Legendre rule.

    Parameters
    ----------
    edges : array_like
        Strictly increasing panel boundaries.
    order : int
        Number of Gauss points on each panel.

    Returns
    -------
    nodes, weights : ndarray
    """
    edges = np.asarray(edges, dtype=float)
    x, w = _legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x).ravel()
    weights = (half[:, None] * w).ravel()
    return nodes, weights


def uniform_rule(a, b, panels, order=PANEL_ORDER):
    """Composite rule with ``panels`` equal-width panels on ``[a, b]``."""
    return composite_rule(np.linspace(a, b, int(panels) + 1), order)


def graded_edges(a, b, center, width, panels):
    """Panel boundaries on ``[a, b]`` refined geometrically around ``center``.

    ``width`` is the length scale of a sharp feature at ``center``. Panels of
    size ``width`` sit next to it and grow by a factor of two outward, then the
    remainder of the interval is split uniformly into ``panels`` pieces.
    """
    pts = set(np.linspace(a, b, int(panels) + 1).tolist())
    if a < center < b and width > 0:
        pts.add(center)
        step = width
        while step < (b - a):
            for p in (center - step, center + step):
                if a < p < b:
                    pts.add(p)
            step *= 2.0
    return np.array(sorted(pts))
