"""Pure-Python (numpy) fallback for the grid evaluation kernels.

Same contract as the compiled module ``_speedups``: shapes are packed as
(code, a, b, c, d) rows where code 0 is a trapezoid (triangles arrive as
(a, b, b, c)) and code 1 a singleton at ``a``.
"""

from __future__ import annotations

import numpy as np

IMPL = "pure"


def aggregate_grid(shapes, params, strengths, xs):
    """Pointwise max over terms of min(strength, mf(x)) at each grid point."""
    shapes = np.asarray(shapes, dtype=np.int32)
    params = np.asarray(params, dtype=np.float64)
    strengths = np.asarray(strengths, dtype=np.float64)
    xs = np.asarray(xs, dtype=np.float64)
    out = np.zeros_like(xs)
    for i in range(shapes.shape[0]):
        a, b, c, d = params[i]
        if shapes[i] == 1:  # singleton: zero-width, no area on a grid
            deg = np.where(xs == a, 1.0, 0.0)
        else:
            deg = np.ones_like(xs)
            if b > a:
                deg = np.minimum(deg, (xs - a) / (b - a))
            if d > c:
                deg = np.minimum(deg, (d - xs) / (d - c))
            np.clip(deg, 0.0, 1.0, out=deg)
            if b == a:
                deg[xs < a] = 0.0
            if d == c:
                deg[xs > d] = 0.0
        np.maximum(out, np.minimum(deg, strengths[i]), out=out)
    return out


def coa_sums(shapes, params, strengths, lo, hi, n):
    """(sum x*mu, sum mu) over the symmetric midpoint grid of ``n`` samples."""
    h = (hi - lo) / n
    xs = lo + (np.arange(n, dtype=np.float64) + 0.5) * h
    mu = aggregate_grid(shapes, params, strengths, xs)
    return float(np.dot(xs, mu)), float(np.sum(mu))
