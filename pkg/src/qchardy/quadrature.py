"""Composite Gauss-Legendre quadrature with geometric grading toward marked angles.

The integrands of interest are smooth away from finitely many boundary angles
where they either blow up like a power |theta - theta0|^(-s) with s < 1, or are
merely sharply peaked (evaluation on a circle of radius r close to 1).  Panels
shrink geometrically toward each marked angle, so every dyadic length scale
between ``scale`` and pi is resolved by a panel of matching width.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}

TWO_PI = 2.0 * np.pi


def gauss_legendre(order):
    """Cached Gauss-Legendre nodes/weights on [-1, 1]."""
    if order not in _GL_CACHE:
        _GL_CACHE[order] = leggauss(order)
    return _GL_CACHE[order]


def wrap_angle(t):
    """Wrap angle(s) to (-pi, pi]."""
    t = np.asarray(t, dtype=float)
    out = np.mod(t + np.pi, TWO_PI) - np.pi
    out = np.where(out == -np.pi, np.pi, out)
    if out.ndim == 0:
        return float(out)
    return out


def _graded_edges(start, end, scale, ratio=2.0):
    """Breakpoints of [start, end] whose widths grow geometrically away from start.

    The innermost panel has width ~scale (never wider than the interval).
    """
    length = end - start
    if length <= 0:
        return np.array([start, end])
    edges = [0.0]
    w = min(scale, length)
    pos = w
    while pos < length:
        edges.append(pos)
        w *= ratio
        pos += w
    edges.append(length)
    return start + np.asarray(edges)


def _panel_sum(fn, edges, order):
    x, w = gauss_legendre(order)
    a = edges[:-1]
    b = edges[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = fn(nodes.ravel()).reshape(nodes.shape)
    return float(np.sum(half[:, None] * w[None, :] * vals))


def integrate_segment(fn, a, b, grade_at=(), scale=1e-10, order=16):
    """Integrate fn over [a, b], grading toward any points of ``grade_at``
    that lie inside or at the ends of the interval.

    Returns (value, error_estimate); the error estimate compares the chosen
    order against half that order on the same panels.
    """
    marks = sorted({a, b} | {g for g in grade_at if a <= g <= b})
    total = 0.0
    total_lo = 0.0
    for left, right in zip(marks[:-1], marks[1:]):
        if right - left <= 0:
            continue
        midpt = 0.5 * (left + right)
        # grade each half toward its own endpoint
        for s, e, anchor in ((left, midpt, left), (midpt, right, right)):
            if anchor == s:
                edges = _graded_edges(s, e, scale)
            else:
                edges = (s + e) - _graded_edges(s, e, scale)[::-1]
            total += _panel_sum(fn, edges, order)
            total_lo += _panel_sum(fn, edges, max(2, order // 2))
    return total, abs(total - total_lo)


def circle_mean(fn, singular_angles=(), scale=1e-10, order=16):
    """(1/2pi) * integral of fn(theta) over the circle, graded at the given angles.

    fn must accept a numpy array of angles.  Returns (value, error_estimate).
    """
    angles = sorted({wrap_angle(t) for t in singular_angles})
    if not angles:
        val, err = integrate_segment(fn, -np.pi, np.pi, grade_at=(0.0,),
                                     scale=np.pi / 16, order=order)
        return val / TWO_PI, err / TWO_PI
    total = 0.0
    toterr = 0.0
    # segments between consecutive singular angles, wrapping once around
    for i, t0 in enumerate(angles):
        t1 = angles[(i + 1) % len(angles)]
        if i == len(angles) - 1:
            t1 += TWO_PI
        def shifted(u, t0=t0):
            return fn(wrap_angle(t0 + u))
        val, err = integrate_segment(shifted, 0.0, t1 - t0,
                                     grade_at=(0.0, t1 - t0), scale=scale,
                                     order=order)
        total += val
        toterr += err
    return total / TWO_PI, toterr / TWO_PI
