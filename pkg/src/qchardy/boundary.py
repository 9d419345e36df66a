"""Monotone boundary homeomorphisms of the circle and their estimators.

A circle homeomorphism is represented by its angle map alpha: [-pi, pi] ->
[-pi, pi], strictly increasing with alpha(+-pi) = +-pi, acting as
phi(e^{it}) = e^{i alpha(t)}.  The catalog holds the identity, the
square-root map alpha(t) = sign(t) sqrt(pi |t|), its power-law family, and
boundary actions of disc Moebius transforms with a real parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import wrap_angle

_MONOTONE_GRID = 512


class BoundaryHomeo:
    """Strictly increasing angle homeomorphism of [-pi, pi] fixing the endpoints.

    ``forward`` and (optionally) ``inverse`` must be numpy-vectorized.  When no
    closed-form inverse is supplied, the inverse falls back to bisection, which
    monotonicity makes reliable to 1e-12.
    """

    def __init__(self, forward, inverse=None, derivative=None, cusps=(),
                 label="custom", check=True):
        self.forward = forward
        self._inverse = inverse
        self.derivative = derivative
        self.cusps = tuple(float(c) for c in cusps)
        self.label = label
        if check:
            self._validate()

    def _validate(self):
        t = np.linspace(-np.pi, np.pi, _MONOTONE_GRID)
        a = self.forward(t)
        if np.any(np.diff(a) <= 0):
            raise ValueError(f"{self.label}: angle map is not strictly increasing")
        if abs(a[0] + np.pi) > 1e-12 or abs(a[-1] - np.pi) > 1e-12:
            raise ValueError(f"{self.label}: angle map must fix -pi and pi")

    def __call__(self, t):
        return self.forward(np.asarray(t, dtype=float))

    def inverse(self, s):
        s = np.asarray(s, dtype=float)
        if self._inverse is not None:
            return self._inverse(s)
        return self._bisect(s)

    def _bisect(self, s, tol=1e-12):
        lo = np.full(s.shape if s.ndim else (1,), -np.pi)
        hi = np.full_like(lo, np.pi)
        target = np.atleast_1d(s)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            high = self.forward(mid) > target
            hi = np.where(high, mid, hi)
            lo = np.where(high, lo, mid)
            if np.max(hi - lo) < tol:
                break
        out = 0.5 * (lo + hi)
        if s.ndim == 0:
            return float(out[0])
        return out

    def lifted(self, t):
        """Periodic lift to the real line: alpha(t + 2 pi) = alpha(t) + 2 pi."""
        t = np.asarray(t, dtype=float)
        k = np.round(t / (2 * np.pi))
        return self.forward(t - 2 * np.pi * k) + 2 * np.pi * k

    def map_point(self, t):
        """Boundary image e^{i alpha(t)} of the point e^{it}."""
        return np.exp(1j * self(t))


@dataclass(frozen=True)
class MapCatalogEntry:
    """Named boundary map: identity, thm2_sqrt, power (gamma > 0), or
    moebius (real a, |a| < 1)."""

    name: str
    parameters: tuple = ()

    def __post_init__(self):
        if self.name not in ("identity", "thm2_sqrt", "power", "moebius"):
            raise ValueError(f"unknown catalog map {self.name!r}")
        object.__setattr__(self, "parameters",
                           tuple(float(p) for p in self.parameters))


def identity_homeo():
    return BoundaryHomeo(lambda t: np.asarray(t, dtype=float),
                         inverse=lambda s: np.asarray(s, dtype=float),
                         derivative=lambda t: np.ones_like(np.asarray(t, float)),
                         label="identity")


def power_homeo(gamma):
    """alpha(t) = sign(t) * pi * (|t|/pi)**gamma; gamma = 1/2 is the
    square-root map sign(t) sqrt(pi |t|)."""
    gamma = float(gamma)
    if gamma <= 0:
        raise ValueError("power map needs gamma > 0")

    def fwd(t, g=gamma):
        t = np.asarray(t, dtype=float)
        return np.sign(t) * np.pi * (np.abs(t) / np.pi) ** g

    def inv(s, g=1.0 / gamma):
        s = np.asarray(s, dtype=float)
        return np.sign(s) * np.pi * (np.abs(s) / np.pi) ** g

    def deriv(t, g=gamma):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return g * (np.abs(t) / np.pi) ** (g - 1.0)

    cusps = () if gamma == 1.0 else (0.0,)
    return BoundaryHomeo(fwd, inverse=inv, derivative=deriv, cusps=cusps,
                         label=f"power({gamma:g})")


def sqrt_homeo():
    h = power_homeo(0.5)
    h.label = "thm2_sqrt"
    return h


def moebius_homeo(a):
    """Boundary action of the disc automorphism z -> (z - a)/(1 - a z), a real.

    alpha(t) = t + 2*atan2(a sin t, 1 - a cos t), which fixes +-pi exactly.
    """
    a = float(a)
    if abs(a) >= 1:
        raise ValueError("moebius parameter must satisfy |a| < 1")

    def fwd(t, a=a):
        t = np.asarray(t, dtype=float)
        return t + 2.0 * np.arctan2(a * np.sin(t), 1.0 - a * np.cos(t))

    def inv(s, a=-a):
        s = np.asarray(s, dtype=float)
        return s + 2.0 * np.arctan2(a * np.sin(s), 1.0 - a * np.cos(s))

    def deriv(t, a=a):
        t = np.asarray(t, dtype=float)
        return (1.0 - a * a) / (1.0 - 2.0 * a * np.cos(t) + a * a)

    return BoundaryHomeo(fwd, inverse=inv, derivative=deriv,
                         label=f"moebius({a:g})")


def make_map(entry):
    """Build the BoundaryHomeo for a catalog entry."""
    if isinstance(entry, str):
        entry = parse_map_spec(entry)
    if entry.name == "identity":
        return identity_homeo()
    if entry.name == "thm2_sqrt":
        return sqrt_homeo()
    if entry.name == "power":
        if len(entry.parameters) != 1:
            raise ValueError("power map takes exactly one parameter gamma")
        return power_homeo(entry.parameters[0])
    if entry.name == "moebius":
        if len(entry.parameters) != 1:
            raise ValueError("moebius map takes exactly one parameter a")
        return moebius_homeo(entry.parameters[0])
    raise ValueError(f"unknown catalog map {entry.name!r}")


def parse_map_spec(spec):
    """Parse 'name' or 'name:p1,p2' into a MapCatalogEntry."""
    name, _, params = spec.partition(":")
    if params:
        return MapCatalogEntry(name, tuple(float(p) for p in params.split(",")))
    return MapCatalogEntry(name)


def dyadic_edges(depth):
    """Edges of the dyadic arcs at the given depth: [-pi, pi] split into
    2**(depth+1) equal arcs of length pi * 2**(-depth)."""
    return np.linspace(-np.pi, np.pi, 2 ** (depth + 1) + 1)


def _dyadic_sup_inverse(inverse, depth):
    edges = dyadic_edges(depth)
    pre = inverse(edges)
    width = np.pi * 2.0 ** (-depth)
    return float(np.max(np.diff(pre)) / width)


def lipschitz_modulus_inverse(h, dyadic_depth):
    """Per-depth sup of |h^{-1}(I)| / |I| over dyadic arcs, depths 1..dyadic_depth."""
    if dyadic_depth < 1:
        raise ValueError("dyadic_depth must be >= 1")
    return [_dyadic_sup_inverse(h.inverse, d) for d in range(1, dyadic_depth + 1)]


def is_lipschitz_inverse(moduli, growth_tol=1.05):
    """Classify the per-depth moduli as stabilized (Lipschitz) or growing.

    Stabilized means the growth ratio of successive depths stays below
    ``growth_tol`` over the last 3 depth steps.
    """
    if len(moduli) < 4:
        raise ValueError("need at least 4 depths to classify")
    tail = np.asarray(moduli[-4:])
    ratios = tail[1:] / tail[:-1]
    return bool(np.all(ratios < growth_tol))


def quasisymmetry_modulus(h, dyadic_depth):
    """Sup over depths <= dyadic_depth and adjacent equal-length dyadic arcs
    I, I' of |h(I)| / |h(I')|."""
    if dyadic_depth < 1:
        raise ValueError("dyadic_depth must be >= 1")
    worst = 1.0
    for d in range(1, dyadic_depth + 1):
        edges = dyadic_edges(d)
        lengths = np.diff(h(edges))
        ratio = lengths / np.roll(lengths, 1)
        worst = max(worst, float(np.max(ratio)), float(np.max(1.0 / ratio)))
    return worst
