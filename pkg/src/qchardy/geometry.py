"""Geometric primitives of the unit disc: cones, arcs, Carleson squares,
hyperbolic balls, and samplers over them.

Angles are normalized to (-pi, pi].  Arcs are stored as center + half-width so
arcs crossing the branch cut need no special casing by callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quadrature import TWO_PI, wrap_angle


@dataclass(frozen=True)
class Cone:
    """Non-tangential approach region {z : |z - vertex| < aperture * (1 - |z|)}."""

    vertex: complex
    aperture: float = 2.0

    def __post_init__(self):
        if not self.aperture > 1.0:
            raise ValueError("cone aperture must be > 1")
        if abs(abs(self.vertex) - 1.0) > 1e-12:
            raise ValueError("cone vertex must lie on the unit circle")


def cone_contains(cone, z):
    """True iff z lies in the open cone.  Rejects points outside the open disc."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("cone_contains requires |z| < 1")
    inside = np.abs(z - cone.vertex) < cone.aperture * (1.0 - np.abs(z))
    if inside.ndim == 0:
        return bool(inside)
    return inside


def cone_angular_halfwidth(cone, depth):
    """Half-width of the admissible angular window at modulus ``depth``.

    Points d*exp(i(arg(vertex)+delta)) lie in the cone iff |delta| < this value.
    """
    d = float(depth)
    c = cone.aperture
    cos_bound = (1.0 + d * d - c * c * (1.0 - d) ** 2) / (2.0 * d)
    if cos_bound >= 1.0:
        return 0.0
    return float(np.arccos(max(-1.0, cos_bound)))


def cone_sample(cone, depths, rays_per_depth):
    """Lattice of points in the cone: at each depth (modulus), ``rays_per_depth``
    angles spread over the admissible window around the vertex direction.

    Returns a complex array of len(depths) * rays_per_depth points, all strictly
    inside the cone.
    """
    depths = np.asarray(depths, dtype=float)
    if depths.size == 0:
        raise ValueError("cone_sample requires at least one depth")
    if np.any((depths <= 0) | (depths >= 1)):
        raise ValueError("depths must lie in (0, 1)")
    if np.any(np.diff(depths) < 0):
        raise ValueError("depths must be sorted increasing")
    t0 = np.angle(cone.vertex)
    out = []
    for d in depths:
        half = cone_angular_halfwidth(cone, d) * (1.0 - 1e-9)
        if rays_per_depth == 1:
            deltas = np.array([0.0])
        else:
            deltas = np.linspace(-half, half, rays_per_depth)
        out.append(d * np.exp(1j * (t0 + deltas)))
    return np.concatenate(out)


@dataclass(frozen=True)
class Arc:
    """Boundary arc given by its center angle and half-width (radians)."""

    center_angle: float
    half_width: float

    def __post_init__(self):
        if not 0.0 < self.half_width <= np.pi:
            raise ValueError("arc half_width must lie in (0, pi]")
        object.__setattr__(self, "center_angle", wrap_angle(self.center_angle))

    @property
    def length(self):
        return 2.0 * self.half_width

    def contains_angle(self, theta):
        delta = np.abs(wrap_angle(np.asarray(theta) - self.center_angle))
        res = delta <= self.half_width
        if res.ndim == 0:
            return bool(res)
        return res

    def endpoints(self):
        """(start, end) angles with end - start = length (end may exceed pi)."""
        return (self.center_angle - self.half_width,
                self.center_angle + self.half_width)


def boundary_arc_of(z):
    """The arc I_z centered at arg z with length exactly 1 - |z|."""
    z = complex(z)
    if z == 0:
        raise ValueError("boundary_arc_of is undefined at z = 0")
    r = abs(z)
    if r >= 1:
        raise ValueError("boundary_arc_of requires |z| < 1")
    return Arc(center_angle=float(np.angle(z)), half_width=(1.0 - r) / 2.0)


@dataclass(frozen=True)
class CarlesonSquare:
    """Box over a boundary arc, between radius 1 - |arc|/(2 pi) and 1."""

    arc: Arc
    inner_radius: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "inner_radius", 1.0 - self.arc.length / TWO_PI)

    @property
    def side_length(self):
        return self.arc.length

    def area(self):
        return self.arc.length * (1.0 - self.inner_radius ** 2) / 2.0


def square_contains(square, z):
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    inside = (r < 1.0) & (r >= square.inner_radius) \
        & square.arc.contains_angle(np.angle(z))
    if inside.ndim == 0:
        return bool(inside)
    return inside


@dataclass(frozen=True)
class HyperbolicBall:
    """Euclidean ball at z of radius ratio * (1 - |z|), ratio in (0, 1)."""

    center: complex
    ratio: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError("ball ratio must lie in (0, 1)")
        if abs(self.center) >= 1.0:
            raise ValueError("ball center must lie in the open disc")

    @property
    def radius(self):
        return self.ratio * (1.0 - abs(self.center))

    @property
    def area(self):
        return np.pi * self.radius ** 2

    def contains(self, z):
        res = np.abs(np.asarray(z, dtype=complex) - self.center) < self.radius
        if res.ndim == 0:
            return bool(res)
        return res


def ball_sample(ball, n, rng):
    """n points uniform in the ball, stratified over equal-area annuli with a
    Latin-hypercube pairing of annuli and angular sectors."""
    n = int(n)
    u = (np.arange(n) + rng.random(n)) / n
    theta = TWO_PI * (rng.permutation(n) + rng.random(n)) / n
    r = ball.radius * np.sqrt(u)
    return ball.center + r * np.exp(1j * theta)
