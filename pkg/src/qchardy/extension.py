"""Quasiconformal selfmaps of the disc.

A boundary homeomorphism is extended to the disc by the Beurling-Ahlfors
averaged extension, conjugated through the Cayley transform: the boundary
angle map is transported to a line homeomorphism via x = tan(t/2), extended to
the upper half-plane by interval averages, and pulled back to the disc.
Conformal members of the catalog (identity, Moebius) are also available with
exact interior evaluation as a control group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryHomeo, MapCatalogEntry, make_map, parse_map_spec
from .geometry import Cone, cone_sample
from .quadrature import gauss_legendre

# fractional panel edges graded toward the anchor endpoint (ratio 3, 14 panels)
_GRADE_RATIO = 3.0
_GRADE_PANELS = 14
_GL_ORDER = 12


def _fractions():
    f = _GRADE_RATIO ** -np.arange(_GRADE_PANELS - 1, -1.0, -1.0)
    return np.concatenate(([0.0], f))


_FRACTIONS = _fractions()


def _line_integral(fn, a, b):
    """Vectorized integral of fn over [a_i, b_i], graded toward s = 0.

    Panels shrink geometrically toward the point of [a, b] closest to 0, which
    is where the catalog line maps have their cusp.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    c = np.clip(0.0, a, b)
    # edges running a -> c then c -> b; the duplicated edge at c is harmless
    left = c[:, None] + (a - c)[:, None] * _FRACTIONS[::-1][None, :]
    right = c[:, None] + (b - c)[:, None] * _FRACTIONS[None, :]
    edges = np.concatenate([left, right], axis=1)
    x, w = gauss_legendre(_GL_ORDER)
    half = 0.5 * np.diff(edges, axis=1)
    mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
    nodes = mid[:, :, None] + half[:, :, None] * x[None, None, :]
    vals = fn(nodes.ravel()).reshape(nodes.shape)
    return np.einsum("mp,mpq,q->m", half, vals, w)


class BAExtension:
    """Beurling-Ahlfors extension of a circle homeomorphism, via the half-plane."""

    def __init__(self, homeo):
        self.homeo = homeo

    def line_map(self, x):
        """Induced line homeomorphism h(x) = tan(alpha(2 atan x) / 2)."""
        x = np.asarray(x, dtype=float)
        return np.tan(0.5 * self.homeo(2.0 * np.arctan(x)))

    def halfplane(self, x, y):
        """Averaged extension (u, v) of the line map at (x, y), y > 0."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        i1 = _line_integral(self.line_map, x - y, x)
        i2 = _line_integral(self.line_map, x, x + y)
        u = (i1 + i2) / (2.0 * y)
        v = (i2 - i1) / (2.0 * y)
        return u, v

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        shape = z.shape
        zf = np.atleast_1d(z)
        w = 1j * (1.0 - zf) / (1.0 + zf)
        u, v = self.halfplane(w.real, w.imag)
        phi_hp = u + 1j * v
        out = (1j - phi_hp) / (1j + phi_hp)
        if shape == ():
            return complex(out[0])
        return out.reshape(shape)


class DiscQCMap:
    """Quasiconformal selfmap of the disc with known boundary angle map."""

    def __init__(self, boundary, interior, label="", conformal=False,
                 complex_derivative=None):
        self.boundary = boundary
        self.interior = interior
        self.label = label or boundary.label
        self.conformal = conformal
        self.complex_derivative = complex_derivative

    def __call__(self, z):
        return self.interior(np.asarray(z, dtype=complex))

    def boundary_point(self, t):
        return self.boundary.map_point(t)

    def wirtinger(self, z, fd_factor=1e-5):
        """(d_z phi, d_zbar phi) at z: exact for conformal maps, otherwise
        central finite differences with step fd_factor * (1 - |z|)."""
        z = np.asarray(z, dtype=complex)
        if self.conformal and self.complex_derivative is not None:
            dz = self.complex_derivative(z)
            return dz, np.zeros_like(dz)
        h = fd_factor * (1.0 - np.abs(z))
        fx = (self(z + h) - self(z - h)) / (2.0 * h)
        fy = (self(z + 1j * h) - self(z - 1j * h)) / (2.0 * h)
        return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)

    def differential(self, z, fd_factor=1e-5):
        """(operator norm |Dphi|, Jacobian) at z."""
        dz, dzb = self.wirtinger(z, fd_factor)
        return np.abs(dz) + np.abs(dzb), np.abs(dz) ** 2 - np.abs(dzb) ** 2


def ba_extend(h):
    """Beurling-Ahlfors extension of a BoundaryHomeo to a DiscQCMap."""
    ext = BAExtension(h)
    return DiscQCMap(h, ext, label=f"ba[{h.label}]")


def identity_disc_map():
    from .boundary import identity_homeo
    return DiscQCMap(identity_homeo(), lambda z: np.asarray(z, dtype=complex),
                     label="identity", conformal=True,
                     complex_derivative=lambda z: np.ones_like(z))


def moebius_disc_map(a):
    from .boundary import moebius_homeo
    a = float(a)
    h = moebius_homeo(a)
    return DiscQCMap(
        h,
        lambda z, a=a: (z - a) / (1.0 - a * z),
        label=f"moebius({a:g})",
        conformal=True,
        complex_derivative=lambda z, a=a: (1.0 - a * a) / (1.0 - a * z) ** 2,
    )


def make_disc_map(entry):
    """Catalog DiscQCMap: conformal members exact, the rest via the extension."""
    if isinstance(entry, str):
        entry = parse_map_spec(entry)
    if entry.name == "identity":
        return identity_disc_map()
    if entry.name == "moebius":
        return moebius_disc_map(entry.parameters[0])
    return ba_extend(make_map(entry))


@dataclass(frozen=True)
class DilatationSummary:
    median: float
    p99: float
    violations: int
    n_points: int


def dilatation_estimate(phi, grid=16, fd_factor=1e-5):
    """Distribution of |Dphi|^2 / J over a polar grid; p99 is the working K.

    Points with J <= 0 are counted as distortion violations and excluded from
    the quantiles.
    """
    r = (np.arange(grid) + 0.5) / (grid + 0.5)
    th = -np.pi + 2.0 * np.pi * (np.arange(grid) + 0.5) / grid
    z = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
    op, jac = phi.differential(z, fd_factor)
    bad = jac <= 0
    ratios = (op[~bad] ** 2) / jac[~bad]
    if ratios.size == 0:
        raise RuntimeError("Jacobian non-positive at every grid point")
    return DilatationSummary(
        median=float(np.median(ratios)),
        p99=float(np.quantile(ratios, 0.99)),
        violations=int(np.count_nonzero(bad)),
        n_points=int(z.size),
    )


def invert(phi, w, tol=1e-11, max_iter=80):
    """Solve phi(z) = w for an interior point by damped Newton iteration.

    Initial guess from the boundary inverse angle and |w|; the quasi-Newton
    step uses the Wirtinger derivatives of phi.
    """
    w = complex(w)
    t0 = float(phi.boundary.inverse(np.angle(w) if w != 0 else 0.0))
    z = abs(w) * np.exp(1j * t0) if w != 0 else 0j
    if abs(z) >= 1:
        z *= (1 - 1e-9) / abs(z)
    for _ in range(max_iter):
        f = complex(phi(z)) - w
        if abs(f) < tol:
            return z
        dz, dzb = phi.wirtinger(np.asarray([z]))
        dz, dzb = complex(dz[0]), complex(dzb[0])
        jac = abs(dz) ** 2 - abs(dzb) ** 2
        if jac <= 0:
            break
        step = (np.conj(dz) * f - dzb * np.conj(f)) / jac
        # keep iterates inside the disc
        znew = z - step
        while abs(znew) >= 1 - 1e-13:
            step *= 0.5
            znew = z - step
            if abs(step) < 1e-16:
                break
        z = znew
    f = complex(phi(z)) - w
    if abs(f) < 1e-7:
        return z
    raise RuntimeError(f"invert({phi.label}, {w}) did not converge (residual {abs(f):.2e})")


def circular_distortion_check(phi, balls, n_boundary=24):
    """diam(phi^{-1}(B)) / (1 - |phi^{-1}(center)|) for each hyperbolic ball."""
    ratios = []
    for ball in balls:
        zc = invert(phi, ball.center)
        thetas = 2.0 * np.pi * np.arange(n_boundary) / n_boundary
        rim = ball.center + ball.radius * 0.999 * np.exp(1j * thetas)
        pre = np.array([invert(phi, w) for w in rim])
        diam = float(np.max(np.abs(pre[:, None] - pre[None, :])))
        ratios.append(diam / (1.0 - abs(zc)))
    return ratios


def cone_image_aperture(phi, xi, c=2.0, samples=96):
    """Empirical aperture of the image of the cone at xi under phi:
    sup |phi(z) - phi(xi)| / (1 - |phi(z)|) over a cone sample lattice."""
    if c <= 1:
        raise ValueError("cone aperture must be > 1")
    n_depths = 12
    rays = max(3, int(samples) // n_depths)
    depths = 1.0 - 2.0 ** -np.arange(1, n_depths + 1)
    cone = Cone(vertex=xi, aperture=c)
    z = cone_sample(cone, depths, rays)
    w = phi(z)
    target = complex(phi.boundary_point(float(np.angle(xi))))
    return float(np.max(np.abs(w - target) / (1.0 - np.abs(w))))
