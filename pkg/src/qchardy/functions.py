"""Analytic test functions on the disc and their quasiregular composites.

Each analytic function carries singularity metadata (boundary angle, local
blow-up exponent) used to grade quadratures, plus declared Hardy-membership
expectations used by experiments to pick the expected classification.  The
membership metadata is never an input to any computation.
"""

from __future__ import annotations

import numpy as np

MEMBER = "member"
NON_MEMBER = "non-member"
UNKNOWN = "unknown"


class AnalyticFunction:
    """Analytic function with evaluation, derivative and grading metadata.

    ``singularities`` lists (boundary angle, exponent s) pairs meaning
    |f(z)| ~ |z - e^{i angle}|^{-s} near that boundary point (for kernels with
    a pole off the closed disc, the angle of nearest approach is listed so
    quadratures still grade there).
    """

    def __init__(self, eval_fn, deriv_fn, singularities=(), hp_membership=None,
                 label="analytic"):
        self._eval = eval_fn
        self._deriv = deriv_fn
        self.singularities = tuple(singularities)
        self._hp = hp_membership
        self.label = label

    def __call__(self, z):
        return self._eval(np.asarray(z, dtype=complex))

    def deriv(self, z):
        return self._deriv(np.asarray(z, dtype=complex))

    def hp_membership(self, p):
        if self._hp is None:
            return UNKNOWN
        return self._hp(p)

    def singular_angles(self):
        return tuple(a for a, _ in self.singularities)


def constant_function(c):
    c = complex(c)
    return AnalyticFunction(
        lambda z: np.full_like(z, c),
        lambda z: np.zeros_like(z),
        hp_membership=lambda p: MEMBER,
        label=f"const({c})",
    )


def monomial(n=1):
    n = int(n)
    return AnalyticFunction(
        lambda z: z ** n,
        lambda z: n * z ** (n - 1) if n >= 1 else np.zeros_like(z),
        hp_membership=lambda p: MEMBER,
        label=f"z^{n}",
    )


def hardy_kernel(w, p):
    """g(z) = (1 - conj(w) z)^(-2/p), the extremal kernel at w for exponent p.

    The base 1 - conj(w) z has positive real part on the disc, so the principal
    branch is unambiguous.  Bounded on the closed disc (|w| < 1), hence a
    member of every Hardy class; the near-singularity sits at w/|w| with
    exponent 2/p and width 1 - |w|, recorded for quadrature grading.
    """
    w = complex(w)
    p = float(p)
    if abs(w) >= 1:
        raise ValueError("hardy_kernel needs |w| < 1")
    if p <= 0:
        raise ValueError("hardy_kernel needs p > 0")
    s = 2.0 / p
    wb = np.conj(w)
    sing = () if w == 0 else ((float(np.angle(w)), s),)
    return AnalyticFunction(
        lambda z: (1.0 - wb * z) ** (-s),
        lambda z: s * wb * (1.0 - wb * z) ** (-s - 1.0),
        singularities=sing,
        hp_membership=lambda q: MEMBER,
        label=f"kernel(w={w:.4g},p={p:g})",
    )


def cauchy_kernel():
    """g(z) = 1/(1 - z): boundary singularity at angle 0 with exponent 1;
    in H^p exactly for p < 1."""
    return AnalyticFunction(
        lambda z: 1.0 / (1.0 - z),
        lambda z: 1.0 / (1.0 - z) ** 2,
        singularities=((0.0, 1.0),),
        hp_membership=lambda p: MEMBER if p < 1 else NON_MEMBER,
        label="cauchy",
    )


class QuasiregularMap:
    """Composite f = g o phi with chain-rule differential.

    Df = g'(phi) . Dphi, so |Df| = |g'(phi)| |Dphi| (operator norms) and
    Jf = |g'(phi)|^2 Jphi.
    """

    def __init__(self, g, phi):
        self.g = g
        self.phi = phi
        self.label = f"{g.label}o{phi.label}"

    def __call__(self, z):
        return self.g(self.phi(np.asarray(z, dtype=complex)))

    def boundary_trace(self, t):
        """f(e^{it}) = g(phi(e^{it})); evaluates to inf at singular pullbacks."""
        zeta = self.phi.boundary_point(np.asarray(t, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.g(zeta)

    def singular_pullback_angles(self):
        """Boundary singular angles of g pulled back through the boundary map."""
        inv = self.phi.boundary.inverse
        return tuple(float(inv(np.asarray(a))) for a in self.g.singular_angles())

    def differential(self, z, fd_factor=1e-5):
        """(|Df| operator norm, Jacobian Jf) at interior points z."""
        z = np.asarray(z, dtype=complex)
        w = self.phi(z)
        gp = np.abs(self.g.deriv(w))
        op, jac = self.phi.differential(z, fd_factor)
        return gp * op, gp ** 2 * jac

    def jacobian(self, z, fd_factor=1e-5):
        return self.differential(z, fd_factor)[1]


def compose(g, phi):
    """The composition operator applied to g with quasiconformal symbol phi."""
    return QuasiregularMap(g, phi)
