"""Adaptive contour integration of the meromorphic differentials along chains.

Each loop is walked segment by segment with the sheet value carried by
analytic continuation; a panel's Gauss-Legendre 15-point value is accepted
when it agrees with the embedded 7-point value, otherwise the panel is
bisected.  Fractional powers of w are never taken: integrands only ever see
integer powers of the continued sheet value, so all branch decisions happen
inside the continuation step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import W_RTOL, SheetedPoint, continue_along
from .errors import ChainNotClosed, ConfigError, PoleTooClose, QuadratureNoConvergence

PANEL_TOL = 1e-12
CHAIN_TOL = 1e-10
_MAX_DEPTH = 24

_N15, _W15 = np.polynomial.legendre.leggauss(15)
_N7, _W7 = np.polynomial.legendre.leggauss(7)


def _node_schedule():
    """Union of the 15- and 7-point nodes with per-rule weight lookups."""
    weights = {}
    for x, w in zip(_N15, _W15):
        weights.setdefault(float(x), [0.0, 0.0])[0] = w
    for x, w in zip(_N7, _W7):
        weights.setdefault(float(x), [0.0, 0.0])[1] = w
    xs = sorted(weights)
    return [(x, weights[x][0], weights[x][1]) for x in xs]


_SCHEDULE = _node_schedule()


@dataclass(frozen=True)
class Integrand:
    """One of the three differential kinds, with the power index j.

    kind "omega" is w^{jn} dzeta/(zeta - a_i); "kappa" and "kappa_prime" are
    the Cauchy kernels w^{jn}/(zeta - z) and w^{jn}/(zeta - z)^2.
    """

    kind: str
    j: int
    i: int | None = None
    z: complex | None = None

    def __post_init__(self):
        if self.kind not in ("omega", "kappa", "kappa_prime"):
            raise ConfigError(f"unknown integrand kind {self.kind!r}")
        if self.j < 1:
            raise ConfigError("power index j must be a positive integer")
        if self.kind == "omega" and self.i is None:
            raise ConfigError("omega integrand needs the branch index i")
        if self.kind != "omega" and self.z is None:
            raise ConfigError("kappa kernels need the evaluation point z")


def omega(i, j):
    return Integrand("omega", j, i=i)


def kappa_kernel(z, j):
    return Integrand("kappa", j, z=complex(z))


def kappa_prime_kernel(z, j):
    return Integrand("kappa_prime", j, z=complex(z))


def finite_pole_projections(curve, integrand):
    """zeta-projections of the integrand's finite poles, for distance checks."""
    poles = []
    if integrand.kind == "omega":
        poles.append(curve.a[integrand.i - 1])
    else:
        poles.append(integrand.z)
    if integrand.j * curve.n < 0:
        poles.extend(curve.a)
    return poles


def _evaluate(curve, integrand, zeta, w):
    wp = w ** (integrand.j * curve.n)
    if integrand.kind == "omega":
        return wp / (zeta - curve.a[integrand.i - 1])
    if integrand.kind == "kappa":
        return wp / (zeta - integrand.z)
    return wp / (zeta - integrand.z) ** 2


def integrate(curve, chain, integrand, *, panel_tol=PANEL_TOL):
    """Integral of the integrand over the chain, sheet-tracked; sums the
    terms in chain order so results are deterministic."""
    total = 0.0 + 0.0j
    for coeff, loop in chain:
        if coeff == 0:
            continue
        total += coeff * integrate_loop(curve, loop, integrand, panel_tol=panel_tol)
    return total


def integrate_loop(curve, loop, integrand, *, panel_tol=PANEL_TOL):
    poles = finite_pole_projections(curve, integrand)
    for pole in poles:
        d = loop.distance_to(pole)
        if d < curve.exclusion_radius:
            raise PoleTooClose(
                f"loop path passes at distance {d:.3g} from the pole at {pole} "
                f"(exclusion radius {curve.exclusion_radius:.3g})"
            )
    w = loop.base_w
    if SheetedPoint(loop.base_zeta, w).residual(curve) > W_RTOL:
        raise ChainNotClosed(
            f"loop base sheet value does not lie on the curve over {loop.base_zeta}; "
            "reanchor the chain after perturbing the branch points"
        )
    total = 0.0 + 0.0j
    for seg in loop.pieces():
        value, w = _integrate_segment(curve, seg, w, integrand, panel_tol)
        total += value
    if abs(w - loop.base_w) > 1e-8 * max(1.0, abs(loop.base_w)):
        raise ChainNotClosed("sheet did not return to its start after the full loop")
    return total


def _initial_panels(seg):
    span = getattr(seg, "theta1", 0.0) - getattr(seg, "theta0", 0.0)
    if span:
        count = max(4, math.ceil(abs(span) / (math.pi / 4)))
    else:
        count = 2
    return [(k / count, (k + 1) / count) for k in range(count)]


def _integrate_segment(curve, seg, w_start, integrand, panel_tol):
    total = 0.0 + 0.0j
    w = w_start
    for t0, t1 in _initial_panels(seg):
        value, w = _panel(curve, seg, t0, t1, w, integrand, panel_tol, 0)
        total += value
    return total, w


def _panel(curve, seg, t0, t1, w0, integrand, panel_tol, depth):
    half = 0.5 * (t1 - t0)
    mid = 0.5 * (t0 + t1)
    i15 = 0.0 + 0.0j
    i7 = 0.0 + 0.0j
    w = w0
    t_prev = t0
    for x, w15, w7 in _SCHEDULE:
        t = mid + half * x
        w = continue_along(curve, seg.at, t_prev, t, w)
        t_prev = t
        g = _evaluate(curve, integrand, seg.at(t), w) * seg.velocity(t)
        if w15:
            i15 += w15 * g
        if w7:
            i7 += w7 * g
    i15 *= half
    i7 *= half
    if abs(i15 - i7) <= panel_tol * (1.0 + abs(i15)):
        w_end = continue_along(curve, seg.at, t_prev, t1, w)
        return i15, w_end
    if depth >= _MAX_DEPTH:
        raise QuadratureNoConvergence(
            f"panel on [{t0:.6f}, {t1:.6f}] did not converge at depth {depth}"
        )
    left, w_mid = _panel(curve, seg, t0, mid, w0, integrand, panel_tol, depth + 1)
    right, w_end = _panel(curve, seg, mid, t1, w_mid, integrand, panel_tol, depth + 1)
    return left + right, w_end


def kappa(curve, chain, j, z, *, panel_tol=PANEL_TOL):
    """kappa_j = -(m/(j n)) * integral of w^{jn}/(zeta - z) over the chain."""
    value = integrate(curve, chain, kappa_kernel(z, j), panel_tol=panel_tol)
    return -(curve.m / (j * curve.n)) * value


def kappa_prime(curve, chain, j, z, *, panel_tol=PANEL_TOL):
    """d(kappa_j)/dz via the squared-denominator kernel."""
    value = integrate(curve, chain, kappa_prime_kernel(z, j), panel_tol=panel_tol)
    return -(curve.m / (j * curve.n)) * value
