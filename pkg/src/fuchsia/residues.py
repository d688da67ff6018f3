"""Closed-form residues of the differentials w^{jn} dzeta/(zeta - a_i).

For n > 0 all poles sit at the s = gcd(m, N) points at infinity; residues
there are nonzero only when j is a multiple of m1 = m/s.  For n < 0 all
poles sit at the finite ramification points; residues there are nonzero only
when j is a multiple of m, in which case w^{jn} is a single-valued rational
function and no root choice enters.  R_j and S_j are the rational functions
the same residue calculus gives for the Cauchy kernel w^{jn}/(zeta - z),
normalized as kappa values of the canonical residue chains.
"""

from __future__ import annotations

import cmath
import math

from .contour import default_infinity_radius
from .curve import fiber, structure_constants
from .errors import ConfigError, InvalidRegime


def gen_binomial(beta, k):
    """Generalized binomial coefficient beta(beta-1)...(beta-k+1)/k!."""
    if k < 0:
        raise ConfigError("binomial index must be nonnegative")
    value = 1.0 + 0.0j
    for step in range(k):
        value *= (beta - step) / (step + 1)
    return value


def compositions(total, parts):
    """All tuples of `parts` nonnegative integers summing to `total`,
    in lexicographic order."""
    if total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _sheet_phase(curve, sheet, radius=None):
    """The m-th root of unity relating sheet values to the reference branch
    R^{N/m} * exp(sum_h Log(1 - a_h/R)/m) at the infinity-loop base point."""
    if radius is None:
        radius = default_infinity_radius(curve)
    base = complex(radius, 0.0)
    w = fiber(curve, base)[sheet].w
    ref = cmath.exp(
        (curve.N / curve.m) * math.log(radius)
        + sum(cmath.log(1.0 - ah / base) for ah in curve.a) / curve.m
    )
    ratio = w / ref
    k = round(cmath.phase(ratio) * curve.m / (2.0 * math.pi)) % curve.m
    return cmath.exp(2j * math.pi * k / curve.m)


def infinity_residue_sum(curve, i, j):
    """The phase-free sum in the infinity residue: over all splittings
    k_1 + ... + k_N + q = N*j*n/m of (-1)^q prod_h C(jn/m, k_h) a_h^{k_h} a_i^q."""
    order = j * curve.n * curve.N // curve.m
    jnm = j * curve.n / curve.m
    total = 0.0 + 0.0j
    for split in compositions(order, curve.N + 1):
        ks, q = split[:-1], split[-1]
        term = (-1.0) ** q * curve.a[i - 1] ** q
        for ah, kh in zip(curve.a, ks):
            term *= gen_binomial(jnm, kh) * ah**kh
        total += term
    return total


def infinity_prefactor(curve, alpha, j):
    """A_j = (-1)^{N j n / m} * (-m1) * eps_alpha^{jn}, with eps_alpha the
    root of unity carried by the pinned starting sheet alpha - 1."""
    sc = structure_constants(curve)
    eps = _sheet_phase(curve, alpha - 1)
    sign = cmath.exp(1j * math.pi * curve.N * j * curve.n / curve.m)
    return sign * (-sc.m1) * eps ** (j * curve.n)


def residue_at_infinity(curve, alpha, i, j):
    """Residue of w^{jn} dzeta/(zeta - a_i) at the infinity point of class alpha."""
    if curve.n < 0:
        raise InvalidRegime("infinity residues require n > 0")
    sc = structure_constants(curve)
    if not 1 <= alpha <= sc.s:
        raise ConfigError(f"alpha={alpha} out of range 1..{sc.s}")
    if j % sc.m1 != 0:
        return 0.0 + 0.0j
    return infinity_prefactor(curve, alpha, j) * infinity_residue_sum(curve, i, j)


def residue_at_branch_point(curve, nu, i, j):
    """Residue of w^{jn} dzeta/(zeta - a_i) at the ramification point over a_nu."""
    if curve.n > 0:
        raise InvalidRegime("branch-point residues require n < 0")
    if not 1 <= nu <= curve.N:
        raise ConfigError(f"nu={nu} out of range 1..{curve.N}")
    if j % curve.m != 0:
        return 0.0 + 0.0j
    order = j * abs(curve.n) // curve.m
    a = curve.a
    a_nu = a[nu - 1]
    others = [h for h in range(1, curve.N + 1) if h != nu]
    total = 0.0 + 0.0j
    if i != nu:
        for ks in compositions(order - 1, curve.N):
            k_nu = ks[nu - 1]
            term = (-1.0) ** k_nu / (a_nu - a[i - 1]) ** (k_nu + 1)
            for h in others:
                kh = ks[h - 1]
                term *= gen_binomial(-order, kh) / (a_nu - a[h - 1]) ** (kh + order)
            total += term
    else:
        for ks in compositions(order, curve.N - 1):
            term = 1.0 + 0.0j
            for h, kh in zip(others, ks):
                term *= gen_binomial(-order, kh) / (a_nu - a[h - 1]) ** (kh + order)
            total += term
    return curve.m * total


def residue_at_fiber_point(curve, z, t, j):
    """Residue of w^{jn}/(zeta - z) dzeta at sheet t of the fiber over z."""
    return fiber(curve, z)[t].w ** (j * curve.n)


def r_j(curve, z, c_j, j):
    """kappa_j for the chain c_j/(2 pi i A_j) times the loop around one
    infinity point: a polynomial of degree N*j*n/m in z (zero unless m1 | j)."""
    if curve.n < 0:
        raise InvalidRegime("R_j requires n > 0")
    sc = structure_constants(curve)
    if sc.s <= 1:
        raise InvalidRegime("R_j requires gcd(m, N) > 1")
    if j % sc.m1 != 0:
        return 0.0 + 0.0j
    return _r_poly(curve, z, c_j, j, derivative=False)


def r_j_derivative(curve, z, c_j, j):
    """d/dz of r_j."""
    if curve.n < 0:
        raise InvalidRegime("R_j requires n > 0")
    sc = structure_constants(curve)
    if sc.s <= 1:
        raise InvalidRegime("R_j requires gcd(m, N) > 1")
    if j % sc.m1 != 0:
        return 0.0 + 0.0j
    return _r_poly(curve, z, c_j, j, derivative=True)


def _r_poly(curve, z, c_j, j, derivative):
    order = j * curve.n * curve.N // curve.m
    jnm = j * curve.n / curve.m
    total = 0.0 + 0.0j
    for split in compositions(order, curve.N + 1):
        ks, q = split[:-1], split[-1]
        if derivative:
            if q == 0:
                continue
            zpow = q * z ** (q - 1)
        else:
            zpow = z**q
        term = (-1.0) ** q * zpow
        for ah, kh in zip(curve.a, ks):
            term *= gen_binomial(jnm, kh) * ah**kh
        total += term
    return -(curve.m * c_j / (j * curve.n)) * total


def s_j(curve, z, c, j):
    """kappa_j for the chain sum_nu c[nu-1]/(2 pi i) times the loop around
    a_nu: a rational function of z (zero unless m | j)."""
    return _s_rational(curve, z, c, j, derivative=False)


def s_j_derivative(curve, z, c, j):
    """d/dz of s_j."""
    return _s_rational(curve, z, c, j, derivative=True)


def _s_rational(curve, z, c, j, derivative):
    if curve.n > 0:
        raise InvalidRegime("S_j requires n < 0")
    if len(c) != curve.N:
        raise ConfigError(f"need one coefficient per branch point, got {len(c)}")
    if j % curve.m != 0:
        return 0.0 + 0.0j
    order = j * abs(curve.n) // curve.m
    a = curve.a
    total = 0.0 + 0.0j
    for nu in range(1, curve.N + 1):
        if c[nu - 1] == 0:
            continue
        a_nu = a[nu - 1]
        others = [h for h in range(1, curve.N + 1) if h != nu]
        inner = 0.0 + 0.0j
        for ks in compositions(order - 1, curve.N):
            k_nu = ks[nu - 1]
            if derivative:
                # d/dz (a_nu - z)^{-(k+1)} = (k+1) (a_nu - z)^{-(k+2)}
                pole = (k_nu + 1) / (a_nu - z) ** (k_nu + 2)
            else:
                pole = 1.0 / (a_nu - z) ** (k_nu + 1)
            term = (-1.0) ** k_nu * pole
            for h in others:
                kh = ks[h - 1]
                term *= gen_binomial(-order, kh) / (a_nu - a[h - 1]) ** (kh + order)
            inner += term
        total += c[nu - 1] * inner
    return (-(curve.m**2) / (j * curve.n)) * total
