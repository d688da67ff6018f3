"""Superelliptic curve families w^m = prod(zeta - a_i) and sheet tracking.

The multivalued function w is never evaluated through a global branch of the
logarithm.  A value of w is either produced by :func:`fiber` (which fixes a
deterministic sheet labelling at a single point) or transported along a path
by :func:`continue_w`.  Continuation uses an exponential predictor that is
exact as long as no factor (zeta - a_i) sweeps more than a quarter turn in a
single step, followed by a snap to the nearest exact m-th root of the
right-hand side, so the returned values satisfy the curve equation to
machine precision on the correct sheet.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchPointHit, ConfigError, StepFailure

TWO_PI = 2.0 * math.pi

# Relative tolerance for "this (zeta, w) lies on the curve" checks.
W_RTOL = 1e-9

# Maximum argument swing of any factor (zeta - a_i) per continuation step.
_ARG_CAP = math.pi / 4

# Continuation may bisect an interval this many times before giving up.
_MAX_SPLITS = 48


@dataclass(frozen=True)
class CurveFamily:
    """The data (m, n, N, a_1..a_N, p) defining the family and matrix size.

    Invariants enforced at construction: gcd(|n|, m) = 1, the branch points
    a_i are pairwise distinct, and m, N, p are positive.
    """

    m: int
    n: int
    N: int
    a: tuple
    p: int
    exclusion: float | None = None  # override for the default 1e-3 * sep

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(complex(v) for v in self.a))
        if self.m < 1:
            raise ConfigError(f"m must be a positive integer, got {self.m}")
        if self.n == 0:
            raise ConfigError("n must be a nonzero integer")
        if math.gcd(abs(self.n), self.m) != 1:
            raise ConfigError(f"n={self.n} and m={self.m} must be coprime")
        if self.N < 1 or len(self.a) != self.N:
            raise ConfigError(f"expected N={self.N} branch points, got {len(self.a)}")
        if self.p < 1:
            raise ConfigError(f"p must be a positive integer, got {self.p}")
        if self.exclusion is not None and self.exclusion <= 0:
            raise ConfigError("exclusion radius must be positive")
        for i in range(self.N):
            for k in range(i + 1, self.N):
                if self.a[i] == self.a[k]:
                    raise ConfigError(f"branch points a_{i+1} and a_{k+1} coincide")

    @property
    def sep(self):
        """Minimum pairwise distance of the branch points (inf when N = 1)."""
        if self.N < 2:
            return math.inf
        return min(
            abs(self.a[i] - self.a[k])
            for i in range(self.N)
            for k in range(i + 1, self.N)
        )

    @property
    def length_scale(self):
        """Finite fallback scale used where `sep` may be infinite."""
        sep = self.sep
        return sep if math.isfinite(sep) else 1.0

    @property
    def exclusion_radius(self):
        if self.exclusion is not None:
            return self.exclusion
        return 1e-3 * self.length_scale

    def product(self, zeta):
        """prod_i (zeta - a_i)."""
        v = 1.0 + 0.0j
        for ai in self.a:
            v *= zeta - ai
        return v

    def inverse_distance_sum(self, zeta):
        """sum_i 1/(zeta - a_i), the logarithmic derivative of the product."""
        return sum(1.0 / (zeta - ai) for ai in self.a)

    def min_branch_distance(self, zeta):
        return min(abs(zeta - ai) for ai in self.a)

    def check_off_branch(self, zeta):
        if self.min_branch_distance(zeta) < self.exclusion_radius:
            raise BranchPointHit(
                f"point {zeta} is within the exclusion radius "
                f"{self.exclusion_radius:.3g} of a branch point"
            )

    def with_a(self, a):
        """Same family data over a perturbed branch-point tuple."""
        return CurveFamily(self.m, self.n, self.N, tuple(a), self.p, self.exclusion)


@dataclass(frozen=True)
class SheetedPoint:
    """A point (zeta, w) of the surface with w^m = prod(zeta - a_i)."""

    zeta: complex
    w: complex

    def residual(self, curve):
        v = curve.product(self.zeta)
        return abs(self.w ** curve.m - v) / max(1.0, abs(v))


@dataclass(frozen=True)
class StructureConstants:
    """Points at infinity, reduced integers and genus of the compact surface."""

    s: int
    m1: int
    N1: int
    genus: int


def structure_constants(curve):
    """s = gcd(m, N), m = s*m1, N = s*N1, genus = ((m-1)(N-1) - s + 1)/2."""
    s = math.gcd(curve.m, curve.N)
    twice_genus = (curve.m - 1) * (curve.N - 1) - s + 1
    return StructureConstants(s, curve.m // s, curve.N // s, twice_genus // 2)


def _roots(curve, value):
    """All m-th roots of `value`, principal root first."""
    m = curve.m
    principal = cmath.exp(cmath.log(value) / m)
    return [principal * cmath.exp(2j * math.pi * k / m) for k in range(m)]


def fiber(curve, zeta):
    """The m points of the surface over zeta, as a deterministically ordered list.

    Sheet k carries w = (principal m-th root of prod(zeta - a_i)) * e^{2 pi i k/m},
    so index 0 is the principal root and arguments increase with k.
    """
    curve.check_off_branch(zeta)
    return [SheetedPoint(zeta, w) for w in _roots(curve, curve.product(zeta))]


def _snap(curve, zeta, w_pred):
    """Nearest exact root to the prediction plus the margin to the runner-up."""
    best = second = math.inf
    chosen = None
    for root in _roots(curve, curve.product(zeta)):
        d = abs(root - w_pred)
        if d < best:
            best, second, chosen = d, best, root
        elif d < second:
            second = d
    return chosen, best, second


def _needs_split(curve, z0, z1):
    """True when some factor (z - a_i) turns more than _ARG_CAP along the chord."""
    for ai in curve.a:
        if abs(cmath.phase((z1 - ai) / (z0 - ai))) > _ARG_CAP:
            return True
    return False


def _predict(curve, z0, w0, z1):
    """Exact continuation of w assuming no factor wraps on the step z0 -> z1."""
    inc = sum(cmath.log((z1 - ai) / (z0 - ai)) for ai in curve.a)
    return w0 * cmath.exp(inc / curve.m)


def continue_along(curve, zpath, t0, t1, w0):
    """Continue w along zpath restricted to [t0, t1]; zpath maps [0, 1] -> C.

    Splits adaptively so that the exponential predictor stays exact, then
    snaps to the closest exact m-th root.  Raises StepFailure if the snap is
    ever ambiguous at the minimum step size (in practice unreachable away
    from branch points) and BranchPointHit when the path strays inside the
    exclusion radius.
    """
    def advance(ta, tb, w, depth):
        za, zb = zpath(ta), zpath(tb)
        curve.check_off_branch(zb)
        if depth < _MAX_SPLITS and _needs_split(curve, za, zb):
            tm = 0.5 * (ta + tb)
            w_mid = advance(ta, tm, w, depth + 1)
            return advance(tm, tb, w_mid, depth + 1)
        pred = _predict(curve, za, w, zb)
        chosen, best, second = _snap(curve, zb, pred)
        if best * 3.0 > second:
            if depth >= _MAX_SPLITS:
                raise StepFailure(
                    f"ambiguous sheet choice near zeta={zb} (distances "
                    f"{best:.3g} vs {second:.3g} at minimum step size)"
                )
            tm = 0.5 * (ta + tb)
            w_mid = advance(ta, tm, w, depth + 1)
            return advance(tm, tb, w_mid, depth + 1)
        return chosen

    z_start = zpath(t0)
    curve.check_off_branch(z_start)
    if SheetedPoint(z_start, w0).residual(curve) > W_RTOL:
        raise StepFailure(
            f"starting value w={w0} does not lie on the curve over zeta={z_start}"
        )
    return advance(t0, t1, w0, 0)


def continue_w(curve, zpath, w_start):
    """Continue w along the full parametrized path zpath : [0, 1] -> C."""
    return continue_along(curve, zpath, 0.0, 1.0, w_start)
