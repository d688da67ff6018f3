"""Closed sheeted contours and complex-weighted chains of them.

Loops live in the zeta-plane as closed lists of line/arc segments together
with a starting sheet value and a winding count; the lift to the surface is
required to close.  Orientation convention: loops around finite points are
counterclockwise in the zeta-plane, loops around a point at infinity are
clockwise in the zeta-plane, so that every constructed loop is positively
oriented in the standard local coordinate of the point it encircles and
integrates to 2*pi*i times the local residue.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .curve import TWO_PI, continue_along, fiber, structure_constants
from .errors import (
    ChainNotClosed,
    ConfigError,
    RadiusTooLarge,
    RadiusTooSmall,
)

# Tolerance for "the lift returned to its starting sheet".
CLOSURE_RTOL = 1e-8


@dataclass(frozen=True)
class LineSeg:
    start: complex
    end: complex

    def at(self, s):
        return self.start + (self.end - self.start) * s

    def velocity(self, s):
        return self.end - self.start

    def distance_to(self, point):
        d = self.end - self.start
        den = abs(d) ** 2
        if den == 0.0:
            return abs(point - self.start)
        s = ((point - self.start) * d.conjugate()).real / den
        s = min(1.0, max(0.0, s))
        return abs(point - self.at(s))


@dataclass(frozen=True)
class ArcSeg:
    """Circular arc from theta0 to theta1; theta1 < theta0 runs clockwise."""

    center: complex
    radius: float
    theta0: float
    theta1: float

    def at(self, s):
        theta = self.theta0 + (self.theta1 - self.theta0) * s
        return self.center + self.radius * cmath.exp(1j * theta)

    def velocity(self, s):
        theta = self.theta0 + (self.theta1 - self.theta0) * s
        return 1j * (self.theta1 - self.theta0) * self.radius * cmath.exp(1j * theta)

    def distance_to(self, point):
        rho = abs(point - self.center)
        if abs(self.theta1 - self.theta0) >= TWO_PI - 1e-12:
            return abs(rho - self.radius)
        if rho == 0.0:
            return self.radius
        phi = cmath.phase(point - self.center)
        lo, hi = min(self.theta0, self.theta1), max(self.theta0, self.theta1)
        # Bring phi into [lo, lo + 2*pi) before testing angular membership.
        while phi < lo:
            phi += TWO_PI
        if phi <= hi:
            return abs(rho - self.radius)
        return min(abs(point - self.at(0.0)), abs(point - self.at(1.0)))


def _check_planar_closure(segments):
    tol = 1e-12 * max(1.0, max(abs(s.at(0.0)) for s in segments))
    for cur, nxt in zip(segments, segments[1:] + segments[:1]):
        if abs(cur.at(1.0) - nxt.at(0.0)) > tol:
            raise ConfigError("loop segments do not form a closed planar path")


@dataclass(frozen=True)
class SheetedLoop:
    """A closed planar path with a tracked sheet, traversed `windings` times.

    kind/label/anchor record what the loop encircles ("branch" around
    a_{label}, "infinity" around the infinity point of class label,
    "fiber" around sheet `label` of the fiber over `anchor`, or a free
    "path").  They drive regime checks and closed-form shortcuts; the
    geometry alone determines all integrals.
    """

    segments: tuple
    base_w: complex
    windings: int = 1
    kind: str = "path"
    label: int | None = None
    anchor: complex | None = None
    radius: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ConfigError("a loop needs at least one segment")
        if self.windings < 1:
            raise ConfigError("windings must be a positive integer")
        _check_planar_closure(list(self.segments))

    @property
    def base_zeta(self):
        return self.segments[0].at(0.0)

    def pieces(self):
        """The segments in traversal order, repeated `windings` times."""
        for _ in range(self.windings):
            yield from self.segments

    def distance_to(self, point):
        return min(seg.distance_to(point) for seg in self.segments)

    def continue_lift(self, curve, w0):
        """Transport a sheet value once around the full (wound) loop."""
        w = w0
        for seg in self.pieces():
            w = continue_along(curve, seg.at, 0.0, 1.0, w)
        return w

    def reanchored(self, curve):
        """Same geometry with base_w snapped onto (a possibly perturbed) curve."""
        roots = [pt.w for pt in fiber(curve, self.base_zeta)]
        w = min(roots, key=lambda r: abs(r - self.base_w))
        return SheetedLoop(
            self.segments, w, self.windings, self.kind, self.label, self.anchor, self.radius
        )


@dataclass(frozen=True)
class Chain:
    """Complex-weighted formal sum of sheeted loops; may be empty."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((complex(c), loop) for c, loop in self.terms)
        )

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def scaled(self, factor):
        return Chain(tuple((factor * c, loop) for c, loop in self.terms))

    def __add__(self, other):
        return Chain(self.terms + other.terms)

    def reanchored(self, curve):
        return Chain(tuple((c, loop.reanchored(curve)) for c, loop in self.terms))


def is_closed_on_surface(curve, loop):
    """True iff continuing base_w around the wound loop returns base_w."""
    w_end = loop.continue_lift(curve, loop.base_w)
    return abs(w_end - loop.base_w) <= CLOSURE_RTOL * max(1.0, abs(loop.base_w))


def _full_circle(center, radius, start_angle=0.0, clockwise=False):
    span = -TWO_PI if clockwise else TWO_PI
    return (ArcSeg(center, radius, start_angle, start_angle + span),)


def _require_lift_closed(curve, loop):
    if not is_closed_on_surface(curve, loop):
        raise ChainNotClosed(
            f"lift of the {loop.kind} loop based at {loop.base_zeta} does not close"
        )
    return loop


def default_branch_radius(curve):
    return curve.length_scale / 4.0


def default_infinity_radius(curve):
    return 2.0 * (max(abs(ai) for ai in curve.a) + 1.0)


def default_fiber_radius(curve, z):
    return min(curve.length_scale, curve.min_branch_distance(z)) / 4.0


def loop_around_branch_point(curve, nu, radius=None, start_sheet=0):
    """Counterclockwise circle around a_nu, wound m times so the lift closes.

    nu is 1-based.  The radius must stay below sep/2 so no other branch
    point is enclosed, and above the exclusion radius.
    """
    if not 1 <= nu <= curve.N:
        raise ConfigError(f"branch index nu={nu} out of range 1..{curve.N}")
    if not 0 <= start_sheet < curve.m:
        raise ConfigError(f"start_sheet={start_sheet} out of range 0..{curve.m - 1}")
    if radius is None:
        radius = default_branch_radius(curve)
    if radius >= curve.sep / 2.0:
        raise RadiusTooLarge(
            f"radius {radius:.3g} around a_{nu} reaches other branch points (sep={curve.sep:.3g})"
        )
    if radius <= curve.exclusion_radius:
        raise RadiusTooSmall(
            f"radius {radius:.3g} is inside the exclusion radius around a_{nu}"
        )
    center = curve.a[nu - 1]
    base = center + radius
    w0 = fiber(curve, base)[start_sheet].w
    loop = SheetedLoop(
        _full_circle(center, radius),
        w0,
        windings=curve.m,
        kind="branch",
        label=nu,
        anchor=center,
        radius=radius,
    )
    return _require_lift_closed(curve, loop)


def loop_around_infinity(curve, alpha, radius=None, start_sheet=None):
    """Clockwise (in zeta) circle of m1 windings around the infinity point
    of class alpha, positively oriented in the local coordinate there.

    Sheet classes modulo s = gcd(m, N) select the s points at infinity;
    class alpha is pinned to start_sheet = alpha - 1 by default.
    """
    sc = structure_constants(curve)
    if not 1 <= alpha <= sc.s:
        raise ConfigError(f"infinity index alpha={alpha} out of range 1..{sc.s}")
    if radius is None:
        radius = default_infinity_radius(curve)
    margin = curve.sep if math.isfinite(curve.sep) else 1.0
    if radius <= max(abs(ai) for ai in curve.a) + margin:
        raise RadiusTooSmall(
            f"radius {radius:.3g} does not safely enclose all branch points"
        )
    if start_sheet is None:
        start_sheet = alpha - 1
    if not 0 <= start_sheet < curve.m:
        raise ConfigError(f"start_sheet={start_sheet} out of range 0..{curve.m - 1}")
    if start_sheet % sc.s != (alpha - 1) % sc.s:
        raise ConfigError(
            f"start_sheet={start_sheet} belongs to infinity class "
            f"{start_sheet % sc.s + 1}, not alpha={alpha}"
        )
    base = complex(radius, 0.0)
    w0 = fiber(curve, base)[start_sheet].w
    loop = SheetedLoop(
        _full_circle(0.0, radius, clockwise=True),
        w0,
        windings=sc.m1,
        kind="infinity",
        label=alpha,
        anchor=0.0,
        radius=radius,
    )
    return _require_lift_closed(curve, loop)


def loop_around_fiber_point(curve, z, t, radius=None):
    """Counterclockwise unit-winding circle around sheet t of the fiber over z.

    The starting sheet value is the continuation of fiber(z)[t] out to the
    circle, so the enclosed surface point is exactly that fiber point.
    """
    if not 0 <= t < curve.m:
        raise ConfigError(f"fiber sheet t={t} out of range 0..{curve.m - 1}")
    dist = curve.min_branch_distance(z)
    if radius is None:
        radius = default_fiber_radius(curve, z)
    if radius >= min(curve.sep, dist) / 2.0:
        raise RadiusTooLarge(
            f"radius {radius:.3g} around the fiber over {z} reaches a branch point"
        )
    if radius <= curve.exclusion_radius:
        raise RadiusTooSmall(f"radius {radius:.3g} below the exclusion radius")
    w_center = fiber(curve, z)[t].w
    base = z + radius
    w0 = continue_along(curve, lambda s: z + s * radius, 0.0, 1.0, w_center)
    loop = SheetedLoop(
        _full_circle(z, radius),
        w0,
        windings=1,
        kind="fiber",
        label=t,
        anchor=z,
        radius=radius,
    )
    return _require_lift_closed(curve, loop)


def polyline_loop(curve, vertices, windings=1, start_sheet=0):
    """Closed polyline through `vertices`, sheet-tracked from the first vertex."""
    pts = [complex(v) for v in vertices]
    if len(pts) < 2:
        raise ConfigError("a polyline loop needs at least two vertices")
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    segs = tuple(LineSeg(z0, z1) for z0, z1 in zip(pts[:-1], pts[1:]))
    w0 = fiber(curve, pts[0])[start_sheet].w
    loop = SheetedLoop(segs, w0, windings=windings, kind="path")
    return _require_lift_closed(curve, loop)


def planar_winding_number(loop, z0):
    """Winding number of the wound planar path around z0."""
    total = 0.0
    for seg in loop.pieces():
        total += _segment_winding(seg, z0)
    return round(total / TWO_PI)


def _segment_winding(seg, z0, samples=64):
    while True:
        incs = []
        prev = seg.at(0.0) - z0
        ok = True
        for k in range(1, samples + 1):
            cur = seg.at(k / samples) - z0
            inc = cmath.phase(cur / prev)
            if abs(inc) > math.pi / 2:
                ok = False
                break
            incs.append(inc)
            prev = cur
        if ok:
            return sum(incs)
        samples *= 2
        if samples > 1 << 20:
            raise ConfigError("winding-number computation did not stabilize")
