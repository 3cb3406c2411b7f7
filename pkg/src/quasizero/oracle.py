"""Certified zero counting via the argument principle.

f is entire, so the number of zeros inside a closed contour equals the total
change of arg(f) around it divided by 2*pi.  The walkers here sample f along
the contour and recursively bisect every piece until the phase change between
neighbouring samples is below pi/2; the accumulated change is then guaranteed
to be the true winding provided f never vanishes on the contour itself.  The
phase is computed by factoring out whichever term of f dominates, so contours
far out in the plane are handled without overflow.

This counter is the independent certificate for the refinement pipeline: it
never looks inside the refiners, only at values of f along curves.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .core import Quasipolynomial
from .errors import (
    BoundaryZeroError,
    DepthExceededError,
    InvalidQueryError,
    QuasizeroError,
    WindingError,
)

#: adjacent boundary samples must differ in phase by less than this
PHASE_STEP_LIMIT = math.pi / 2

#: contours are pre-sampled at least this densely (in arc length) before the
#: adaptive test runs; the phase rate of f away from its zeros is of order
#: max(1, k/|lambda|), so quarter-unit pieces keep the true per-piece change
#: under pi/2 and the wrapped-step test honest (a coarser start can alias a
#: whole turn into an apparently small step)
INITIAL_PIECE_LENGTH = 0.25

#: a contour sample with |f| below this, relative to the dominant term of f,
#: is treated as "zero on the boundary"
BOUNDARY_REL_TOL = 1e-12

#: the accumulated phase divided by 2*pi must be this close to an integer
WINDING_INT_TOL = 1e-6

#: default and minimum adaptive bisection depth per contour piece
DEFAULT_MAX_DEPTH = 24
MIN_MAX_DEPTH = 8

#: deterministic relative offsets tried for interior split lines when a zero
#: lands on one (first entry is the unjittered split)
_SPLIT_JITTER = ((0.0, 0.0), (1e-4, 1e-4), (-2e-4, 1.5e-4), (2.5e-4, -2e-4))


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle [re_lo, re_hi] x [im_lo, im_hi]."""

    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self) -> None:
        vals = (self.re_lo, self.re_hi, self.im_lo, self.im_hi)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidQueryError(f"rectangle must be finite, got {vals!r}")
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise InvalidQueryError(f"rectangle must be nondegenerate, got {vals!r}")

    @property
    def width(self) -> float:
        return self.re_hi - self.re_lo

    @property
    def height(self) -> float:
        return self.im_hi - self.im_lo

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))

    def corners(self) -> tuple[complex, complex, complex, complex]:
        """Counterclockwise, starting at the bottom-left corner."""
        return (
            complex(self.re_lo, self.im_lo),
            complex(self.re_hi, self.im_lo),
            complex(self.re_hi, self.im_hi),
            complex(self.re_lo, self.im_hi),
        )

    def contains(self, lam: complex, pad: float = 0.0) -> bool:
        return (
            self.re_lo - pad <= lam.real <= self.re_hi + pad
            and self.im_lo - pad <= lam.imag <= self.im_hi + pad
        )

    def split_at(self, cx: float, cy: float) -> tuple["Rect", "Rect", "Rect", "Rect"]:
        """Four sub-rectangles sharing the interior point (cx, cy)."""
        if not (self.re_lo < cx < self.re_hi and self.im_lo < cy < self.im_hi):
            raise InvalidQueryError("split point must be interior")
        return (
            Rect(self.re_lo, cx, self.im_lo, cy),
            Rect(cx, self.re_hi, self.im_lo, cy),
            Rect(self.re_lo, cx, cy, self.im_hi),
            Rect(cx, self.re_hi, cy, self.im_hi),
        )


@dataclass(frozen=True)
class Disk:
    """Closed disk |lambda - center| <= radius."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidQueryError(f"radius must be finite and > 0, got {self.radius!r}")
        c = complex(self.center)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise InvalidQueryError(f"center must be finite, got {c!r}")
        object.__setattr__(self, "center", c)


@dataclass(frozen=True)
class ContourCount:
    """Certified count with the diagnostics of the walk that produced it.

    min_boundary_mag is the smallest |f| seen on the contour, measured
    relative to max(|e^lambda|, |a*lambda^k|) so that it stays meaningful on
    contours whose absolute |f| is astronomically large.
    """

    count: int
    contour: Rect | Disk
    edge_segments: int
    min_boundary_mag: float


class _WalkStats:
    __slots__ = ("segments", "min_mag", "min_mag_point", "evals")

    def __init__(self) -> None:
        self.segments = 0
        self.min_mag = math.inf
        self.min_mag_point = 0j
        self.evals = 0


def _phase_and_relmag(q: Quasipolynomial, lam: complex) -> tuple[float, float]:
    """(arg f(lambda) wrapped to [-pi, pi], |f| / dominant-term magnitude).

    Writes f = exp(dom) * (1 + exp(sub - dom)) with dom, sub the complex logs
    of the two terms ordered by real part, so both factors are representable
    on any contour.
    """
    if lam == 0:
        return 0.0, 1.0  # f(0) = 1
    t_exp = lam
    t_alg = cmath.log(q.a) + q.k * cmath.log(lam)
    if t_exp.real >= t_alg.real:
        dom, sub = t_exp, t_alg
    else:
        dom, sub = t_alg, t_exp
    remainder = 1.0 + cmath.exp(sub - dom)
    relmag = abs(remainder)
    if relmag == 0.0:
        raise BoundaryZeroError(
            f"f vanished at contour point {lam!r}", point=lam, magnitude=0.0
        )
    phase = math.remainder(dom.imag + cmath.phase(remainder), math.tau)
    return phase, relmag


def _eval_point(
    q: Quasipolynomial, lam: complex, stats: _WalkStats
) -> tuple[float, float]:
    ph, mag = _phase_and_relmag(q, lam)
    stats.evals += 1
    if mag < stats.min_mag:
        stats.min_mag = mag
        stats.min_mag_point = lam
    return ph, mag


def _walk_piece(
    q: Quasipolynomial,
    point_of: Callable[[float], complex],
    t0: float,
    f0: tuple[float, float],
    t1: float,
    f1: tuple[float, float],
    depth: int,
    stats: _WalkStats,
) -> float:
    """Accumulated phase change along one contour piece, bisecting as needed."""
    d = math.remainder(f1[0] - f0[0], math.tau)
    if abs(d) < PHASE_STEP_LIMIT:
        stats.segments += 1
        return d
    if depth <= 0:
        if stats.min_mag < BOUNDARY_REL_TOL:
            raise BoundaryZeroError(
                "phase unresolved near a vanishing |f| on the contour "
                f"(relative |f| = {stats.min_mag:.3e} at {stats.min_mag_point!r})",
                point=stats.min_mag_point,
                magnitude=stats.min_mag,
            )
        raise DepthExceededError(
            f"phase step {abs(d):.3f} >= pi/2 after exhausting bisection depth "
            f"near {point_of(0.5 * (t0 + t1))!r}"
        )
    tm = 0.5 * (t0 + t1)
    fm = _eval_point(q, point_of(tm), stats)
    return _walk_piece(q, point_of, t0, f0, tm, fm, depth - 1, stats) + _walk_piece(
        q, point_of, tm, fm, t1, f1, depth - 1, stats
    )


def _walk_segment(
    q: Quasipolynomial,
    point_of: Callable[[float], complex],
    length: float,
    f0: tuple[float, float],
    f1: tuple[float, float],
    max_depth: int,
    stats: _WalkStats,
) -> float:
    """Phase change over point_of([0, 1]), pre-split to the minimum density."""
    n = max(1, math.ceil(length / INITIAL_PIECE_LENGTH))
    knots = [i / n for i in range(n + 1)]
    values = [f0]
    values.extend(_eval_point(q, point_of(t), stats) for t in knots[1:-1])
    values.append(f1)
    return sum(
        _walk_piece(
            q, point_of, knots[i], values[i], knots[i + 1], values[i + 1],
            max_depth, stats,
        )
        for i in range(n)
    )


def _winding_to_count(total_phase: float) -> int:
    quotient = total_phase / math.tau
    nearest = round(quotient)
    if abs(quotient - nearest) > WINDING_INT_TOL:
        raise WindingError(
            f"boundary phase sum {total_phase!r} is {quotient:.9f} turns, "
            "not within tolerance of an integer"
        )
    if nearest < 0:
        raise WindingError(f"negative winding {nearest} for an entire function")
    return int(nearest)


def count_zeros_rect(
    q: Quasipolynomial, rect: Rect, max_depth: int = DEFAULT_MAX_DEPTH
) -> ContourCount:
    """Number of zeros of f inside rect, certified by the argument principle.

    The boundary is walked counterclockwise; each edge is bisected until
    adjacent phase samples differ by less than pi/2.  Raises BoundaryZeroError
    when |f| (relative to its dominant term) drops below 1e-12 on the contour
    (perturb the rectangle and retry), DepthExceededError when bisection depth
    runs out away from a vanishing |f|, and WindingError if the accumulated
    phase fails the integer consistency check.
    """
    if max_depth < MIN_MAX_DEPTH:
        raise InvalidQueryError(f"max_depth must be >= {MIN_MAX_DEPTH}, got {max_depth}")
    stats = _WalkStats()
    corners = rect.corners()
    values = [_eval_point(q, c, stats) for c in corners]
    total = 0.0
    for i in range(4):
        p0, p1 = corners[i], corners[(i + 1) % 4]
        f0, f1 = values[i], values[(i + 1) % 4]

        def point_of(t: float, p0: complex = p0, p1: complex = p1) -> complex:
            return p0 + t * (p1 - p0)

        total += _walk_segment(
            q, point_of, abs(p1 - p0), f0, f1, max_depth, stats
        )
    count = _winding_to_count(total)
    return ContourCount(count, rect, stats.segments, stats.min_mag)


def count_zeros_disk(
    q: Quasipolynomial,
    center: complex,
    radius: float,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ContourCount:
    """Number of zeros of f inside the disk |lambda - center| <= radius."""
    if max_depth < MIN_MAX_DEPTH:
        raise InvalidQueryError(f"max_depth must be >= {MIN_MAX_DEPTH}, got {max_depth}")
    disk = Disk(complex(center), float(radius))
    stats = _WalkStats()

    def point_of(t: float) -> complex:
        return disk.center + disk.radius * cmath.exp(1j * t)

    anchors = [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi, math.tau]
    values = [_eval_point(q, point_of(t), stats) for t in anchors[:4]]
    values.append(values[0])
    quarter_arc = 0.5 * math.pi * disk.radius
    total = 0.0
    for i in range(4):
        t_lo, t_hi = anchors[i], anchors[i + 1]

        def arc_point(t: float, t_lo: float = t_lo, t_hi: float = t_hi) -> complex:
            return point_of(t_lo + t * (t_hi - t_lo))

        total += _walk_segment(
            q, arc_point, quarter_arc, values[i], values[i + 1], max_depth, stats
        )
    count = _winding_to_count(total)
    return ContourCount(count, disk, stats.segments, stats.min_mag)


def isolate_zeros(
    q: Quasipolynomial,
    rect: Rect,
    eps: float,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_subdivisions: int = 64,
) -> list[Rect]:
    """Quadtree isolation: disjoint boxes of diameter <= eps, one zero each.

    Boxes counting 0 are dropped; boxes counting 1 with diameter <= eps are
    returned; everything else is split into four children.  When a zero lands
    on an interior split line (BoundaryZeroError from a child count), the
    split point is retried at a fixed sequence of relative jitters before the
    error is allowed to escape.  The union of returned boxes accounts for
    every zero of the root rectangle.
    """
    if not (eps > 0 and math.isfinite(eps)):
        raise InvalidQueryError(f"eps must be finite and > 0, got {eps!r}")
    root = count_zeros_rect(q, rect, max_depth)
    out: list[Rect] = []
    stack: list[tuple[Rect, int, int]] = [(rect, root.count, 0)]
    while stack:
        box, count, level = stack.pop()
        if count == 0:
            continue
        if count == 1 and box.diameter <= eps:
            out.append(box)
            continue
        if level >= max_subdivisions:
            raise DepthExceededError(
                f"{count} zero(s) not separated after {max_subdivisions} subdivisions "
                f"around {box.center!r}"
            )
        # A zero on a split line usually surfaces as DepthExceededError (the
        # 1e-12 boundary classification needs a sample almost exactly on the
        # zero), so both failures trigger the jitter retry.
        last_err: QuasizeroError | None = None
        for dx, dy in _SPLIT_JITTER:
            cx = box.center.real + dx * box.width
            cy = box.center.imag + dy * box.height
            children = box.split_at(cx, cy)
            try:
                counts = [count_zeros_rect(q, ch, max_depth).count for ch in children]
            except (BoundaryZeroError, DepthExceededError) as err:
                last_err = err
                continue
            break
        else:
            assert last_err is not None
            raise last_err
        if sum(counts) != count:
            raise WindingError(
                f"child counts {counts} do not add up to parent count {count}"
            )
        for child, child_count in zip(children, counts):
            stack.append((child, child_count, level + 1))
    out.sort(key=lambda b: (b.center.imag, b.center.real))
    return out
