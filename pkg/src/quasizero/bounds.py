"""Sampled verification of the lower bounds and band geometry.

Three Monte Carlo checks, all driven by a counter-based (Philox) generator so
that identical seeds reproduce reports bit for bit:

* eq3: on the tail T1 (sigma_1 < -h, h above ln(2/|a|)) the algebraic term
  dominates and |f| >= 0.5 * |a||lambda|^k.  Sampled as min ratio_alg >= 0.5.
* eq4: on the far field sigma_1 > h with h above ln(2|a|) the exponential
  term dominates and |f| >= 0.5 * |e^lambda|.  Sampled as min ratio_exp >= 0.5.
* eq7: on the band punctured by delta-disks around the zeros, |f| stays above
  a positive multiple of |a||lambda|^k; the smallest sampled ratio_alg is the
  estimate of that constant, reported (not asserted against any external
  value) together with a doubled-sample stability check.

The quadrangle helper cuts the band into cells by horizontal lines placed
pi + k*pi/2 + arg(a) below consecutive refined zeros; each cell contains
exactly one chain zero and its diagonal approaches sqrt(4*pi^2 + 4*h^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Quasipolynomial, ratio_alg, ratio_exp
from .errors import (
    BoundaryZeroError,
    DeltaTooLargeError,
    DepthExceededError,
    EmptyRegionError,
    EmptySampleError,
    InvalidIndexError,
    InvalidQueryError,
)
from .regions import gamma_abscissa, min_h_t1, min_h_t2
from .zeros import asymptotic_guess, enumerate_zeros, newton_refine, nu_min, small_zeros

#: sampled lower-bound threshold shared by eq3 and eq4
HALF_THRESHOLD = 0.5

#: give up on a region after this many consecutive rejected draws
MAX_CONSECUTIVE_REJECTS = 100_000

#: default half-width of the sampling window around the origin
DEFAULT_WINDOW = 1000.0

_CHUNK = 8192


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one sampled inequality check.

    analytic_floor is only set for eq3 (the sharper provable bound
    1 - e^(-h)/|a|); stability_ratio only for eq7 (doubled-sample estimate
    divided by the reported one).
    """

    inequality_id: str
    samples: int
    min_ratio: float
    threshold: float
    worst_point: complex
    passed: bool
    seed: int
    analytic_floor: float | None = None
    stability_ratio: float | None = None


@dataclass(frozen=True)
class QuadrangleGeom:
    """One band cell: counterclockwise corners and the longest diagonal."""

    nu: int
    corners: tuple[complex, complex, complex, complex]
    diag: float


def _philox(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; distinct streams never share draws."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(stream)])
    return np.random.Generator(np.random.Philox(key=key))


def _rejection_sample(
    rng: np.random.Generator,
    hull: tuple[float, float, float, float],
    accept: Callable[[np.ndarray, np.ndarray], np.ndarray],
    n: int,
    what: str,
) -> np.ndarray:
    """n accepted points (complex array) drawn uniformly from the hull box."""
    x_lo, x_hi, y_lo, y_hi = hull
    if not (x_lo < x_hi and y_lo < y_hi):
        raise EmptyRegionError(f"degenerate sampling hull for {what}")
    kept: list[np.ndarray] = []
    taken = 0
    consecutive_rejects = 0
    while taken < n:
        xs = rng.uniform(x_lo, x_hi, _CHUNK)
        ys = rng.uniform(y_lo, y_hi, _CHUNK)
        mask = accept(xs, ys)
        hits = int(mask.sum())
        if hits == 0:
            consecutive_rejects += _CHUNK
            if consecutive_rejects >= MAX_CONSECUTIVE_REJECTS:
                raise EmptyRegionError(
                    f"no point of {what} found in {consecutive_rejects} draws"
                )
            continue
        consecutive_rejects = 0
        kept.append((xs + 1j * ys)[mask])
        taken += hits
    return np.concatenate(kept)[:n]


def _sigma1(q: Quasipolynomial, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    rr = xs * xs + ys * ys
    return xs - 0.5 * q.k * np.log(rr)


def _ratio_alg_batch(q: Quasipolynomial, lam: np.ndarray) -> np.ndarray:
    """Vectorized |1 + e^(lambda - k Log lambda)/a| with the exponent clipped.

    Clipping only fires where the true ratio is astronomically large or
    saturated at 1, never near a minimum, so min/argmin selection is exact.
    """
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        u = lam - q.k * np.log(lam) - np.log(complex(q.a))
        u = np.clip(u.real, -745.0, 700.0) + 1j * u.imag
        return np.abs(1.0 + np.exp(u))


def _ratio_exp_batch(q: Quasipolynomial, lam: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        u = q.k * np.log(lam) + np.log(complex(q.a)) - lam
        u = np.clip(u.real, -745.0, 700.0) + 1j * u.imag
        return np.abs(1.0 + np.exp(u))


def _finish_report(
    inequality_id: str,
    q: Quasipolynomial,
    lam: np.ndarray,
    ratios: np.ndarray,
    threshold: float,
    seed: int,
    scalar_ratio: Callable[[Quasipolynomial, complex], float],
    **extra: float | None,
) -> BoundReport:
    i = int(np.argmin(ratios))
    worst = complex(lam[i])
    # report the scalar-path value at the worst point so the number matches
    # what ratio_alg / ratio_exp return for it
    min_ratio = float(scalar_ratio(q, worst))
    return BoundReport(
        inequality_id=inequality_id,
        samples=int(lam.size),
        min_ratio=min_ratio,
        threshold=threshold,
        worst_point=worst,
        passed=min_ratio >= threshold if threshold > 0 else min_ratio > 0,
        seed=seed,
        **extra,
    )


def verify_eq3(
    q: Quasipolynomial,
    h: float,
    r: float,
    n: int,
    seed: int,
    window: float = DEFAULT_WINDOW,
) -> BoundReport:
    """Sampled check of |f| >= 0.5*|a||lambda|^k on T1 within |lambda| <= window.

    Requires h > ln(2/|a|) so the bound is provable; the report also carries
    the sharper analytic floor 1 - e^(-h)/|a|.
    """
    if n <= 0:
        raise EmptySampleError(f"need at least one sample, got n = {n}")
    threshold_h = min_h_t1(q)
    if not h > threshold_h:
        raise InvalidQueryError(
            f"eq3 needs h > ln(2/|a|) = {threshold_h:.6g}, got h = {h!r}"
        )
    if not (r > 0 and window > r):
        raise EmptyRegionError(
            f"window {window!r} leaves no room outside the inner disk R = {r!r}"
        )
    w2, r2 = window * window, r * r

    def accept(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        rr = xs * xs + ys * ys
        with np.errstate(divide="ignore", invalid="ignore"):
            sig = xs - 0.5 * q.k * np.log(rr)
        return (rr <= w2) & (rr > r2) & (sig < -h)

    rng = _philox(seed)
    lam = _rejection_sample(rng, (-window, window, -window, window), accept, n, "T1")
    ratios = _ratio_alg_batch(q, lam)
    floor = 1.0 - math.exp(-h) / abs(q.a)
    return _finish_report(
        "eq3", q, lam, ratios, HALF_THRESHOLD, seed, ratio_alg, analytic_floor=floor
    )


def verify_eq4(
    q: Quasipolynomial,
    h: float,
    r: float,
    n: int,
    seed: int,
    window: float = DEFAULT_WINDOW,
    printed_set: bool = False,
) -> BoundReport:
    """Sampled check of |f| >= 0.5*|e^lambda| on the far field sigma_1 > h.

    Requires h > ln(2|a|).  With printed_set=True the sampling region is
    sigma_2 > h instead; that variant is informational only (the region
    contains the large zeros, so the inequality genuinely fails there) and
    its report should be read, not asserted.
    """
    if n <= 0:
        raise EmptySampleError(f"need at least one sample, got n = {n}")
    threshold_h = min_h_t2(q)
    if not h > threshold_h:
        raise InvalidQueryError(
            f"eq4 needs h > ln(2|a|) = {threshold_h:.6g}, got h = {h!r}"
        )
    if not (r > 0 and window > r):
        raise EmptyRegionError(
            f"window {window!r} leaves no room outside the inner disk R = {r!r}"
        )
    w2, r2 = window * window, r * r

    def accept(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        rr = xs * xs + ys * ys
        with np.errstate(divide="ignore", invalid="ignore"):
            klog = 0.5 * q.k * np.log(rr)
            sig = xs + klog if printed_set else xs - klog
        return (rr <= w2) & (rr > r2) & (sig > h)

    rng = _philox(seed)
    region = "sigma_2 > h" if printed_set else "sigma_1 > h"
    lam = _rejection_sample(rng, (-window, window, -window, window), accept, n, region)
    ratios = _ratio_exp_batch(q, lam)
    ident = "eq4-printed" if printed_set else "eq4"
    return _finish_report(ident, q, lam, ratios, HALF_THRESHOLD, seed, ratio_exp)


def _collect_band_zeros(q: Quasipolynomial, nu_hi: int) -> list[complex]:
    """Refined zeros covering the band up to |Im| = 2*pi*nu_hi.

    Chain indices |nu| in [nu_min, nu_hi] come from the enumerator; whatever
    lives below the first chain zero is picked up by certified small-zero
    isolation on a disk whose radius is nudged until its boundary is clear of
    zeros.
    """
    records = enumerate_zeros(q, -nu_hi, nu_hi)
    zeros = [rec.refined for rec in records]
    base = math.tau * (nu_min(q) + 0.75)
    small: list[complex] | None = None
    last_err: Exception | None = None
    for bump in range(8):
        try:
            small = small_zeros(q, base + 0.5 * bump)
        except (BoundaryZeroError, DepthExceededError) as err:
            last_err = err
            continue
        break
    if small is None:
        assert last_err is not None
        raise last_err
    for z in small:
        if all(abs(z - existing) > 1e-6 for existing in zeros):
            zeros.append(z)
    return zeros


def estimate_c_delta(
    q: Quasipolynomial,
    h: float,
    r: float,
    delta: float,
    nu_hi: int,
    n: int,
    seed: int,
) -> BoundReport:
    """Smallest sampled ratio_alg on the band punctured at the zeros.

    Samples the band |sigma_1| <= h, |lambda| > R, |Im| <= 2*pi*nu_hi,
    rejecting points within delta of any refined zero; the minimum ratio is
    the estimate of the positive constant bounding |f|/(|a||lambda|^k) there.
    The estimate is re-run with doubled samples on an independent stream and
    the quotient reported as stability_ratio.  delta must stay below half the
    minimum nearest-zero gap (DeltaTooLargeError otherwise).
    """
    if n <= 0:
        raise EmptySampleError(f"need at least one sample, got n = {n}")
    if not (delta > 0 and math.isfinite(delta)):
        raise InvalidQueryError(f"delta must be finite and > 0, got {delta!r}")
    if not (r > 0 and math.isfinite(r)):
        raise InvalidQueryError(f"R must be finite and > 0, got {r!r}")
    if not h > abs(q.log_abs_a):
        raise InvalidQueryError(
            f"band must contain the zero curve: need h > |ln|a|| = "
            f"{abs(q.log_abs_a):.6g}, got h = {h!r}"
        )
    if nu_hi < nu_min(q):
        raise InvalidIndexError(f"nu_hi must be >= nu_min = {nu_min(q)}, got {nu_hi}")

    zeros = _collect_band_zeros(q, nu_hi)
    zs = np.array(zeros, dtype=complex)
    gap_min = min(
        abs(a - b) for i, a in enumerate(zeros) for b in zeros[i + 1 :]
    )
    if not delta < 0.5 * gap_min:
        raise DeltaTooLargeError(
            f"delta = {delta!r} >= half the minimum zero gap {gap_min:.6g}"
        )

    y_max = math.tau * nu_hi
    x_lo = -h + q.k * min(0.0, math.log(r)) - 1.0
    x_hi = h + q.k * math.log(3.0 * y_max + 10.0) + 1.0
    r2 = r * r

    def accept(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        rr = xs * xs + ys * ys
        with np.errstate(divide="ignore", invalid="ignore"):
            sig = xs - 0.5 * q.k * np.log(rr)
        ok = (np.abs(ys) <= y_max) & (rr > r2) & (np.abs(sig) <= h)
        if ok.any():
            lam = (xs + 1j * ys)[ok]
            dist = np.abs(lam[:, None] - zs[None, :]).min(axis=1)
            ok[ok] = dist > delta
        return ok

    hull = (x_lo, x_hi, -y_max, y_max)

    def run(stream: int, count: int) -> tuple[np.ndarray, np.ndarray]:
        lam = _rejection_sample(
            _philox(seed, stream), hull, accept, count, "punctured band"
        )
        return lam, _ratio_alg_batch(q, lam)

    lam, ratios = run(0, n)
    lam2, ratios2 = run(1, 2 * n)
    second = float(ratios2.min())
    report = _finish_report(
        "eq7", q, lam, ratios, 0.0, seed, ratio_alg,
        stability_ratio=(second / float(ratios.min())) if ratios.min() > 0 else None,
    )
    return report


#: vertical distance from a chain zero down to its cut line
def _cut_offset(q: Quasipolynomial) -> float:
    # The raw offset pi + k*pi/2 + arg(a) can exceed one 2*pi period (for
    # example k = 2 with arg(a) = pi/4 gives 2.25*pi); reduced into
    # (0, 2*pi], the strip between consecutive cut lines is exactly one
    # period tall and brackets its own zero.
    raw = math.pi + q.k * math.pi / 2.0 + q.arg_a
    reduced = raw - math.tau * math.floor(raw / math.tau)
    return reduced if reduced > 0.0 else math.tau


def quadrangle(q: Quasipolynomial, nu: int, h: float) -> QuadrangleGeom:
    """The band cell containing the chain zero of index nu.

    Horizontal cut lines sit pi + k*pi/2 + arg(a), reduced into (0, 2*pi],
    below the refined zeros of indices nu and nu + 1 (mirrored through
    conjugation for nu < 0); the four corners solve sigma_1 = -h and
    sigma_1 = +h on those lines, ordered counterclockwise from the
    bottom-left.  diag is the longest diagonal, which approaches
    sqrt(4*pi^2 + 4*h^2) as |nu| grows.
    """
    if not isinstance(nu, int) or isinstance(nu, bool):
        raise InvalidIndexError(f"nu must be an integer, got {nu!r}")
    if abs(nu) < nu_min(q):
        raise InvalidIndexError(f"|nu| must be >= nu_min = {nu_min(q)}, got {nu}")
    if not h > abs(q.log_abs_a):
        raise InvalidQueryError(
            f"band must contain the zero curve: need h > |ln|a|| = "
            f"{abs(q.log_abs_a):.6g}, got h = {h!r}"
        )
    if nu < 0:
        mirrored = quadrangle(q.conjugate(), -nu, h)
        bl, br, tr, tl = mirrored.corners
        corners = (
            tl.conjugate(),
            tr.conjugate(),
            br.conjugate(),
            bl.conjugate(),
        )
        return QuadrangleGeom(nu=nu, corners=corners, diag=mirrored.diag)

    z_lo = newton_refine(q, asymptotic_guess(q, nu)).refined
    z_hi = newton_refine(q, asymptotic_guess(q, nu + 1)).refined
    offset = _cut_offset(q)
    y_lo = z_lo.imag - offset
    y_hi = z_hi.imag - offset
    bl = complex(gamma_abscissa(q, 1, -h, y_lo), y_lo)
    br = complex(gamma_abscissa(q, 1, h, y_lo), y_lo)
    tr = complex(gamma_abscissa(q, 1, h, y_hi), y_hi)
    tl = complex(gamma_abscissa(q, 1, -h, y_hi), y_hi)
    corners = (bl, br, tr, tl)
    diag = max(
        abs(p - s) for i, p in enumerate(corners) for s in corners[i + 1 :]
    )
    return QuadrangleGeom(nu=nu, corners=corners, diag=diag)
