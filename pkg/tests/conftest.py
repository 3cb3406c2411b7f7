"""Shared numeric oracles for the test suite.

Everything here is computed by elementary, self-contained methods (bisection,
fixed-point iteration, ray casting) that do not touch the library internals,
so expected values can be cross-checked without trusting the code under test.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import pytest


def bisect_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-15,
    max_iter: int = 200,
) -> float:
    """Locate a sign change of ``fn`` on [lo, hi] by plain bisection."""
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    assert f_lo * f_hi < 0, "oracle bracket must straddle a sign change"
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol * max(1.0, abs(mid)):
            return mid
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def omega_constant() -> float:
    """The real zero of e^x + x, located by bisection on (-1, 0).

    This is the negated omega constant; it is the only zero of the k=1, a=1
    quasipolynomial inside |lambda| <= 2.
    """
    return bisect_root(lambda x: math.exp(x) + x, -1.0, 0.0)


@pytest.fixture(scope="session")
def omega() -> float:
    return omega_constant()


def point_in_polygon(pt: complex, vertices: Sequence[complex]) -> bool:
    """Crossing-number point-in-polygon test with half-open edges."""
    x, y = pt.real, pt.imag
    inside = False
    n = len(vertices)
    for i in range(n):
        p = vertices[i]
        r = vertices[(i + 1) % n]
        if (p.imag > y) != (r.imag > y):
            x_cross = p.real + (y - p.imag) * (r.real - p.real) / (r.imag - p.imag)
            if x < x_cross:
                inside = not inside
    return inside


def polygon_signed_area(vertices: Sequence[complex]) -> float:
    """Shoelace signed area; positive for counterclockwise vertex order."""
    total = 0.0
    n = len(vertices)
    for i in range(n):
        p = vertices[i]
        r = vertices[(i + 1) % n]
        total += p.real * r.imag - r.real * p.imag
    return 0.5 * total
