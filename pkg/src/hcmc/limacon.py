"""Hyperbolic limacon in the hyperboloid model of H^2.

The limacon of a geodesic circle of radius c centred at C = (0, 0, 1) with
respect to a base point A at distance a from C is the set of reflections
of A across the tangent lines of the circle,

    L(theta) = A - 2 q(A, nu) nu,    nu(theta) = (cosh c cos theta, cosh c sin theta, sinh c).

For a > c it has two nested loops.  ``ell(a, c)`` is the distance from the
nearest circle point X to the inner loop.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "MinkowskiPoint", "LimaconSpec", "q_form", "hyperbolic_distance",
    "limacon_point", "ell", "limacon_min_distance", "limacon_max_distance_from_center",
    "ell_monotonicity_check", "MonotonicityReport", "critical_cos_theta",
]

CLAMP = 1e-14
GOLDEN_TOL = 1e-10
GRID = 2001


class MinkowskiPoint(NamedTuple):
    x: float
    y: float
    z: float

    def on_hyperboloid(self, tol=1e-12):
        return abs(q_form(self, self) + 1.0) <= tol and self.z > 0


@dataclass(frozen=True)
class LimaconSpec:
    a: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.c)):
            raise ValueError("a and c must be finite")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if not self.a > self.c:
            raise ValueError(f"need a > c, got a={self.a}, c={self.c}")

    @property
    def A(self):
        return MinkowskiPoint(math.sinh(self.a), 0.0, math.cosh(self.a))

    @property
    def C(self):
        return MinkowskiPoint(0.0, 0.0, 1.0)

    @property
    def X(self):
        return MinkowskiPoint(math.sinh(self.c), 0.0, math.cosh(self.c))

    @property
    def radii(self):
        """(a - c, ell(a, c), a + 2c)."""
        return self.a - self.c, ell(self.a, self.c), self.a + 2.0 * self.c


def q_form(u, v):
    """Signature (2,1) form u_x v_x + u_y v_y - u_z v_z (broadcasts)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    out = u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]
    return float(out) if np.ndim(out) == 0 else out


def hyperbolic_distance(u, v):
    """Distance between hyperboloid points, via the chord length
    d = 2 asinh(|u - v|_q / 2), which stays accurate for close points."""
    diff = np.asarray(u, dtype=float) - np.asarray(v, dtype=float)
    chord2 = np.maximum(q_form(diff, diff), 0.0)
    out = 2.0 * np.arcsinh(0.5 * np.sqrt(chord2))
    return float(out) if np.ndim(out) == 0 else out


def _nu(c, theta):
    theta = np.asarray(theta, dtype=float)
    ch = math.cosh(c)
    return np.stack([ch * np.cos(theta), ch * np.sin(theta),
                     np.full(theta.shape, math.sinh(c))], axis=-1)


def limacon_point(spec: LimaconSpec, theta):
    """L(theta); a MinkowskiPoint for scalar theta, an (..., 3) array otherwise."""
    A = np.asarray(spec.A)
    nu = _nu(spec.c, theta)
    pts = A - 2.0 * np.asarray(q_form(A, nu))[..., None] * nu
    if np.ndim(theta) == 0:
        return MinkowskiPoint(*map(float, pts))
    return pts


def ell(a: float, c: float) -> float:
    """arccosh(cosh(a-c) - sinh(c)/(2 sinh a) sinh^2(a-c))."""
    if not (math.isfinite(a) and math.isfinite(c)):
        raise ValueError("a and c must be finite")
    if c < 0 or not a > c:
        raise ValueError(f"need a > c >= 0, got a={a}, c={c}")
    arg = math.cosh(a - c) - math.sinh(c) / (2.0 * math.sinh(a)) * math.sinh(a - c) ** 2
    if arg < 1.0:
        if arg < 1.0 - CLAMP:
            raise ArithmeticError(f"arccosh argument {arg} below 1 for a={a}, c={c}")
        arg = 1.0
    return math.acosh(arg)


def _golden(f, lo, hi, tol=GOLDEN_TOL, sign=1.0):
    """Minimise sign*f on [lo, hi] by golden-section search."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = sign * f(x1), sign * f(x2)
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = sign * f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = sign * f(x2)
    x = 0.5 * (lo + hi)
    return float(x), float(f(x))


def _extremum(f_vec, sign):
    grid = np.linspace(0.0, math.pi, GRID)
    vals = sign * f_vec(grid)
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, GRID - 1)]
    return _golden(lambda t: float(f_vec(np.array(t))), lo, hi, sign=sign)


def limacon_min_distance(spec: LimaconSpec):
    """(theta0, min over theta in [0, pi] of d(X, L(theta))), by a dense
    grid refined with golden-section search."""
    X = np.asarray(spec.X)
    return _extremum(lambda t: hyperbolic_distance(X, limacon_point(spec, t)), 1.0)


def limacon_max_distance_from_center(spec: LimaconSpec):
    """(theta, max over theta of d(C, L(theta)))."""
    C = np.asarray(spec.C)
    return _extremum(lambda t: hyperbolic_distance(C, limacon_point(spec, t)), -1.0)


def critical_cos_theta(a, c):
    """cos theta0 = sinh(a+c) / (2 sinh a cosh c) of the interior critical point."""
    return math.sinh(a + c) / (2.0 * math.sinh(a) * math.cosh(c))


@dataclass(frozen=True)
class MonotonicityReport:
    increasing_in_a: bool
    decreasing_in_c: bool
    bounds_hold: bool
    failures: tuple

    @property
    def ok(self):
        return self.increasing_in_a and self.decreasing_in_c and self.bounds_hold


def ell_monotonicity_check(a_values, c_values) -> MonotonicityReport:
    """Sampled checks on the grid a_values x c_values (pairs with a > c > 0):
    ell increases along a, decreases along c, and 0 < ell < a - c."""
    a_values = sorted(set(float(a) for a in a_values))
    c_values = sorted(set(float(c) for c in c_values))
    table = {(a, c): ell(a, c) for a in a_values for c in c_values if a > c > 0}
    failures = []
    inc_a = dec_c = bounds = True
    for c in c_values:
        row = [table[(a, c)] for a in a_values if (a, c) in table]
        if any(y <= x for x, y in zip(row, row[1:])):
            inc_a = False
            failures.append(("a", c))
    for a in a_values:
        col = [table[(a, c)] for c in c_values if (a, c) in table]
        if any(y >= x for x, y in zip(col, col[1:])):
            dec_c = False
            failures.append(("c", a))
    for (a, c), v in table.items():
        if not 0.0 < v < a - c:
            bounds = False
            failures.append(("bounds", a, c))
    return MonotonicityReport(inc_a, dec_c, bounds, tuple(failures))
