"""Radii and heights entering the barrier arguments: the sphere radius R_S,
the cylinder radius R_C, the epsilon search, h*, rho*, delta and the
limacon-based lower bound on r_min."""
from dataclasses import dataclass

import numpy as np

from .limacon import ell
from .quadrature import NumericalFailure, integrate_segments, value_panels
from .rot_profile import (InadmissibleParameters, ProfileParams, critical_curvature,
                          lambda_eval, profile_domain)
from .special_integrals import I_quad
from .trans_profile import TranslationParams, trans_domain

__all__ = [
    "BarrierReport", "sphere_radius", "sphere_half_height", "cylinder_radius",
    "find_epsilon", "h_star", "annulus_rho_minus", "rho_star", "delta_bound",
    "r_min_bound", "barrier_report",
]

EPS_FLOOR = 1e-12
RHO_STAR_TOL = 1e-10


def _require_super(n, r, H):
    if not (n == r or H > critical_curvature(n, r)):
        raise InadmissibleParameters(f"H={H} is not supercritical for n={n}, r={r}")


def sphere_radius(n: int, r: int, H: float) -> float:
    """rho_+ of the d = 0 profile."""
    _require_super(n, r, H)
    return profile_domain(ProfileParams(n, r, H, 0.0)).rho_plus


def sphere_half_height(n: int, r: int, H: float) -> float:
    p = ProfileParams(n, r, H, 0.0)
    return lambda_eval(p, profile_domain(p).rho_plus)


def cylinder_radius(n: int, r: int, H: float, epsilon: float) -> float:
    """R_C = rho_+^eps - eps."""
    p = TranslationParams(n, r, H, epsilon)
    return trans_domain(p) - p.lower


def find_epsilon(n: int, r: int, H: float):
    """Largest eps = 2^-k (k = 0, 1, ...) with R_C(eps) < R_S.

    Returns (eps, R_C, R_S).  Raises ``NumericalFailure`` if no eps above
    1e-12 works.
    """
    if r < 2 or r > n:
        raise ValueError(f"the epsilon search needs n >= r > 1, got n={n}, r={r}")
    _require_super(n, r, H)
    R_S = sphere_radius(n, r, H)
    eps = 1.0
    while eps >= EPS_FLOOR:
        R_C = cylinder_radius(n, r, H, eps)
        if R_C < R_S:
            return eps, R_C, R_S
        eps *= 0.5
    raise NumericalFailure(f"no epsilon >= {EPS_FLOOR} gives R_C < R_S for n={n}, r={r}, H={H}")


def annulus_rho_minus(n: int, r: int, d: float) -> float:
    """rho_- of the annulus used with h*: the d-profile at H = (n-r)/n for
    n > r, and d^(2/n) for n = r."""
    if not d > 0:
        raise InadmissibleParameters(f"h* needs d > 0, got {d}")
    if n == r:
        if not d < 1:
            raise InadmissibleParameters(f"need d < 1 when n = r, got {d}")
        return d ** (2.0 / n)
    H = critical_curvature(n, r)
    return profile_domain(ProfileParams(n, r, H, d, regime="critical")).rho_minus


def h_star(n: int, r: int, d: float) -> float:
    """Height of the annulus portion over [rho_-, 2 rho_-]:

    int ((n-r) I + d)^(1/r) / sinh^((n-r)/r)   for n > r,   d^(3/n) for n = r.
    """
    rho_m = annulus_rho_minus(n, r, d)
    if n == r:
        return d ** (3.0 / n)
    k = n - r

    def integrand(x, seg):
        shape = x.shape
        I = I_quad(n, r, x.ravel()).reshape(shape)
        return (k * I + d) ** (1.0 / r) / np.sinh(x) ** (k / r)

    val = integrate_segments(value_panels(integrand), [rho_m], [2.0 * rho_m])
    return float(val[0])


def rho_star(n: int, r: int, H: float, h: float) -> float:
    """Radius at which the d = 0 profile reaches height h, i.e. the rho*
    with lambda_{H,0}(rho*) = h, bisected until the height is within a
    relative 1e-10 of h."""
    _require_super(n, r, H)
    if h < 0:
        raise ValueError("h must be non-negative")
    if h == 0:
        return 0.0
    p = ProfileParams(n, r, H, 0.0)
    dom = profile_domain(p)
    half = lambda_eval(p, dom.rho_plus, dom)
    if h >= half:
        raise ValueError(f"h={h} is not below the sphere half-height {half}")
    lo, hi = 0.0, dom.rho_plus
    while True:
        mid = 0.5 * (lo + hi)
        val = lambda_eval(p, mid, dom)
        # relative in h: h* can be as small as 1e-6
        if abs(val - h) <= RHO_STAR_TOL * h or hi - lo <= 4e-16 * hi:
            return mid
        if val < h:
            lo = mid
        else:
            hi = mid


def delta_bound(n: int, r: int, H: float) -> float:
    """R_S - R_C at the epsilon from ``find_epsilon``."""
    _, R_C, R_S = find_epsilon(n, r, H)
    return R_S - R_C


def r_min_bound(r_ext: float, r_int: float) -> float:
    """Lower bound ell(r_ext, r_ext - r_int) on r_min."""
    if not (r_ext > 0 and r_int > 0):
        raise ValueError("radii must be positive")
    if r_int > r_ext:
        raise ValueError(f"need r_int <= r_ext, got {r_int} > {r_ext}")
    return ell(r_ext, r_ext - r_int)


@dataclass(frozen=True)
class BarrierReport:
    n: int
    r: int
    H: float
    d: float
    R_S: float
    R_C: float
    epsilon: float
    delta: float
    h_star: float
    rho_star: float
    rho_minus: float


def barrier_report(n: int, r: int, H: float, d: float) -> BarrierReport:
    eps, R_C, R_S = find_epsilon(n, r, H)
    h = h_star(n, r, d)
    return BarrierReport(n, r, float(H), float(d), R_S, R_C, eps, R_S - R_C, h,
                         rho_star(n, r, H, h), annulus_rho_minus(n, r, d))
