"""Translation-invariant profiles mu_{H,eps} (supercritical H only).

    mu(rho) = int_eps^rho (nH J)^(1/r) / sqrt(cosh^(2(n-r)/r) - (nH J)^(2/r)),

with J = J_{n,r,eps}.  The graph starts horizontally at rho = eps and
becomes vertical at rho_+^eps, where cosh^(n-r) = nH J.  For r = 1 the
integral starts at 0 and eps plays no role.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _profile_core as core
from .curvature_algebra import umbilic_split_mean_curvature
from .quadrature import bisect, expand_bracket
from .rot_profile import DomainError, InadmissibleParameters
from .special_integrals import J_quad

__all__ = [
    "TranslationParams", "trans_domain", "mu_eval", "mu_dot", "mu_ddot",
    "mu_dot_fd", "principal_curvatures", "cylinder_height", "ROOT_XTOL",
]

ROOT_XTOL = 1e-12


@dataclass(frozen=True)
class TranslationParams:
    n: int
    r: int
    H: float
    epsilon: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or int(self.r) != self.r:
            raise InadmissibleParameters("n and r must be integers")
        if self.n < 2 or not 1 <= self.r <= self.n:
            raise InadmissibleParameters(f"need n >= 2 and 1 <= r <= n, got n={self.n}, r={self.r}")
        if not (math.isfinite(self.H) and self.H > (self.n - self.r) / self.n):
            raise InadmissibleParameters(
                f"translation profiles need H > (n-r)/n = {(self.n - self.r) / self.n}, got {self.H}")
        eps = float(self.epsilon)
        if self.r > 1 and not (math.isfinite(eps) and eps > 0):
            raise InadmissibleParameters("epsilon must be positive when r > 1")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "H", float(self.H))
        object.__setattr__(self, "epsilon", 0.0 if self.r == 1 else eps)

    @property
    def lower(self):
        return self.epsilon

    def family(self):
        return core.Family(self.n, self.r, self.H, 0.0, core.KIND_TRANS, self.lower)


@lru_cache(maxsize=1024)
def trans_domain(params: TranslationParams) -> float:
    """rho_+^eps: the root of cosh^(n-r) - nH J beyond eps."""
    n, r, H, lo = params.n, params.r, params.H, params.lower
    f = lambda x: math.cosh(x) ** (n - r) - n * H * J_quad(n, r, lo, x)
    step = lo if lo > 0 else 0.05
    a, b = expand_bracket(f, lo, step, -1, limit=600.0 / max(n - 1, 1))
    return bisect(f, a, b, xtol=ROOT_XTOL)


def _span(params):
    return core.Span(params.lower, trans_domain(params), 0, 1)


def _points(params, rho):
    hi = trans_domain(params)
    x = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < params.lower) or np.any(x > hi):
        raise DomainError(f"rho outside [{params.lower}, {hi}]")
    return x


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def mu_eval(params: TranslationParams, rho, rtol=core.PROFILE_RTOL):
    x = _points(params, rho)
    return _out(core.integrate_profile(params.family(), _span(params), x, rtol=rtol))


def mu_dot(params: TranslationParams, rho):
    x = _points(params, rho)
    fam = params.family()
    G, logg = core.pointwise_state(fam, _span(params), x)
    with np.errstate(divide="ignore"):
        out = fam.slope(G, logg)
    out = np.where(x == trans_domain(params), np.inf, out)
    return _out(np.where(x == params.lower, 0.0, out))


def mu_ddot(params: TranslationParams, rho):
    """mu''; +inf at rho = eps when r > 1."""
    x = _points(params, rho)
    fam = params.family()
    G, logg = core.pointwise_state(fam, _span(params), x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = fam.second_derivative(x, G, logg)
    if params.r > 1:
        out = np.where(x == params.lower, np.inf, out)
    return _out(out)


def mu_dot_fd(params: TranslationParams, rho, step=1e-4):
    """mu' from the five-point central difference of ``mu_eval``."""
    x = _points(params, rho)
    offs = np.array([-2.0, -1.0, 1.0, 2.0]) * step
    pts = x[None, ...] + offs.reshape((4,) + (1,) * x.ndim)
    v = np.asarray(mu_eval(params, pts))
    return _out((v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * step))


def principal_curvatures(params: TranslationParams, rho):
    """(k_tangential, k_normal) = (tanh mu'/(1+mu'^2)^(1/2), mu''/(1+mu'^2)^(3/2))
    at a scalar interior rho, closed limits at rho_+^eps."""
    x = float(_points(params, rho))
    hi = trans_domain(params)
    fam = params.family()
    if x == hi:
        return fam.vertical_limits(hi, 1)
    md = mu_dot(params, x)
    mdd = mu_ddot(params, x)
    w = math.sqrt(1.0 + md * md)
    return math.tanh(x) * md / w, mdd / w**3


def recomputed_curvature(params: TranslationParams, rho):
    kt, kn = principal_curvatures(params, rho)
    return float(umbilic_split_mean_curvature(kt, kn, params.n, params.r))


def cylinder_height(params: TranslationParams) -> float:
    """Height 2 mu(rho_+^eps) of the barrier built from the graph and its
    mirror image."""
    return 2.0 * mu_eval(params, trans_domain(params))
