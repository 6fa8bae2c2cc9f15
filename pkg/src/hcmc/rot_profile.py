"""Rotational profiles lambda_{H,d} of constant H_r hypersurfaces in H^n x R.

The profile is a graph t = lambda(rho) over the distance rho to the axis,
determined by the first integral

    sinh^(n-r)(rho) (lambda'/(1+lambda'^2)^(1/2))^r = n H I_{n,r}(rho) + d.

This module finds its maximal domain, evaluates lambda and its derivatives,
recovers the principal curvatures and classifies the resulting
hypersurface.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from . import _profile_core as core
from ._profile_core import SingularPointError
from .curvature_algebra import double_factorial, umbilic_split_mean_curvature
from .quadrature import bisect, expand_bracket
from .special_integrals import I_quad

__all__ = [
    "InadmissibleParameters", "DomainError", "SingularPointError",
    "ProfileParams", "ProfileDomain", "ProfileSample", "DRange",
    "critical_curvature", "regime", "admissible_dr_range", "profile_domain",
    "lambda_dot", "lambda_ddot", "lambda_eval", "principal_curvatures",
    "first_integral_residual", "lambda_dot_fd", "sample",
    "SingularSet", "TableRow", "TABLE_ROWS", "ClassificationRecord",
    "lambda_plus", "classify", "balanced_d",
]

CRITICAL_BAND = 1e-12
CAP_MARGIN = 1e-8
ROOT_XTOL = 1e-12
REGIMES = ("sub", "critical", "super")


class InadmissibleParameters(ValueError):
    """(n, r, H, d) does not define a profile."""


class DomainError(ValueError):
    """Evaluation point outside the profile domain."""


@dataclass(frozen=True)
class ProfileParams:
    """(n, r, H_r, d_r).  ``regime`` disambiguates H within 1e-12 of the
    critical value (n-r)/n and is otherwise optional."""
    n: int
    r: int
    H: float
    d: float
    regime: Optional[str] = None

    def __post_init__(self):
        if int(self.n) != self.n or int(self.r) != self.r:
            raise InadmissibleParameters("n and r must be integers")
        if self.n < 2 or not 1 <= self.r <= self.n:
            raise InadmissibleParameters(f"need n >= 2 and 1 <= r <= n, got n={self.n}, r={self.r}")
        if not (math.isfinite(self.H) and self.H > 0):
            raise InadmissibleParameters(f"H must be positive and finite, got {self.H}")
        if not math.isfinite(self.d):
            raise InadmissibleParameters(f"d must be finite, got {self.d}")
        if self.regime is not None and self.regime not in REGIMES:
            raise InadmissibleParameters(f"regime must be one of {REGIMES}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "H", float(self.H))
        object.__setattr__(self, "d", float(self.d))

    def family(self):
        return core.Family(self.n, self.r, self.H, self.d, core.KIND_ROT)


@dataclass(frozen=True)
class DRange:
    """Admissible d: ``lower < d < upper``.  ``provenance`` names the cap."""
    lower: float
    upper: float
    upper_open: bool
    provenance: str
    excluded: tuple = ()

    def contains(self, d):
        if d in self.excluded:
            return False
        if self.provenance == "tau-cap" and d >= self.upper - CAP_MARGIN:
            return False
        return self.lower < d < self.upper if self.upper_open else self.lower < d <= self.upper


@dataclass(frozen=True)
class ProfileDomain:
    """Maximal domain [rho_minus, rho_plus] (rho_plus = inf if unbounded).

    ``left_flag``/``right_flag`` describe the endpoint behaviour;
    ``left_sign``/``right_sign`` are +-1 where lambda' is infinite there.
    """
    rho_minus: float
    rho_plus: float
    rho_zero: Optional[float]
    left_flag: str
    right_flag: Optional[str]
    left_sign: int = 0
    right_sign: int = 0

    @property
    def bounded(self):
        return math.isfinite(self.rho_plus)

    @property
    def endpoint_flags(self):
        return (self.left_flag, self.right_flag)

    def span(self):
        breaks = () if self.rho_zero is None else (self.rho_zero,)
        return core.Span(self.rho_minus, self.rho_plus, self.left_sign, self.right_sign, breaks)


@dataclass(frozen=True)
class ProfileSample:
    rho: float
    lam: float
    lambda_dot: float
    lambda_ddot: float
    k_tangential: float
    k_normal: float
    extra: dict = field(default_factory=dict, compare=False)


def critical_curvature(n: int, r: int) -> float:
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    return (n - r) / n


def regime(n, r, H, flag=None):
    """'sub', 'critical' or 'super' relative to (n-r)/n.

    Inside the 1e-12 band around the critical value the caller's ``flag``
    decides (default 'critical'); outside it the flag must agree.
    """
    if n == r:
        return "super"
    crit = critical_curvature(n, r)
    if abs(H - crit) <= CRITICAL_BAND:
        return flag or "critical"
    actual = "super" if H > crit else "sub"
    if flag is not None and flag != actual:
        raise InadmissibleParameters(f"regime flag {flag!r} contradicts H={H} (critical {crit})")
    return actual


def _tau(n, r, H):
    return math.atanh(((n - r) / (n * H)) ** (1.0 / r))


@lru_cache(maxsize=512)
def _tau_cap(n, r, H):
    t = _tau(n, r, H)
    return math.sinh(t) ** (n - r) - n * H * I_quad(n, r, t)


def admissible_dr_range(n: int, r: int, H: float, regime_flag=None) -> DRange:
    """Maximal open interval of admissible d."""
    if n == r:
        # n = r odd, d = -1: 1 - |g| vanishes like rho^n at the axis and
        # lambda' is not integrable there
        excluded = (-1.0,) if n % 2 else ()
        return DRange(-math.inf, 1.0, True, "n=r", excluded)
    reg = regime(n, r, H, regime_flag)
    if reg == "super":
        return DRange(-math.inf, _tau_cap(n, r, float(H)), True, "tau-cap")
    if reg == "critical" and n == r + 1:
        if r % 2 == 0:
            cap = double_factorial(r - 1) * math.pi / (2 * double_factorial(r - 2))
            return DRange(-math.inf, cap, True, "critical-cap-even")
        cap = 1.0 if r == 1 else double_factorial(r - 1) / double_factorial(r - 2)
        return DRange(-math.inf, cap, True, "critical-cap-odd")
    return DRange(-math.inf, math.inf, True, "none")


def check_admissible(p: ProfileParams):
    rng = admissible_dr_range(p.n, p.r, p.H, p.regime)
    if not rng.contains(p.d):
        raise InadmissibleParameters(
            f"d={p.d} outside admissible range (< {rng.upper}, {rng.provenance}) "
            f"for n={p.n}, r={p.r}, H={p.H}")
    return rng


def _limit(n):
    # keep sinh^(n-1) finite during bracket expansion
    return 600.0 / max(n - 1, 1)


def _root_right(f, lo, sign_target, step=0.05, n=2):
    a, b = expand_bracket(f, lo, step, sign_target, limit=_limit(n))
    return bisect(f, a, b, xtol=ROOT_XTOL)


@lru_cache(maxsize=1024)
def _domain_cached(p: ProfileParams) -> ProfileDomain:
    check_admissible(p)
    n, r, H, d = p.n, p.r, p.H, p.d
    k = n - r
    nH = n * H
    G = lambda x: nH * I_quad(n, r, x) + d
    zero = None
    left_sign = 0

    if n == r:
        odd = r % 2 == 1
        if d == 0:
            lo, flag = 0.0, "regular-origin"
        elif d > 0:
            lo, flag = 0.0, "cone"
        elif not odd:
            lo, flag = _root_right(G, 0.0, 1, n=n), "cusp"
        elif d < -1:
            lo = _root_right(lambda x: G(x) + 1.0, 0.0, 1, n=n)
            flag, left_sign = "vertical-tangent", -1
        else:
            lo, flag = 0.0, "cone"
        if odd and d < 0:
            zero = _root_right(G, lo, 1, n=n)
        hi = _root_right(lambda x: G(x) - 1.0, zero if zero is not None else lo, 1, n=n)
        return ProfileDomain(lo, hi, zero, flag, "vertical-tangent", left_sign, 1)

    reg = regime(n, r, H, p.regime)
    f = lambda x: math.sinh(x) ** k - G(x)
    tau = _tau(n, r, H) if reg == "super" else None
    if d == 0:
        lo, flag = 0.0, "regular-origin"
    elif d > 0:
        if tau is not None:
            lo = bisect(f, 0.0, tau, xtol=ROOT_XTOL)
        else:
            lo = _root_right(f, 0.0, 1, n=n)
        flag, left_sign = "vertical-tangent", 1
    elif r % 2 == 0:
        lo, flag = _root_right(G, 0.0, 1, n=n), "cusp"
    else:
        lo = _root_right(lambda x: math.sinh(x) ** k + G(x), 0.0, 1, n=n)
        flag, left_sign = "vertical-tangent", -1
        zero = _root_right(G, lo, 1, n=n)

    if reg != "super":
        return ProfileDomain(lo, math.inf, zero, flag, None, left_sign, 0)
    start = max(lo, tau, zero if zero is not None else 0.0)
    if f(start) <= 0:
        raise InadmissibleParameters(f"d={d} too close to the cap for n={n}, r={r}, H={H}")
    hi = _root_right(f, start, -1, n=n)
    return ProfileDomain(lo, hi, zero, flag, "vertical-tangent", left_sign, 1)


def profile_domain(params: ProfileParams) -> ProfileDomain:
    """Domain of lambda with roots bisected to 1e-12."""
    return _domain_cached(params)


# -- evaluation -------------------------------------------------------------

def _points(params, rho, domain):
    dom = domain or profile_domain(params)
    x = np.asarray(rho, dtype=float)
    tol = 1e-14 * max(1.0, abs(dom.rho_minus))
    if np.any(~np.isfinite(x)) or np.any(x < dom.rho_minus - tol) or np.any(x > dom.rho_plus):
        raise DomainError(f"rho outside [{dom.rho_minus}, {dom.rho_plus}]")
    return dom, np.clip(x, dom.rho_minus, dom.rho_plus)


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _state(params, dom, x):
    fam = params.family()
    G, logg = core.pointwise_state(fam, dom.span(), x)
    return fam, G, logg


def lambda_dot(params: ProfileParams, rho, domain=None):
    """lambda'(rho); +-inf at vertical-tangent endpoints."""
    dom, x = _points(params, rho, domain)
    fam, G, logg = _state(params, dom, x)
    with np.errstate(divide="ignore"):
        out = fam.slope(G, logg)
    for e, s in ((dom.rho_minus, dom.left_sign), (dom.rho_plus, dom.right_sign)):
        if s:
            out = np.where(x == e, s * np.inf, out)
    if params.d == 0:
        out = np.where(x == 0.0, 0.0, out)
    return _out(out)


def lambda_ddot(params: ProfileParams, rho, domain=None):
    """lambda''(rho) from the closed second-derivative formula.

    Raises ``SingularPointError`` at the zero of G when r > 1.
    """
    dom, x = _points(params, rho, domain)
    if params.r > 1 and dom.rho_zero is not None and np.any(x == dom.rho_zero):
        raise SingularPointError("lambda'' is singular where n H I + d vanishes (r > 1)")
    fam, G, logg = _state(params, dom, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = fam.second_derivative(x, G, logg)
    if params.d == 0:
        out = np.where(x == 0.0, params.H ** (1.0 / params.r), out)
    return _out(out)


def lambda_eval(params: ProfileParams, rho, domain=None, rtol=core.PROFILE_RTOL):
    """lambda(rho) = int_{rho_-}^{rho} lambda', with lambda(rho_-) = 0."""
    dom, x = _points(params, rho, domain)
    return _out(core.integrate_profile(params.family(), dom.span(), x, rtol=rtol))


def principal_curvatures(params: ProfileParams, rho, domain=None):
    """(k_tangential, k_normal) at a scalar ``rho``, with closed limits at
    vertical-tangent endpoints and at a regular origin."""
    dom, x = _points(params, rho, domain)
    x = float(x)
    fam = params.family()
    for e, s in ((dom.rho_minus, dom.left_sign), (dom.rho_plus, dom.right_sign)):
        if s and x == e:
            if e == 0.0:
                raise SingularPointError("conical point on the axis: curvature blows up")
            return fam.vertical_limits(e, s)
    if x == dom.rho_minus:
        if dom.left_flag == "regular-origin":
            h = params.H ** (1.0 / params.r)
            return h, h
        raise SingularPointError(f"{dom.left_flag} at rho_minus: curvature blows up")
    ld = lambda_dot(params, x, dom)
    ldd = lambda_ddot(params, x, dom)
    w = math.sqrt(1.0 + ld * ld)
    return ld / w / math.tanh(x), ldd / w**3


def lambda_dot_fd(params: ProfileParams, rho, step=1e-4, domain=None):
    """lambda' from the five-point central difference of ``lambda_eval``.

    The stencil points become cut points of the quadrature, so each
    difference is integrated directly and carries no cancellation from the
    running sum.
    """
    dom, x = _points(params, rho, domain)
    offs = np.array([-2.0, -1.0, 1.0, 2.0]) * step
    pts = x[None, ...] + offs.reshape((4,) + (1,) * x.ndim)
    v = np.asarray(lambda_eval(params, pts, dom))
    return _out((v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * step))


def first_integral_residual(params: ProfileParams, rho, mode="analytic", step=1e-4, domain=None):
    """|sinh^(n-r) (l'/(1+l'^2)^(1/2))^r - (n H I + d)| with l' analytic or
    from central differences of ``lambda_eval``."""
    dom, x = _points(params, rho, domain)
    fam, G, logg = _state(params, dom, x)
    if mode == "analytic":
        ld = np.asarray(lambda_dot(params, x, dom), dtype=float)
    elif mode == "fd":
        ld = np.asarray(lambda_dot_fd(params, x, step, dom), dtype=float)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    with np.errstate(invalid="ignore"):
        ratio = np.where(np.isinf(ld), np.sign(ld), ld / np.sqrt(1.0 + ld * ld))
    lhs = fam.P(x) * ratio ** params.r
    return _out(np.abs(lhs - G))


def sample(params: ProfileParams, rho, domain=None) -> ProfileSample:
    dom = domain or profile_domain(params)
    x = float(rho)
    kt, kn = principal_curvatures(params, x, dom)
    return ProfileSample(
        rho=x,
        lam=lambda_eval(params, x, dom),
        lambda_dot=lambda_dot(params, x, dom),
        lambda_ddot=lambda_ddot(params, x, dom),
        k_tangential=kt,
        k_normal=kn,
        extra={"H_r": float(umbilic_split_mean_curvature(kt, kn, params.n, params.r))},
    )


# -- classification ---------------------------------------------------------

ZERO_TOL = 1e-8
INF = "inf"


@dataclass(frozen=True)
class SingularSet:
    """Where the hypersurface fails to be C^2.

    ``components`` holds (kind, count) pairs with kind one of 'cusp-sphere',
    'blowup-sphere', 'axis-point' and count an int or ``"inf"``.
    """
    description: str
    components: tuple = ()

    @property
    def empty(self):
        return not self.components


NONE = SingularSet("none")


@dataclass(frozen=True)
class TableRow:
    tag: str
    table: int
    condition: str
    shape: str
    topology: str
    singular_set: SingularSet
    regularity: str
    combo: int


def _row(tag, table, cond, shape, topo, sing, reg, combo):
    return TableRow(tag, table, cond, shape, topo, sing, reg, combo)


_CUSPS_INF = SingularSet("infinitely many copies of S^{n-1} given by cusps in horizontal slices",
                         (("cusp-sphere", INF),))
_BLOWUP_INF = SingularSet("|A|^2 blows up on infinitely many copies of S^{n-1} in horizontal slices",
                          (("blowup-sphere", INF),))
_BLOWUP_TWO = SingularSet("|A|^2 blows up on two copies of S^{n-1} in horizontal slices",
                          (("blowup-sphere", 2),))

TABLE_ROWS = (
    _row("T1.onduloid", 1, "d>0", "onduloid", "S^{n-1}xR", NONE, "C^2", 1),
    _row("T1.sphere", 1, "d=0", "sphere", "S^n", NONE, "C^2", 2),
    _row("T1.singular-onduloid", 1, "d<0, r even", "singular-onduloid", "S^{n-1}xR",
         _CUSPS_INF, "C^0", 3),
    _row("T1.nodoid", 1, "d<0, r odd, lambda(rho_+) != 0", "nodoid", "immersed",
         _BLOWUP_INF, "C^1", 4),
    _row("T1.torus-product", 1, "d<0, r odd, lambda(rho_+) = 0", "torus-product",
         "S^{n-1}xS^1", _BLOWUP_TWO, "C^1", 5),
    _row("T2.unbounded-annulus", 2, "d>0", "unbounded-annulus", "S^{n-1}xR", NONE, "C^2", 6),
    _row("T2.entire-graph", 2, "d=0", "entire-graph", "R^n", NONE, "C^2", 7),
    _row("T2.singular-annulus", 2, "d<0, r even", "singular-annulus", "S^{n-1}xR",
         SingularSet("a copy of S^{n-1} given by cusps in the slice t=0", (("cusp-sphere", 1),)),
         "C^0", 8),
    _row("T2.self-intersecting-annulus", 2, "d<0, r odd", "self-intersecting-annulus",
         "S^{n-1}xR", _BLOWUP_TWO, "C^1", 9),
    _row("T3.nodoid", 3, "d<-1, n odd", "nodoid", "immersed", _BLOWUP_INF, "C^1", 4),
    _row("T3.nodoid-axis", 3, "-1<=d<0, n odd, lambda(rho_+) > 0", "nodoid", "immersed",
         SingularSet("|A|^2 blows up at infinitely many points on the t-axis and on copies "
                     "of S^{n-1} in horizontal slices",
                     (("axis-point", INF), ("blowup-sphere", INF))), "C^0", 10),
    _row("T3.horn-torus", 3, "-1<=d<0, n odd, lambda(rho_+) = 0", "horn-torus", "immersed",
         SingularSet("|A|^2 blows up at two copies of S^{n-1} in horizontal slices and at "
                     "one point on the t-axis", (("axis-point", 1), ("blowup-sphere", 2))),
         "C^0", 11),
    _row("T3.spindle-torus-portion", 3, "-1<=d<0, n odd, lambda(rho_+) < 0",
         "spindle-torus-portion", "immersed",
         SingularSet("|A|^2 blows up at two copies of S^{n-1} in horizontal slices and at "
                     "two points on the t-axis", (("axis-point", 2), ("blowup-sphere", 2))),
         "C^0", 12),
    _row("T3.singular-onduloid", 3, "d<0, n even", "singular-onduloid", "S^{n-1}xR",
         _CUSPS_INF, "C^0", 3),
    _row("T3.sphere", 3, "d=0", "sphere", "S^n", NONE, "C^2", 2),
    _row("T3.peaked-sphere", 3, "0<d<1", "peaked-sphere", "S^n",
         SingularSet("|A|^2 blows up at two points on the t-axis", (("axis-point", 2),)),
         "C^0", 13),
)
ROWS_BY_TAG = {row.tag: row for row in TABLE_ROWS}


@dataclass(frozen=True)
class ClassificationRecord:
    shape: str
    topology: str
    singular_set: SingularSet
    regularity: str
    table_row: str
    lambda_plus: Optional[float] = None

    @property
    def row(self):
        return ROWS_BY_TAG[self.table_row]


def lambda_plus(params: ProfileParams, domain=None) -> float:
    dom = domain or profile_domain(params)
    if not dom.bounded:
        raise DomainError("profile domain is unbounded")
    return lambda_eval(params, dom.rho_plus, dom)


def _trichotomy(value, dom, zero_tol):
    if abs(value) <= zero_tol * (dom.rho_plus - dom.rho_minus):
        return 0
    return 1 if value > 0 else -1


def classify(params: ProfileParams, zero_tol=ZERO_TOL) -> ClassificationRecord:
    """Shape, topology and singular set of the hypersurface generated by
    lambda, matched to a row of the classification tables.

    Where the answer hinges on the sign of lambda(rho_+) it is computed
    numerically; |lambda(rho_+)| <= zero_tol * (rho_+ - rho_-) counts as 0.
    """
    dom = profile_domain(params)
    n, r, d = params.n, params.r, params.d
    lam = None
    if n == r:
        if d == 0:
            tag = "T3.sphere"
        elif d > 0:
            tag = "T3.peaked-sphere"
        elif r % 2 == 0:
            tag = "T3.singular-onduloid"
        elif d < -1:
            tag = "T3.nodoid"
        else:
            lam = lambda_plus(params, dom)
            tag = {1: "T3.nodoid-axis", 0: "T3.horn-torus",
                   -1: "T3.spindle-torus-portion"}[_trichotomy(lam, dom, zero_tol)]
    elif dom.bounded:
        if d > 0:
            tag = "T1.onduloid"
        elif d == 0:
            tag = "T1.sphere"
        elif r % 2 == 0:
            tag = "T1.singular-onduloid"
        else:
            lam = lambda_plus(params, dom)
            tag = "T1.torus-product" if _trichotomy(lam, dom, zero_tol) == 0 else "T1.nodoid"
    else:
        if d > 0:
            tag = "T2.unbounded-annulus"
        elif d == 0:
            tag = "T2.entire-graph"
        elif r % 2 == 0:
            tag = "T2.singular-annulus"
        else:
            tag = "T2.self-intersecting-annulus"

    row = ROWS_BY_TAG[tag]
    sing, reg = row.singular_set, row.regularity
    if r == 1 and tag in ("T1.nodoid", "T2.self-intersecting-annulus"):
        sing, reg = SingularSet("none (r = 1)"), "C^2"
    if lam is None and dom.bounded and tag != "T3.nodoid-axis":
        lam = lambda_plus(params, dom)
    return ClassificationRecord(row.shape, row.topology, sing, reg, tag, lam)


def balanced_d(n, r, H, d_lo, d_hi, xtol=1e-13):
    """d in [d_lo, d_hi] with lambda_{H,d}(rho_+) = 0, by bisection.

    The bracket must give opposite signs of lambda(rho_+).
    """
    f = lambda d: lambda_plus(ProfileParams(n, r, H, d))
    return bisect(f, d_lo, d_hi, xtol=xtol)
