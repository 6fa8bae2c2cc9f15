"""Machinery shared by the rotation profile lambda and the translation
profile mu.

Both profiles solve a first integral of the form

    P(rho) * (s'/(1+s'^2)^(1/2))^r = G(rho),   P = base^(n-r),
    G = n H F(rho) + d,                        F = int_lower^rho base^(n-1)/other^(r-1)

with (base, other) = (sinh, cosh) for rotations and (cosh, sinh) for
translations.  Writing g = G/P, the slope is

    s' = sign(G) |g|^(1/r) / sqrt(1 - |g|^(2/r)).

Everything downstream is expressed through log|g|, which stays accurate
at both extremes.  Where |g| is small it is log(|G|/P) directly.  Near an
endpoint where |g| -> 1 the profile has a vertical tangent and
1 - |g| must not be formed by subtraction: it is computed from increments
anchored at that endpoint, where G(e) = +-P(e) holds exactly, and
log|g| = log1p(-(1 - |g|)).
"""
from dataclasses import dataclass

import numpy as np

from .quadrature import cumulative, hyp_panels, integrate_segments, value_panels

KIND_ROT = 0
KIND_TRANS = 1

# tighter than the 1e-10 contract on profile heights
PROFILE_RTOL = 1e-11


class SingularPointError(ArithmeticError):
    """Evaluation at a point where the requested quantity blows up."""


@dataclass(frozen=True)
class Family:
    n: int
    r: int
    H: float
    d: float
    kind: int
    lower: float = 0.0

    @property
    def k(self):
        return self.n - self.r

    def base(self, x):
        return np.sinh(x) if self.kind == KIND_ROT else np.cosh(x)

    def other(self, x):
        return np.cosh(x) if self.kind == KIND_ROT else np.sinh(x)

    def P(self, x):
        return self.base(x) ** self.k

    def dP(self, x, e):
        """P(x) - P(e) without cancellation."""
        x = np.asarray(x, dtype=float)
        e = np.asarray(e, dtype=float)
        if self.k == 0:
            return np.zeros(np.broadcast(x, e).shape)
        half_sum = 0.5 * (x + e)
        half_diff = 0.5 * (x - e)
        if self.kind == KIND_ROT:
            db = 2.0 * np.cosh(half_sum) * np.sinh(half_diff)
        else:
            db = 2.0 * np.sinh(half_sum) * np.sinh(half_diff)
        bx, be = self.base(x), self.base(e)
        acc = np.zeros(np.broadcast(x, e).shape)
        for i in range(self.k):
            acc = acc + bx**i * be ** (self.k - 1 - i)
        return db * acc

    def integrand(self, x):
        return self.base(x) ** (self.n - 1) / self.other(x) ** (self.r - 1)

    def F(self, x):
        """F(x) = int_lower^x of the integrand, vectorised."""
        return cumulative(hyp_panels(self.kind, self.n, self.r), x, self.lower)

    def dF(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
        out = integrate_segments(hyp_panels(self.kind, self.n, self.r), a.ravel(), b.ravel())
        return out.reshape(a.shape)

    def G(self, x):
        return self.n * self.H * self.F(x) + self.d

    # -- slope algebra -------------------------------------------------
    def one_minus_g2r(self, logg):
        """1 - |g|^(2/r) from log|g|."""
        return -np.expm1((2.0 / self.r) * np.minimum(logg, -1e-300))

    def slope(self, G, logg):
        if self.r % 2 == 0:
            sgn = (G > 0).astype(float)
        else:
            sgn = np.sign(G)
        with np.errstate(invalid="ignore"):
            root = np.where(sgn != 0, np.exp(logg / self.r), 0.0)
        return sgn * root / np.sqrt(self.one_minus_g2r(logg))

    def second_derivative(self, x, G, logg):
        """Second derivative of the profile from the closed expression

            other * base^(2k/r - 1) * (nH base^n / other^r - k G)
            / (r |G|^((r-1)/r) (base^(2k/r) - |G|^(2/r))^(3/2)).
        """
        n, r, k, H = self.n, self.r, self.k, self.H
        b, o = self.base(x), self.other(x)
        num = o * b ** (2.0 * k / r - 1.0) * (n * H * b**n / o**r - k * G)
        gpow = (np.abs(G) ** (1.0 / r)) ** (r - 1)
        gap = b ** (2.0 * k / r) * self.one_minus_g2r(logg)
        with np.errstate(divide="ignore", invalid="ignore"):
            return num / (r * gpow * gap**1.5)

    def vertical_limits(self, e, sign):
        """(k_tan, k_n) at an endpoint with vertical tangent of sign +-1."""
        ratio = self.other(e) / self.base(e)
        k_tan = sign * ratio
        k_n = ratio / self.r * (self.n * self.H / ratio**self.r - sign * self.k)
        return float(k_tan), float(k_n)


@dataclass(frozen=True)
class Span:
    """Integration domain of a profile.

    ``left_sign``/``right_sign`` are +-1 where the slope is infinite at that
    end (|g| = 1 there) and 0 otherwise.  ``breaks`` are interior points
    where the slope is not smooth (zeros of G for r > 1).
    """
    lo: float
    hi: float
    left_sign: int = 0
    right_sign: int = 0
    breaks: tuple = ()

    def singular_ends(self):
        ends = []
        length = self.hi - self.lo if np.isfinite(self.hi) else 4.0
        for e, s in ((self.lo, self.left_sign), (self.hi, self.right_sign)):
            if s == 0 or not np.isfinite(e):
                continue
            zone = 0.25 * length
            for b in self.breaks:
                zone = min(zone, 0.5 * abs(b - e))
            ends.append((e, s, zone))
        return ends


def choose_anchors(span, x):
    """Per point: anchor location and sign (0 for anchoring at ``lower``)."""
    x = np.asarray(x, dtype=float)
    anchor = np.full(x.shape, np.nan)
    sign = np.zeros(x.shape, dtype=int)
    for e, s, zone in span.singular_ends():
        near = np.abs(x - e) <= zone
        anchor[near] = e
        sign[near] = s
    return anchor, sign


# below this offset from a vertical-tangent anchor, 1 - |g| comes from its
# second-order Taylor expansion (relative error ~ offset^2)
TAYLOR_OFFSET = 1e-6


def _gap_series(fam, e, s, h):
    """P(x) - P(e) - s nH (F(x) - F(e)) at x = e + h, to second order in h."""
    k, n, r, nH = fam.k, fam.n, fam.r, fam.n * fam.H
    b, o = fam.base(e), fam.other(e)
    dP1 = k * b ** max(k - 1, 0) * o if k >= 1 else 0.0 * b
    dP2 = (k * (k - 1) * b ** max(k - 2, 0) * o * o if k >= 2 else 0.0 * b) + k * b**k
    f0 = b ** (n - 1) / o ** (r - 1)
    f1 = (n - 1) * b ** max(n - 2, 0) * o ** (2 - r) + (1 - r) * b**n / o**r
    return (dP1 - s * nH * f0) * h + 0.5 * (dP2 - s * nH * f1) * h * h


def local_state(fam, x, anchor, sign, anchor_F=None, offset=None):
    """(G, log|g|) at points ``x``.

    Points with ``sign != 0`` are anchored at the vertical-tangent endpoint
    ``anchor``; the rest use ``anchor_F`` (F at ``anchor``) plus an
    increment, or F from ``lower`` when ``anchor_F`` is None.  ``offset``,
    if given, is the exact x - anchor, which matters once x rounds onto the
    anchor.
    """
    x = np.asarray(x, dtype=float)
    G = np.empty(x.shape)
    logg = np.empty(x.shape)
    sing = sign != 0
    nH = fam.n * fam.H
    if np.any(sing):
        xs, es, ss = x[sing], anchor[sing], sign[sing]
        inc = fam.dF(es, xs)
        Px = fam.P(xs)
        G[sing] = ss * fam.P(es) + nH * inc
        num = fam.dP(xs, es) - ss * nH * inc
        if offset is not None:
            h = offset[sing]
            tiny = np.abs(h) < TAYLOR_OFFSET
            if np.any(tiny):
                num = np.where(tiny, _gap_series(fam, es, ss, h), num)
        delta = num / Px
        with np.errstate(divide="ignore"):  # delta = 1 only at rho = 0
            logg[sing] = np.log1p(-np.clip(delta, 0.0, 1.0))
    reg = ~sing
    if np.any(reg):
        xr = x[reg]
        if anchor_F is None:
            Fx = fam.F(xr)
        else:
            Fx = anchor_F[reg] + fam.dF(anchor[reg], xr)
        Gr = nH * Fx + fam.d
        G[reg] = Gr
        with np.errstate(divide="ignore", invalid="ignore"):
            logg[reg] = np.log(np.abs(Gr)) - np.log(fam.P(xr))
    return G, logg


def pointwise_state(fam, span, x):
    anchor, sign = choose_anchors(span, x)
    return local_state(fam, x, anchor, sign)


def integrate_profile(fam, span, x, rtol=PROFILE_RTOL):
    """Profile height at each of ``x`` (within [lo, hi]), zero at ``lo``.

    The range is cut at every requested point and at ``span.breaks``.  A
    piece touching a vertical-tangent endpoint e is integrated in u with
    rho = e +- u^2, which turns the inverse-square-root endpoint behaviour
    into a bounded integrand.
    """
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    if flat.size == 0:
        return np.zeros(x.shape)
    top = float(flat.max())
    # keep u^2 pieces inside their anchor zones: far from the endpoint the
    # anchored form of 1 - |g| cancels badly
    zone_edges = [e - z if e == span.hi else e + z for e, _, z in span.singular_ends()]
    zone_edges = [z for z in zone_edges if span.lo < z < top]
    cuts = [span.lo] + [b for b in span.breaks if span.lo < b < top] + zone_edges + list(flat)
    pts = np.unique(np.asarray(cuts, dtype=float))
    pts = pts[pts >= span.lo]
    if pts.size < 2:
        return np.zeros(x.shape)

    a_list, b_list, mode, owner = [], [], [], []
    for i in range(pts.size - 1):
        a, b = pts[i], pts[i + 1]
        left = a == span.lo and span.left_sign != 0
        right = b == span.hi and span.right_sign != 0
        if left and right:
            m = 0.5 * (a + b)
            a_list += [a, m]
            b_list += [m, b]
            mode += [1, -1]
            owner += [i, i]
        else:
            a_list.append(a)
            b_list.append(b)
            mode.append(1 if left else (-1 if right else 0))
            owner.append(i)
    pa = np.array(a_list)
    pb = np.array(b_list)
    mode = np.array(mode)
    owner = np.array(owner)

    # anchors: u^2 pieces at their singular end, others by midpoint
    mid = 0.5 * (pa + pb)
    anc, sgn = choose_anchors(span, mid)
    anc = np.where(sgn != 0, anc, pa)
    anc = np.where(mode == 1, pa, anc)
    anc = np.where(mode == -1, pb, anc)
    sgn = np.where(mode == 1, span.left_sign, sgn)
    sgn = np.where(mode == -1, span.right_sign, sgn)
    anc_F = np.zeros(pa.size)
    reg = sgn == 0
    if np.any(reg):
        anc_F[reg] = fam.F(anc[reg])

    # integration variable per piece: rho for plain, u for u^2 pieces
    lo_var = np.where(mode == 0, pa, 0.0)
    hi_var = np.where(mode == 0, pb, np.sqrt(np.maximum(pb - pa, 0.0)))

    def integrand(u, seg):
        md = mode[seg][:, None]
        rho = np.where(md == 1, pa[seg][:, None] + u * u,
                       np.where(md == -1, pb[seg][:, None] - u * u, u))
        jac = np.where(md == 0, 1.0, 2.0 * u)
        shape = rho.shape
        G, logg = local_state(
            fam, rho.ravel(),
            np.broadcast_to(anc[seg][:, None], shape).ravel(),
            np.broadcast_to(sgn[seg][:, None], shape).ravel(),
            np.broadcast_to(anc_F[seg][:, None], shape).ravel(),
            np.where(md == 1, u * u, np.where(md == -1, -u * u, np.nan)).ravel(),
        )
        return fam.slope(G, logg).reshape(shape) * jac

    pieces = integrate_segments(value_panels(integrand), lo_var, hi_var, rtol=rtol)
    seg_tot = np.bincount(owner, weights=pieces, minlength=pts.size - 1)
    heights = np.concatenate([[0.0], np.cumsum(seg_tot)])
    idx = np.searchsorted(pts, flat)
    return heights[idx].reshape(x.shape)
