"""Vectorised adaptive Gauss-Kronrod integration and bracketed bisection.

Many independent intervals ("segments") are integrated in one call.  Each
segment keeps its own list of panels; every round, the panels of segments
that have not met their tolerance and whose error is above the mean share
are bisected.  All panels of a round are evaluated by one call to the
panel function, which keeps the hot work inside a single kernel.
"""
import os

import numpy as np

from . import _kernels

DEFAULT_TOL = 1e-12


class NumericalFailure(RuntimeError):
    """A numerical routine failed to meet its contract."""


def default_tol():
    """Quadrature relative tolerance, overridable via ``HCMC_TOL``."""
    raw = os.environ.get("HCMC_TOL")
    if raw:
        try:
            val = float(raw)
        except ValueError:
            raise ValueError(f"HCMC_TOL must be a float, got {raw!r}") from None
        if not (0.0 < val < 1e-2):
            raise ValueError(f"HCMC_TOL out of range: {val}")
        return val
    return DEFAULT_TOL


def integrate_segments(panel_fn, a, b, rtol=None, atol=0.0, max_rounds=80):
    """Integrate ``len(a)`` segments ``[a_i, b_i]`` adaptively.

    ``panel_fn(lo, hi, seg)`` must return ``(estimate, error)`` arrays for
    panels ``[lo, hi]`` belonging to segments ``seg``.  Returns the array of
    segment integrals.  Zero-length segments integrate to 0.
    """
    if rtol is None:
        rtol = default_tol()
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    m = a.size
    if m == 0:
        return np.zeros(0)
    seg = np.arange(m)
    lo, hi = a.copy(), b.copy()
    live = lo != hi
    seg, lo, hi = seg[live], lo[live], hi[live]
    est = np.zeros(seg.size)
    err = np.zeros(seg.size)
    if seg.size:
        est, err = panel_fn(lo, hi, seg)
    for _ in range(max_rounds):
        if seg.size == 0:
            break
        tot = np.bincount(seg, weights=est, minlength=m)
        tot_err = np.bincount(seg, weights=err, minlength=m)
        target = np.maximum(rtol * np.abs(tot), atol)
        bad = tot_err > target
        if not np.any(bad):
            break
        count = np.bincount(seg, minlength=m)
        share = tot_err / np.maximum(count, 1)
        # split panels of failing segments carrying at least their mean share
        split = bad[seg] & (err >= 0.5 * share[seg]) & (err > 0.0)
        width = np.abs(hi - lo)
        split &= width > 8.0 * np.finfo(float).eps * np.maximum(np.abs(lo), np.abs(hi))
        if not np.any(split):
            break
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_seg = np.concatenate([seg[split], seg[split]])
        k_new, e_new = panel_fn(new_lo, new_hi, new_seg)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        seg = np.concatenate([seg[keep], new_seg])
        est = np.concatenate([est[keep], k_new])
        err = np.concatenate([err[keep], e_new])
    return np.bincount(seg, weights=est, minlength=m)


def hyp_panels(kind, n, r):
    """Panel function for the hyperbolic integrands of ``_kernels``."""
    def fn(lo, hi, seg):
        return _kernels.gk15_hyp(kind, n, r, lo, hi)
    return fn


def value_panels(fn):
    """Panel function from a vectorised integrand ``fn(x, seg)`` where
    ``x`` has shape (P, 15) and ``seg`` shape (P,)."""
    def panels(lo, hi, seg):
        x = _kernels.panel_nodes(lo, hi)
        vals = fn(x, seg)
        return _kernels.gk15_values(vals, lo, hi)
    return panels


def cumulative(panel_fn, points, start=0.0, rtol=None):
    """Integral from ``start`` to each of ``points`` (any order)."""
    pts = np.asarray(points, dtype=float)
    flat = pts.ravel()
    order = np.argsort(flat, kind="stable")
    xs = flat[order]
    left = np.concatenate([[start], xs[:-1]])
    pieces = integrate_segments(panel_fn, left, xs, rtol=rtol)
    out = np.empty_like(flat)
    out[order] = np.cumsum(pieces)
    return out.reshape(pts.shape)


def bisect(f, lo, hi, xtol=1e-12, max_iter=200):
    """Root of ``f`` in the bracket ``[lo, hi]`` by bisection.

    Stops when the bracket is narrower than ``xtol * min(1, |x|)``, so tiny
    roots keep their relative accuracy.
    """
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NumericalFailure(f"root not bracketed on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol * min(1.0, max(abs(lo), abs(hi))) or mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def expand_bracket(f, lo, step, sign_target, grow=2.0, limit=700.0):
    """Walk right from ``lo`` in geometrically growing steps until ``f``
    takes the sign ``sign_target``; returns the bracket ``(prev, x)``."""
    prev, x = lo, lo + step
    while x <= limit:
        val = f(x)
        if np.sign(val) == sign_target:
            return prev, x
        prev, x = x, x + (x - lo) * (grow - 1.0) + step
    raise NumericalFailure(f"no sign change of f found to the right of {lo}")
