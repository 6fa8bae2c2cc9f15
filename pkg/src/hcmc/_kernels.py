"""Hot quadrature kernels.

Every special integral in the package is assembled from 15-point
Gauss-Kronrod panels over the hyperbolic integrands

    kind 0:  sinh^(n-1)(t) / cosh^(r-1)(t)      (rotation family I)
    kind 1:  cosh^(n-1)(t) / sinh^(r-1)(t)      (translation family J)

`gk15_hyp` is bound at import time to a numba ``@njit`` kernel, or to the
vectorised numpy fallback when ``HCMC_DISABLE_NUMBA`` is set to a truthy
value (or numba is unavailable).  Both return identical results up to
rounding; ``benchmarks/bench_kernels.py`` compares them.
"""
import math
import os

import numpy as np

# G7-K15 abscissae on [-1, 1] (positive half, centre last) and weights.
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node layout used by the numpy path: x in [-1, 1], kronrod and
# gauss weights aligned with it (gauss weight 0 on kronrod-only nodes).
_X15 = np.concatenate([-XGK[:7], XGK[7:], XGK[:7][::-1]])
_WK15 = np.concatenate([WGK[:7], WGK[7:], WGK[:7][::-1]])
_WG15 = np.zeros(15)
for _i, _w in zip((1, 3, 5), WG[:3]):
    _WG15[_i] = _w
    _WG15[14 - _i] = _w
_WG15[7] = WG[3]

EPS = np.finfo(float).eps
TINY = np.finfo(float).tiny


def _flag(name):
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


def panel_error(k15, g7, resabs, resasc):
    """QUADPACK error heuristic for a batch of G7-K15 panels."""
    err = np.abs(k15 - g7)
    with np.errstate(invalid="ignore", divide="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where(resasc > 0.0, scaled, err)
    floor = 50.0 * EPS * resabs
    err = np.where(resabs > TINY / (50.0 * EPS), np.maximum(floor, err), err)
    return err


def gk15_values(fvals, lo, hi):
    """Combine integrand values of shape (P, 15) on panels [lo, hi] into
    (kronrod estimate, error estimate)."""
    half = 0.5 * (hi - lo)
    k15 = fvals @ _WK15
    g7 = fvals @ _WG15
    mean = 0.5 * k15
    resabs = np.abs(fvals) @ _WK15
    resasc = np.abs(fvals - mean[:, None]) @ _WK15
    habs = np.abs(half)
    err = panel_error(k15 * half, g7 * half, resabs * habs, resasc * habs)
    return k15 * half, err


def panel_nodes(lo, hi):
    """Nodes of shape (P, 15) for panels [lo, hi]."""
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return centre[:, None] + half[:, None] * _X15[None, :]


def hyp_integrand_numpy(kind, n, r, t):
    sh = np.sinh(t)
    ch = np.cosh(t)
    if kind == 0:
        return sh ** (n - 1) / ch ** (r - 1)
    return ch ** (n - 1) / sh ** (r - 1)


def gk15_hyp_numpy(kind, n, r, lo, hi):
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    f = hyp_integrand_numpy(kind, n, r, panel_nodes(lo, hi))
    return gk15_values(f, lo, hi)


def _build_numba():
    from numba import njit

    xgk, wgk, wg = XGK, WGK, WG

    @njit(cache=True, inline="always")
    def _ipow(x, k):
        out = 1.0
        for _ in range(k):
            out *= x
        return out

    @njit(cache=True, inline="always")
    def _f(kind, n, r, t):
        # one expm1 for both; libm sinh/cosh are several times slower
        u = math.expm1(t)
        w = 1.0 + u
        sh = 0.5 * (u + u / w)
        ch = 0.5 * (w + 1.0 / w)
        if kind == 0:
            return _ipow(sh, n - 1) / _ipow(ch, r - 1)
        return _ipow(ch, n - 1) / _ipow(sh, r - 1)

    @njit(cache=True)
    def gk15_hyp(kind, n, r, lo, hi):
        m = lo.shape[0]
        out_k = np.empty(m)
        out_e = np.empty(m)
        fv1 = np.empty(7)
        fv2 = np.empty(7)
        for p in range(m):
            a = lo[p]
            b = hi[p]
            centre = 0.5 * (a + b)
            half = 0.5 * (b - a)
            habs = abs(half)
            fc = _f(kind, n, r, centre)
            resg = fc * wg[3]
            resk = fc * wgk[7]
            resabs = abs(resk)
            for j in range(7):
                dx = half * xgk[j]
                f1 = _f(kind, n, r, centre - dx)
                f2 = _f(kind, n, r, centre + dx)
                fv1[j] = f1
                fv2[j] = f2
                resk += wgk[j] * (f1 + f2)
                resabs += wgk[j] * (abs(f1) + abs(f2))
                if j % 2 == 1:
                    resg += wg[j // 2] * (f1 + f2)
            mean = 0.5 * resk
            resasc = wgk[7] * abs(fc - mean)
            for j in range(7):
                resasc += wgk[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean))
            resk *= half
            resabs *= habs
            resasc *= habs
            err = abs(resk - resg * half)
            if resasc != 0.0 and err != 0.0:
                err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
            if resabs > 2.2250738585072014e-308 / (50.0 * 2.220446049250313e-16):
                err = max(50.0 * 2.220446049250313e-16 * resabs, err)
            out_k[p] = resk
            out_e[p] = err
        return out_k, out_e

    return gk15_hyp


def _select():
    if _flag("HCMC_DISABLE_NUMBA"):
        return gk15_hyp_numpy, False
    try:
        fast = _build_numba()
    except ImportError:
        return gk15_hyp_numpy, False

    def gk15_hyp(kind, n, r, lo, hi):
        return fast(int(kind), int(n), int(r),
                    np.ascontiguousarray(lo, dtype=np.float64),
                    np.ascontiguousarray(hi, dtype=np.float64))

    gk15_hyp.jit = fast
    return gk15_hyp, True


gk15_hyp, USING_NUMBA = _select()
