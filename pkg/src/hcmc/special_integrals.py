"""The special integrals

    I_{n,r}(rho)      = int_0^rho   sinh^(n-1) / cosh^(r-1)
    J_{n,r,eps}(rho)  = int_eps^rho cosh^(n-1) / sinh^(r-1)     (r > 1)
    J_{n,1}(rho)      = int_0^rho   cosh^(n-1)

by adaptive quadrature, and the closed forms of I_{r+1,r}.
"""
import math

import numpy as np

from .curvature_algebra import double_factorial, identity_terms
from .quadrature import cumulative, hyp_panels, integrate_segments

KIND_I = 0
KIND_J = 1

# above this, I_closed uses the cancellation-free large-argument form
LARGE_X = 20.0


def _check_nr(n, r):
    if int(n) != n or int(r) != r:
        raise ValueError("n and r must be integers")
    if n < 1 or not 1 <= r <= max(n, 1):
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")


def _finite(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def I_quad(n: int, r: int, rho, rtol=None):
    """I_{n,r}(rho) for scalar or array ``rho >= 0``."""
    _check_nr(n, r)
    rho_arr = _finite(rho, "rho")
    if np.any(rho_arr < 0):
        raise ValueError("rho must be non-negative")
    out = cumulative(hyp_panels(KIND_I, n, r), rho_arr, 0.0, rtol=rtol)
    return float(out) if out.ndim == 0 else out


def I_increment(n: int, r: int, start, stop, rtol=None):
    """Elementwise int_start^stop of the I-integrand (signed)."""
    start = np.asarray(start, dtype=float)
    stop = np.asarray(stop, dtype=float)
    a, b = np.broadcast_arrays(start, stop)
    out = integrate_segments(hyp_panels(KIND_I, n, r), a.ravel(), b.ravel(), rtol=rtol)
    return out.reshape(a.shape)


def J_quad(n: int, r: int, epsilon, rho, rtol=None):
    """J_{n,r,eps}(rho); for r = 1 the lower limit is 0 and ``epsilon`` is
    ignored."""
    _check_nr(n, r)
    rho_arr = _finite(rho, "rho")
    if r == 1:
        lower = 0.0
    else:
        lower = float(epsilon)
        if not lower > 0:
            raise ValueError("epsilon must be positive when r > 1")
    if np.any(rho_arr < lower):
        raise ValueError(f"rho must be >= {lower}")
    out = cumulative(hyp_panels(KIND_J, n, r), rho_arr, lower, rtol=rtol)
    return float(out) if out.ndim == 0 else out


def J_increment(n: int, r: int, start, stop, rtol=None):
    """Elementwise int_start^stop of the J-integrand (signed)."""
    start = np.asarray(start, dtype=float)
    stop = np.asarray(stop, dtype=float)
    a, b = np.broadcast_arrays(start, stop)
    out = integrate_segments(hyp_panels(KIND_J, n, r), a.ravel(), b.ravel(), rtol=rtol)
    return out.reshape(a.shape)


def closed_form_coefficients(r: int):
    """Coefficients and tanh exponents of the bracketed sum in the closed
    form of I_{r+1,r}, r >= 3: [(coef, power), ...] with powers r-2, r-4, ..."""
    terms = identity_terms(r)[1:]
    return [(float(c), r - 2 * (k + 1)) for k, c in enumerate(terms)]


def _gd(x):
    # arctan(sinh x) without overflow
    return 2.0 * math.atan(math.tanh(0.5 * x))


def I_closed(r: int, x: float) -> float:
    """I_{r+1,r}(x) from the closed formulas.

    Base cases I_{2,1} = cosh - 1 and I_{3,2} = sinh - arctan(sinh); for
    r >= 3, I_{r+1,r} = -sinh(x) B(tanh x) + c I_base(x) with
    c = (r-1)!!/(r-2)!!.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    x = float(x)
    if not (math.isfinite(x) and x >= 0):
        raise ValueError("x must be finite and non-negative")
    if x == 0.0:
        return 0.0
    if r == 1:
        return 2.0 * math.sinh(0.5 * x) ** 2
    if r == 2:
        return math.sinh(x) - _gd(x)

    c = double_factorial(r - 1) / double_factorial(r - 2)
    coeffs = closed_form_coefficients(r)
    t = math.tanh(x)
    if x <= LARGE_X:
        # Horner over tanh^2 from the highest power down
        acc = 0.0
        for coef, _ in coeffs:
            acc = acc * t * t + coef
        lowest = coeffs[-1][1]
        bracket = acc * t**lowest
        base = 2.0 * math.sinh(0.5 * x) ** 2 if r % 2 else math.sinh(x) - _gd(x)
        return -math.sinh(x) * bracket + c * base

    # Large x: the bracket at tanh = 1 sums to c - 1 exactly, so
    # c - B(t) = 1 + sum coef (1 - t^p) with 1 - t^p computed via expm1.
    one_minus_t = 2.0 / (math.exp(2.0 * x) + 1.0)
    log_t = math.log1p(-one_minus_t)
    deficit = sum(coef * -math.expm1(p * log_t) for coef, p in coeffs)
    sh = math.sinh(x)
    if r % 2:
        # c (cosh - 1) - sinh B = sinh (c - B) + c e^-x - c
        return sh * (1.0 + deficit) + c * math.exp(-x) - c
    # c (sinh - gd) - sinh B = sinh (c - B) - c gd
    return sh * (1.0 + deficit) - c * _gd(x)
