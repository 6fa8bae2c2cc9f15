"""Exact and algebraic primitives: double factorials, elementary symmetric
polynomials, r-th mean curvature, signed real roots."""
from fractions import Fraction
from math import comb

import numpy as np


def double_factorial(m: int) -> int:
    """m!! as an exact integer, with 0!! = 1!! = 1."""
    if m < 0:
        raise ValueError(f"double factorial needs m >= 0, got {m}")
    out = 1
    for k in range(m, 1, -2):
        out *= k
    return out


def elementary_symmetric(k, r: int) -> float:
    """Degree-r elementary symmetric polynomial of the entries of ``k``.

    One pass of the recurrence e_j <- e_j + k_i e_(j-1), truncated at
    degree r, so the cost is O(n r).
    """
    k = np.asarray(k, dtype=float).ravel()
    n = k.size
    if n < 1:
        raise ValueError("curvature vector must be non-empty")
    if not np.all(np.isfinite(k)):
        raise ValueError("curvature vector entries must be finite")
    if not 0 <= r <= n:
        raise ValueError(f"degree r={r} outside [0, {n}]")
    e = np.zeros(r + 1)
    e[0] = 1.0
    for ki in k:
        # descending j keeps e[j-1] at its previous-step value
        for j in range(r, 0, -1):
            e[j] += ki * e[j - 1]
    return float(e[r])


def mean_curvature_r(k, r: int) -> float:
    """H_r = e_r(k) / C(n, r)."""
    n = np.asarray(k).size
    if not 1 <= r <= n:
        raise ValueError(f"order r={r} outside [1, {n}]")
    return elementary_symmetric(k, r) / comb(n, r)


def umbilic_split_mean_curvature(k_tan, k_n, n: int, r: int):
    """H_r of the vector (k_tan repeated n-1 times, k_n), vectorised.

    Closed form ((n-r) k_tan^r + r k_tan^(r-1) k_n) / n.
    """
    k_tan = np.asarray(k_tan, dtype=float)
    k_n = np.asarray(k_n, dtype=float)
    return ((n - r) * k_tan**r + r * k_tan ** (r - 1) * k_n) / n


def signed_root(x, r: int):
    """Real r-th root: sign(x)|x|^(1/r) for odd r, x^(1/r) for even r.

    Even r with negative x raises ``ValueError``.  Works on scalars and
    arrays.
    """
    if r < 1:
        raise ValueError(f"root order must be positive, got {r}")
    arr = np.asarray(x, dtype=float)
    if r % 2 == 0 and np.any(arr < 0):
        raise ValueError(f"even root (r={r}) of a negative number")
    out = np.sign(arr) * np.abs(arr) ** (1.0 / r)
    if out.ndim == 0:
        return float(out)
    return out


def identity_terms(r: int):
    """Summands 1, 1/(r-2), (r-1)/((r-2)(r-4)), ... of the telescoping
    double-factorial identity, as exact fractions.

    The k-th term after the leading 1 is
    prod_{i<k} (r-2i+1) / prod_{i<=k} (r-2i); the sum stops at the last
    term whose denominator factors are all positive.
    """
    terms = [Fraction(1)]
    num, den = 1, 1
    k = 1
    while r - 2 * k >= 1:
        if k > 1:
            num *= r - 2 * k + 3
        den *= r - 2 * k
        terms.append(Fraction(num, den))
        k += 1
    return terms


def factorial_identity_check(r: int) -> bool:
    """Exact check of (r-1)!!/(r-2)!! = 1 + 1/(r-2) + (r-1)/((r-2)(r-4)) + ..."""
    if r < 2:
        raise ValueError(f"identity is stated for r >= 2, got {r}")
    lhs = Fraction(double_factorial(r - 1), double_factorial(r - 2))
    return lhs == sum(identity_terms(r), Fraction(0))
