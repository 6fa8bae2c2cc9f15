"""Parameter grids and sampling shared by the tests."""
import numpy as np

from hcmc import rot_profile as rp

# (n, r, H, d) covering the sub/critical/super regimes and n = r,
# every endpoint type and every sign of d
REGIME_GRID = [
    (2, 1, 1.0, 0.0),        # sphere, r = 1
    (3, 2, 0.9, -0.05),      # super, even r, cusp
    (3, 2, 0.9, 0.05),       # super, onduloid
    (4, 3, 1.0, -0.05),      # super, odd r, nodoid with a zero of G
    (3, 1, 0.5, 0.0),        # sub, entire graph
    (3, 1, 0.5, 0.3),        # sub, annulus
    (3, 2, 0.2, -0.1),       # sub, even r, cusp
    (4, 3, 0.1, -0.1),       # sub, odd r, self-intersecting
    (3, 3, 1.0, 0.5),        # n = r, cone (peaked sphere)
    (3, 3, 1.0, -2.0),       # n = r odd, d < -1
    (2, 2, 1.0, -0.5),       # n = r even, cusp
    (3, 3, 1.0, -0.5),       # n = r odd, cone plus a zero of G
    (3, 2, 1 / 3, 1.0),      # critical
    (4, 3, 1.0, 0.05),       # super, odd r, d > 0
]

# frozen zero of lambda(rho_+) in d, from balanced_d
TORUS_D_432 = -0.6443411776430423
HORN_D_331 = -0.5192628825226675

# one witness per table row
WITNESSES = {
    "T1.onduloid": (3, 2, 0.9, 0.05),
    "T1.sphere": (3, 2, 0.9, 0.0),
    "T1.singular-onduloid": (3, 2, 0.9, -0.05),
    "T1.nodoid": (4, 3, 2.0, -0.5),
    "T1.torus-product": (4, 3, 2.0, TORUS_D_432),
    "T2.unbounded-annulus": (3, 1, 0.5, 0.3),
    "T2.entire-graph": (3, 1, 0.5, 0.0),
    "T2.singular-annulus": (3, 2, 0.2, -0.1),
    "T2.self-intersecting-annulus": (4, 3, 0.1, -0.1),
    "T3.nodoid": (3, 3, 1.0, -2.0),
    "T3.nodoid-axis": (3, 3, 1.0, -0.1),
    "T3.horn-torus": (3, 3, 1.0, HORN_D_331),
    "T3.spindle-torus-portion": (3, 3, 1.0, -0.6),
    "T3.singular-onduloid": (2, 2, 1.0, -0.5),
    "T3.sphere": (3, 3, 1.0, 0.0),
    "T3.peaked-sphere": (3, 3, 1.0, 0.5),
}


def interior_samples(params, count=50, extent=3.0):
    """``count`` interior points, spread over the pieces between rho_-,
    the zero of G (if any) and rho_+ (or rho_- + extent)."""
    dom = rp.profile_domain(params)
    hi = dom.rho_plus if dom.bounded else dom.rho_minus + extent
    cuts = [dom.rho_minus] + ([dom.rho_zero] if dom.rho_zero is not None else []) + [hi]
    length = hi - dom.rho_minus
    xs = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        m = max(1, round(count * (b - a) / length))
        xs.extend(np.linspace(a, b, m + 2)[1:-1])
    xs = np.array(xs)
    if xs.size > count:
        xs = xs[np.linspace(0, xs.size - 1, count).round().astype(int)]
    return xs


def curvatures_from(params, x, ld, ldd):
    w = np.sqrt(1.0 + ld * ld)
    return ld / w / np.tanh(x), ldd / w**3
