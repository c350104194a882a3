"""Independent high-precision recomputation of the closed-form anchors.

Everything here is derived from the defining formulas with mpmath only,
no imports from the package, so agreement is evidence rather than
tautology.  Run as a script to print the anchor table:

    python3 tests/oracle_gen.py
"""

import mpmath as mp

mp.mp.dps = 60


def disc_distance(u, v):
    u, v = mp.mpc(u), mp.mpc(v)
    return mp.atanh(abs(u - v) / abs(1 - mp.conj(u) * v))


def halfplane_distance(z, w):
    z, w = mp.mpc(z), mp.mpc(w)
    return mp.atanh(abs(z - w) / abs(z + mp.conj(w)))


def strip_distance(z, w, half_width=1):
    L = mp.mpf(half_width)
    f = lambda s: mp.tan(mp.pi * mp.mpc(s) / (4 * L))
    return disc_distance(f(z), f(w))


def tetra_origin_distance(x):
    a, b, p = (mp.mpc(v) for v in x)
    cross = abs(a * b - p)
    m = max(
        (abs(a - mp.conj(b) * p) + cross) / (1 - abs(b) ** 2),
        (abs(b - mp.conj(a) * p) + cross) / (1 - abs(a) ** 2),
    )
    return mp.atanh(m)


def tetra_defect(a):
    # five legs atanh(a), long leg 2 atanh(a): defect comes out atanh(a)
    return mp.atanh(mp.mpf(a))


def gn_midpoint_lower(a):
    # rational family lam -> (2 lam s2 - s1) / (2 - lam s1) applied to
    # (a, 0) against the origin; the maximum over |lam| = 1 sits at lam = 1
    a = mp.mpf(a)
    return mp.atanh(a / (2 - a))


def gn_s_lb(a):
    a = mp.mpf(a)
    return gn_midpoint_lower(a) + 2 * mp.atanh(a * a) - 2 * mp.atanh(a)


def hinge_boundary_distance(x1, s):
    """min over the flat facet and the parabola arc of psi = (t-1)_+^2."""
    x1, s = mp.mpf(x1), mp.mpf(s)
    flat = mp.sqrt(x1**2 + max(mp.mpf(0), s - 1) ** 2) if s > 1 else x1
    best = flat
    # stationary points of (x1 - u^2)^2 + (1 + u - s)^2 over u >= 0
    for r in mp.polyroots([2, 0, 1 - 2 * x1, 1 - s]):
        if abs(mp.im(r)) < mp.mpf("1e-40") and mp.re(r) > 0:
            u = mp.re(r)
            best = min(best, mp.sqrt((x1 - u * u) ** 2 + (1 + u - s) ** 2))
    return best


def atanh_one_minus(log_eps):
    eps = mp.exp(mp.mpf(log_eps))
    return mp.atanh(1 - eps)


def exp_profile_cheap_lower(x):
    # graph-tangent lower bound psi(x) / hypot(1, psi'(x)) at the center point
    x = mp.mpf(x)
    v = mp.exp(-1 / x)
    dv = v / x**2
    return v / mp.sqrt(1 + dv**2)


ANCHORS = {
    "disc 0 to 0.5": (lambda: disc_distance(0, "0.5")),
    "disc 0.3 to -0.3": (lambda: disc_distance("0.3", "-0.3")),
    "halfplane 1 to 3": (lambda: halfplane_distance(1, 3)),
    "strip 0.3+0.2j to -0.5-0.1j": (
        lambda: strip_distance(mp.mpc("0.3", "0.2"), mp.mpc("-0.5", "-0.1"))
    ),
    "tetra origin (0.3,0.2,0.05)": (
        lambda: tetra_origin_distance(("0.3", "0.2", "0.05"))
    ),
    "tetra origin royal 0.8": (
        lambda: tetra_origin_distance(("0.8", "0.8", "0.64"))
    ),
    "tetra defect 0.999": (lambda: tetra_defect("0.999")),
    "gn s_lb 0.9": (lambda: gn_s_lb("0.9")),
    "gn s_lb 0.9999": (lambda: gn_s_lb("0.9999")),
    "hinge boundary (0.5, 1.5)": (lambda: hinge_boundary_distance("0.5", "1.5")),
    "atanh(1 - e^-100)": (lambda: atanh_one_minus(-100)),
    "exp cheap lower 0.1": (lambda: exp_profile_cheap_lower("0.1")),
}


if __name__ == "__main__":
    for name, fn in ANCHORS.items():
        print(f"{name:32s} {mp.nstr(fn(), 22)}")
