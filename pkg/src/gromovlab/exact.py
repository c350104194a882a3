"""Exact invariant distances on model domains, plus certified enclosures.

Disc, half-plane, strip, polydisc and ball carry closed-form distances
(Kobayashi = Caratheodory on these domains) in the atanh normalization.
The symmetrized bidisc and the tetrablock get two-sided enclosures built
from distance-decreasing function families (lower bounds) and explicit
analytic discs / matrix lifts (upper bounds); on the special
configurations the witness constructions use, the two sides collapse and
the enclosure is exact.

Numerical contract: every distance evaluator stays accurate all the way
to boundary gaps of order 1e-300 when handed analytic gap parameters.
The key identity is

    atanh(m) = log1p(m) - 0.5*log(1 - m^2)

combined with closed forms for 1 - m^2 that avoid the catastrophic
cancellation in |1 - conj(u) v|^2 - |u - v|^2.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import DistanceOracle


class OracleError(ValueError):
    """A point fed to a distance evaluator is outside its domain."""


# Below this value of 1 - m^2 the direct |u-v|/|1-conj(u)v| quotient loses
# digits, so we switch to the log1p identity.
_STABLE_SWITCH = 0.19


@dataclass(frozen=True)
class DistBound:
    """Two-sided enclosure [lo, hi] of a distance, with provenance tags."""

    lo: float
    hi: float
    lo_tag: str = ""
    hi_tag: str = ""

    def __post_init__(self):
        if not (self.hi >= self.lo - 1e-12 * (1.0 + abs(self.lo))):
            raise ValueError(f"inverted enclosure: lo={self.lo} hi={self.hi}")

    @classmethod
    def exact(cls, value: float, tag: str = "") -> "DistBound":
        return cls(lo=value, hi=value, lo_tag=tag, hi_tag=tag)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def is_exact(self, tol: float = 1e-12) -> bool:
        return self.width <= tol * (1.0 + abs(self.lo))

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= value <= self.hi + tol


def _one_minus_abs_sq(z: complex, gap: float | None) -> float:
    # 1 - |z|^2; the analytic override gap = 1 - |z| survives float
    # rounding of z itself (z may round onto the boundary).
    if gap is not None:
        if not 0.0 < gap <= 1.0:
            raise OracleError(f"boundary gap must be in (0, 1], got {gap}")
        return gap * (2.0 - gap)
    return 1.0 - (z.real * z.real + z.imag * z.imag)


def _atanh_stable(m_direct: float, one_minus_m2: float) -> float:
    if one_minus_m2 <= 0.0:
        raise OracleError("point on or outside the boundary")
    if one_minus_m2 >= _STABLE_SWITCH:
        return math.atanh(min(m_direct, 1.0 - 1e-17))
    m = math.sqrt(max(0.0, 1.0 - one_minus_m2))
    return math.log1p(m) - 0.5 * math.log(one_minus_m2)


def atanh_one_minus(log_eps: float) -> float:
    """atanh(1 - eps) given log(eps), exact in the log domain.

    atanh(1-eps) = 0.5*(log(2-eps) - log(eps)).  The eps inside (2-eps)
    only matters to relative order eps, so evaluating it in floats (or
    dropping it entirely on underflow) keeps the result correct; the
    rounding direction is upward, which is the safe side for the upper
    bounds this feeds.
    """
    eps = math.exp(log_eps) if log_eps > -745.0 else 0.0
    if eps >= 1.0:
        raise OracleError("atanh_one_minus needs eps < 1")
    return 0.5 * (math.log(2.0 - eps) - log_eps)


def disc_distance(
    u: complex,
    v: complex,
    gap_u: float | None = None,
    gap_v: float | None = None,
) -> float:
    """Poincare distance atanh|(u-v)/(1-conj(u)v)| on the unit disc.

    gap_u / gap_v are optional analytic values of 1-|u|, 1-|v| for points
    so close to the boundary that the float coordinates have rounded.
    """
    u = complex(u)
    v = complex(v)
    a = _one_minus_abs_sq(u, gap_u)
    b = _one_minus_abs_sq(v, gap_v)
    if a <= 0.0 or b <= 0.0:
        raise OracleError(f"disc_distance: point outside the open disc ({u}, {v})")
    den = abs(1.0 - u.conjugate() * v) ** 2
    one_minus_m2 = (a / den) * b
    m = abs(u - v) / math.sqrt(den)
    return _atanh_stable(m, one_minus_m2)


def halfplane_distance(
    z: complex,
    w: complex,
    re_z: float | None = None,
    re_w: float | None = None,
) -> float:
    """atanh|(z-w)/(z+conj(w))| on the right half-plane Re > 0.

    On the positive reals this is 0.5*|log(z/w)|.  re_z / re_w override
    the real parts analytically for points whose float real part has
    underflowed or rounded.
    """
    z = complex(z)
    w = complex(w)
    rz = z.real if re_z is None else re_z
    rw = w.real if re_w is None else re_w
    if rz <= 0.0 or rw <= 0.0:
        raise OracleError("halfplane_distance: point outside Re > 0")
    den = abs(z + w.conjugate()) ** 2
    one_minus_m2 = 4.0 * rz * rw / den
    m = abs(z - w) / math.sqrt(den)
    return _atanh_stable(m, one_minus_m2)


def strip_distance(z: complex, w: complex, half_width: float = 1.0) -> float:
    """Invariant distance on the vertical strip |Re z| < half_width.

    tan(pi z / (4L)) is a biholomorphism onto the unit disc.
    """
    L = half_width
    if L <= 0.0:
        raise OracleError("strip half_width must be positive")
    z = complex(z)
    w = complex(w)
    if abs(z.real) >= L or abs(w.real) >= L:
        raise OracleError("strip_distance: point outside the strip")
    s = math.pi / (4.0 * L)
    return disc_distance(cmath.tan(s * z), cmath.tan(s * w))


def polydisc_distance(zs: Sequence[complex], ws: Sequence[complex]) -> float:
    """Sup of coordinate Poincare distances."""
    if len(zs) != len(ws):
        raise OracleError("dimension mismatch")
    return max(disc_distance(a, b) for a, b in zip(zs, ws))


def ball_distance(zs: Sequence[complex], ws: Sequence[complex]) -> float:
    """Kobayashi distance on the Euclidean unit ball of C^n.

    The Mobius quotient numerator is evaluated through the Lagrange
    identity  |z|^2|w|^2 - |<z,w>|^2 = sum_{i<j} |z_i w_j - z_j w_i|^2,
    which keeps nearby points accurate; the boundary side goes through
    the product form of 1 - m^2.
    """
    z = np.asarray(zs, dtype=complex)
    w = np.asarray(ws, dtype=complex)
    if z.shape != w.shape or z.ndim != 1:
        raise OracleError("ball_distance: shape mismatch")
    nz2 = float(np.sum(z.real**2 + z.imag**2))
    nw2 = float(np.sum(w.real**2 + w.imag**2))
    if nz2 >= 1.0 or nw2 >= 1.0:
        raise OracleError("ball_distance: point outside the open ball")
    ip = complex(np.sum(z * np.conj(w)))
    den = abs(1.0 - ip) ** 2
    one_minus_m2 = (1.0 - nz2) * (1.0 - nw2) / den
    diff2 = float(np.sum(np.abs(z - w) ** 2))
    gram = 0.0
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            gram += abs(z[i] * w[j] - z[j] * w[i]) ** 2
    m = math.sqrt(max(0.0, diff2 - gram) / den)
    return _atanh_stable(m, one_minus_m2)


def disc_to_halfplane(z: complex) -> complex:
    """Cayley map of the unit disc onto Re > 0 (0 -> 1)."""
    return (1.0 + z) / (1.0 - z)


def halfplane_to_disc(w: complex) -> complex:
    return (w - 1.0) / (w + 1.0)


def mobius_disc_automorphism(a: complex, theta: float = 0.0) -> Callable[[complex], complex]:
    """z -> e^{i theta} (z - a)/(1 - conj(a) z), an automorphism of the disc."""
    if abs(a) >= 1.0:
        raise OracleError("automorphism parameter must be inside the disc")
    phase = cmath.exp(1j * theta)

    def phi(z: complex) -> complex:
        return phase * (z - a) / (1.0 - a.conjugate() * z)

    return phi


# ---------------------------------------------------------------------------
# oracle factories


def disc_oracle() -> DistanceOracle:
    return DistanceOracle(
        point_space="unit_disc",
        fn=lambda z, w: disc_distance(z, w),
        validate=lambda z: abs(complex(z)) < 1.0,
    )


def halfplane_oracle() -> DistanceOracle:
    return DistanceOracle(
        point_space="right_halfplane",
        fn=lambda z, w: halfplane_distance(z, w),
        validate=lambda z: complex(z).real > 0.0,
    )


def strip_oracle(half_width: float = 1.0) -> DistanceOracle:
    return DistanceOracle(
        point_space=f"strip_{half_width:g}",
        fn=lambda z, w: strip_distance(z, w, half_width),
        validate=lambda z: abs(complex(z).real) < half_width,
    )


def polydisc_oracle(n: int) -> DistanceOracle:
    return DistanceOracle(
        point_space=f"polydisc_{n}",
        fn=polydisc_distance,
        validate=lambda zs: len(zs) == n and all(abs(complex(z)) < 1.0 for z in zs),
    )


def ball_oracle(n: int) -> DistanceOracle:
    return DistanceOracle(
        point_space=f"ball_{n}",
        fn=ball_distance,
        validate=lambda zs: len(zs) == n
        and sum(abs(complex(z)) ** 2 for z in zs) < 1.0,
    )


def polydisc_axis_oracle(n: int) -> DistanceOracle:
    """Polydisc restricted to the real-axis torus, in geodesic parameters.

    A point is an n-tuple of reals t, standing for the polydisc point
    (tanh t_1, ..., tanh t_n).  The distance is max_i |t_i - s_i|, which
    is the exact polydisc distance of the represented points: on the real
    axis of the disc the geodesic parameter is additive.  This
    representation stays exact for parameters far beyond the tanh
    saturation threshold (~18) where complex coordinates round onto the
    boundary.
    """

    def fn(ts, ss) -> float:
        if len(ts) != n or len(ss) != n:
            raise OracleError("dimension mismatch")
        return max(abs(float(a) - float(b)) for a, b in zip(ts, ss))

    return DistanceOracle(
        point_space=f"polydisc_axis_{n}",
        fn=fn,
        validate=lambda ts: len(ts) == n and all(math.isfinite(float(t)) for t in ts),
    )


# ---------------------------------------------------------------------------
# symmetrized polydisc


def sym_poly_map(zs: Sequence[complex]) -> tuple[complex, ...]:
    """Elementary symmetric polynomials (e_1, ..., e_n) of the coordinates."""
    c = np.zeros(len(zs) + 1, dtype=complex)
    c[0] = 1.0
    for k, z in enumerate(zs):
        c[1 : k + 2] = c[1 : k + 2] - z * c[0 : k + 1]
    # prod (X - z_i) = X^n + c_1 X^{n-1} + ... ; e_k = (-1)^k c_k
    return tuple((-1.0) ** k * c[k] for k in range(1, len(zs) + 1))


def gn_roots(s: Sequence[complex]) -> np.ndarray:
    """Coordinates of any polydisc preimage of a symmetrized point."""
    n = len(s)
    coeffs = [1.0 + 0.0j] + [(-1.0) ** k * complex(s[k - 1]) for k in range(1, n + 1)]
    return np.roots(coeffs)


def gn_membership(s: Sequence[complex], margin: float = 1e-10) -> bool:
    """Interior membership in the symmetrized polydisc, with a safety margin."""
    r = gn_roots(s)
    return bool(np.max(np.abs(r)) < 1.0 - margin)


def _gn_magic(lam: complex, s: complex, p: complex) -> complex:
    # rational inner family separating points of the symmetrized bidisc
    return (2.0 * lam * p - s) / (2.0 - lam * s)


def _grid_refine_max(f: Callable[[float], float], lo: float, hi: float, iters: int = 70) -> float:
    """Golden-section polish of a 1-d maximum; returns the best value seen.

    Only ever used to improve a lower bound, so non-unimodality is safe.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    best = max(f(a), f(b), fc, fd)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        best = max(best, fc, fd)
    return best


def gn_lower_bound(x: Sequence[complex], y: Sequence[complex], grid: int = 720) -> float:
    """Certified lower bound for the invariant distance on the symmetrized
    polydisc: best separation over distance-decreasing maps to the disc.

    Always includes the scaled coordinate maps e_k / C(n, k); for n = 2
    also the rational inner family, scanned over a phase grid and polished.
    """
    n = len(x)
    if len(y) != n:
        raise OracleError("dimension mismatch")
    best = 0.0
    for k in range(1, n + 1):
        c = math.comb(n, k)
        best = max(best, disc_distance(complex(x[k - 1]) / c, complex(y[k - 1]) / c))
    if n == 2:
        sx, px = complex(x[0]), complex(x[1])
        sy, py = complex(y[0]), complex(y[1])

        def val(theta: float) -> float:
            lam = cmath.exp(1j * theta)
            try:
                return disc_distance(_gn_magic(lam, sx, px), _gn_magic(lam, sy, py))
            except OracleError:
                return 0.0

        step = 2.0 * math.pi / grid
        vals = [val(k * step) for k in range(grid)]
        k0 = int(np.argmax(vals))
        best = max(best, vals[k0])
        best = max(best, _grid_refine_max(val, (k0 - 1) * step, (k0 + 1) * step))
    return best


def gn_upper_bound(x: Sequence[complex], y: Sequence[complex]) -> float:
    """Upper bound via polydisc preimages: min over root pairings of the
    polydisc distance between lifted tuples.

    Pairs lying on the top-coordinate axis (e_1 = ... = e_{n-1} = 0) also
    get the analytic disc lam -> (0, ..., 0, lam), whose preimage tuples
    have coordinates of modulus |lam|^{1/n} < 1; that leg is much tighter
    than any root pairing when the top coordinates are close.
    """
    n = len(x)
    if n > 6:
        raise OracleError("root-pairing upper bound limited to n <= 6")
    rx = gn_roots(x)
    ry = gn_roots(y)
    if np.max(np.abs(rx)) >= 1.0 or np.max(np.abs(ry)) >= 1.0:
        raise OracleError("point outside the open symmetrized polydisc")
    best = math.inf
    if all(abs(complex(v)) < 1e-15 for v in x[:-1]) and all(
        abs(complex(v)) < 1e-15 for v in y[:-1]
    ):
        best = disc_distance(complex(x[-1]), complex(y[-1]))
    for perm in itertools.permutations(range(n)):
        cand = max(disc_distance(rx[i], ry[perm[i]]) for i in range(n))
        best = min(best, cand)
    return best


def gn_pair_bounds(x: Sequence[complex], y: Sequence[complex]) -> DistBound:
    return DistBound(
        lo=gn_lower_bound(x, y),
        hi=gn_upper_bound(x, y),
        lo_tag="inner function family",
        hi_tag="polydisc lift pairing",
    )


# ---------------------------------------------------------------------------
# tetrablock

TetraPoint = tuple[complex, complex, complex]


def tetra_lift(x: TetraPoint) -> np.ndarray:
    """Symmetric 2x2 matrix with diagonal (x1, x2) and determinant x3."""
    a, b, p = (complex(v) for v in x)
    c = cmath.sqrt(a * b - p)
    return np.array([[a, c], [c, b]], dtype=complex)


def _spectral_norm(Z: np.ndarray) -> float:
    return float(np.linalg.svd(Z, compute_uv=False)[0])


def tetra_membership(x: TetraPoint, margin: float = 1e-10) -> bool:
    """Interior membership: the symmetric lift is a strict contraction.

    (Both square-root branches of the off-diagonal entry are conjugate by
    diag(1, -1), so they share singular values.)
    """
    return _spectral_norm(tetra_lift(x)) < 1.0 - margin


def tetra_magic(beta: complex, x: TetraPoint) -> complex:
    """Rational inner family of the tetrablock; maps it into the disc and
    fixes the origin."""
    a, b, p = (complex(v) for v in x)
    return (p * beta - a) / (b * beta - 1.0)


def tetra_automorphism(t: float, x: TetraPoint) -> TetraPoint:
    """Matrix Mobius shift Z -> (Z - tI)(I - tZ)^{-1} pushed to the
    tetrablock, for real t in (-1, 1).

    The push-down is rational in (x1, x2, x3), so no lift (and no square
    root branch) is needed:
        den = 1 - t(x1 + x2) + t^2 x3.
    """
    if not -1.0 < t < 1.0:
        raise OracleError("automorphism parameter must be in (-1, 1)")
    a, b, p = (complex(v) for v in x)
    den = 1.0 - t * (a + b) + t * t * p
    m1 = (a - t + t * t * b - t * p) / den
    m2 = (b - t + t * t * a - t * p) / den
    m3 = (p - t * (a + b) + t * t) / den
    return (m1, m2, m3)


def tetra_royal_geodesic(a: float, lam: complex) -> TetraPoint:
    """Complex geodesic through (a, a, a^2): the shift by -a of the
    middle-slot disc lam -> (0, lam, 0)."""
    return tetra_automorphism(-a, (0.0, complex(lam), 0.0))


def tetra_origin_distance(x: TetraPoint) -> float:
    """Exact invariant distance from the origin of the tetrablock.

        atanh max{ (|x1 - conj(x2) x3| + |x1 x2 - x3|) / (1 - |x2|^2),
                   (|x2 - conj(x1) x3| + |x1 x2 - x3|) / (1 - |x1|^2) }

    Distances to the origin are the one configuration where the
    tetrablock's Lempert function has a closed form and matches the
    Caratheodory side, so this single expression is two-sided exact.
    """
    a, b, p = (complex(v) for v in x)
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise OracleError("point outside the open tetrablock")
    cross = abs(a * b - p)
    m = max(
        (abs(a - b.conjugate() * p) + cross) / (1.0 - abs(b) ** 2),
        (abs(b - a.conjugate() * p) + cross) / (1.0 - abs(a) ** 2),
    )
    if m >= 1.0:
        raise OracleError("point outside the open tetrablock")
    return math.atanh(m)


def tetra_slot_distance(b1: complex, b2: complex) -> float:
    """Exact distance between middle-slot points (0, b, 0).

    Sandwich: the disc lam -> (0, lam, 0) gives <= rho(b1, b2); the
    coordinate projection onto the middle slot gives >=.
    """
    return disc_distance(b1, b2)


def tetra_origin_bounds(x: TetraPoint, grid: int = 720) -> DistBound:
    """Enclosure of the distance to the origin.

    Lower: coordinate projections and the rational inner family (all fix
    0).  Upper: atanh of the symmetric lift's norm, via the lifted disc
    through 0 and the lift in the 2x2 contraction ball.
    """
    lo = max(math.atanh(min(abs(complex(v)), 1.0 - 1e-16)) for v in x)

    def val(theta: float) -> float:
        beta = cmath.exp(1j * theta)
        m = abs(tetra_magic(beta, x))
        return math.atanh(m) if m < 1.0 else 0.0

    step = 2.0 * math.pi / grid
    vals = [val(k * step) for k in range(grid)]
    k0 = int(np.argmax(vals))
    lo = max(lo, vals[k0], _grid_refine_max(val, (k0 - 1) * step, (k0 + 1) * step))
    norm = _spectral_norm(tetra_lift(x))
    if norm >= 1.0:
        raise OracleError("point outside the open tetrablock")
    return DistBound(lo=lo, hi=math.atanh(norm), lo_tag="inner family", hi_tag="matrix lift")


def tetra_pair_distance(x: TetraPoint, y: TetraPoint, t: float, tol: float = 1e-10) -> float:
    """Exact distance for pairs that an automorphism aligns to the origin.

    Applies the shift by t, requires the image of x to vanish within tol,
    and evaluates the closed origin form at the image of y.  Raises
    OracleError when the alignment fails rather than guessing.
    """
    X = tetra_automorphism(t, x)
    Y = tetra_automorphism(t, y)
    scale = 1.0 + max(abs(c) for c in (*X, *Y))
    if max(abs(c) for c in X) > tol * scale:
        raise OracleError(f"automorphism t={t} does not send the first point to 0")
    return tetra_origin_distance(Y)


def tetra_pair_bounds(x: TetraPoint, y: TetraPoint, grid: int = 360) -> DistBound:
    """Generic enclosure for a tetrablock pair (loose but certified).

    Lower: coordinate projections and the inner family.  Upper: triangle
    inequality through the origin after the best aligning shift found on
    a parameter grid.
    """
    lo = max(
        disc_distance(complex(x[k]), complex(y[k])) for k in range(3)
    )

    def val(theta: float) -> float:
        beta = cmath.exp(1j * theta)
        u, v = tetra_magic(beta, x), tetra_magic(beta, y)
        try:
            return disc_distance(u, v)
        except OracleError:
            return 0.0

    step = 2.0 * math.pi / grid
    vals = [val(k * step) for k in range(grid)]
    k0 = int(np.argmax(vals))
    lo = max(lo, vals[k0], _grid_refine_max(val, (k0 - 1) * step, (k0 + 1) * step))

    hi = math.inf
    for t in np.linspace(-0.95, 0.95, 39):
        try:
            hx = tetra_origin_distance(tetra_automorphism(float(t), x))
            hy = tetra_origin_distance(tetra_automorphism(float(t), y))
        except OracleError:
            continue
        hi = min(hi, hx + hy)
    if not math.isfinite(hi):
        raise OracleError("no aligning shift kept both points inside")
    return DistBound(lo=lo, hi=hi, lo_tag="inner family", hi_tag="shift + triangle")
