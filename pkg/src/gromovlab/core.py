"""Metric kernel: Gromov products, four-point defects, sampled delta estimates.

Everything here works over abstract distance oracles so the same machinery
runs on exact model-domain backends, certified-bound tables, and synthetic
metrics alike.  The Gromov product uses the additive convention

    (x, y)_w = d(x, w) + d(w, y) - d(x, y)

with no 1/2 factor; a space is delta-hyperbolic in this normalization iff
every four-point defect is at most 2*delta.  All thresholds downstream
assume this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

import numpy as np

Point = Any
Quadruple = tuple[Point, Point, Point, Point]

#: default absolute tolerance for metric-axiom checks
METRIC_TOL = 1e-9


class SamplerExhausted(RuntimeError):
    """A finite quadruple source ran dry before the requested draw count."""


class QuasiIsometryFitError(RuntimeError):
    """No (c1, c2) on the fitting grid satisfies all pair inequalities."""

    def __init__(self, witness_pair):
        self.witness_pair = witness_pair
        super().__init__(f"no admissible (c1, c2) on grid; worst pair: {witness_pair!r}")


@dataclass(frozen=True)
class DistanceOracle:
    """A pseudo-distance evaluator tagged with the point space it expects.

    ``validate`` is optional membership screening; oracles never check it on
    the hot path, but samplers and the verification suite do.
    """

    point_space: str
    fn: Callable[[Point, Point], float]
    validate: Callable[[Point], bool] | None = None

    def __call__(self, x: Point, y: Point) -> float:
        return self.fn(x, y)


@dataclass(frozen=True)
class FourPointReport:
    """Defect data for one quadruple (p, q, x, w).

    defect = min{(p,x)_w, (x,q)_w} - (p,q)_w.  Negative Gromov products
    beyond twice the metric tolerance indicate a broken oracle, so the
    constructor refuses them.
    """

    quadruple: Quadruple
    gp_px_w: float
    gp_xq_w: float
    gp_pq_w: float
    defect: float

    def __post_init__(self):
        scale = 1.0 + max(abs(self.gp_px_w), abs(self.gp_xq_w), abs(self.gp_pq_w))
        floor = -2.0 * METRIC_TOL * scale
        if min(self.gp_px_w, self.gp_xq_w, self.gp_pq_w) < floor:
            raise ValueError(
                "negative Gromov product beyond tolerance; distance oracle "
                "violates the triangle inequality on this quadruple"
            )


@dataclass(frozen=True)
class DeltaEstimate:
    """Sampled supremum of four-point defects."""

    sup_defect: float
    argmax: Quadruple
    n: int
    seed: int


@dataclass(frozen=True)
class QuasiIsometryFit:
    c1: float
    c2: float
    max_violation: float


def gromov_product(d: Callable[[Point, Point], float], x: Point, y: Point, w: Point) -> float:
    """(x, y)_w in the additive convention (no 1/2 factor)."""
    return d(x, w) + d(w, y) - d(x, y)


def four_point_defect(
    d: Callable[[Point, Point], float], p: Point, q: Point, x: Point, w: Point
) -> FourPointReport:
    """Evaluate min{(p,x)_w, (x,q)_w} - (p,q)_w for one quadruple.

    Exactly six distances are needed; the three products share them.
    """
    d_pw, d_qw, d_xw = d(p, w), d(q, w), d(x, w)
    d_px, d_xq, d_pq = d(p, x), d(x, q), d(p, q)
    gp_px = d_pw + d_xw - d_px
    gp_xq = d_xw + d_qw - d_xq
    gp_pq = d_pw + d_qw - d_pq
    return FourPointReport(
        quadruple=(p, q, x, w),
        gp_px_w=gp_px,
        gp_xq_w=gp_xq,
        gp_pq_w=gp_pq,
        defect=min(gp_px, gp_xq) - gp_pq,
    )


Sampler = Callable[[np.random.Generator], Quadruple]


def uniform_quadruple_sampler(point_gen: Callable[[np.random.Generator], Point]) -> Sampler:
    """Quadruples of four independent draws from a point generator."""

    def draw(rng: np.random.Generator) -> Quadruple:
        return (point_gen(rng), point_gen(rng), point_gen(rng), point_gen(rng))

    return draw


def mixed_quadruple_sampler(
    base: Sampler, injected: Sequence[Quadruple], period: int = 8
) -> Sampler:
    """Witness-directed sampling: every ``period``-th draw cycles through
    ``injected`` quadruples, the rest come from ``base``.

    Deterministic given the rng stream: the injected index advances on a
    counter, not on rng state.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    if not injected:
        raise ValueError("injected quadruple list is empty")
    counter = {"draws": 0, "inj": 0}

    def draw(rng: np.random.Generator) -> Quadruple:
        i = counter["draws"]
        counter["draws"] = i + 1
        if i % period == period - 1:
            j = counter["inj"]
            counter["inj"] = j + 1
            return injected[j % len(injected)]
        return base(rng)

    return draw


def estimate_delta(
    d: Callable[[Point, Point], float],
    sampler: Sampler | Iterator[Quadruple],
    n: int,
    seed: int = 0,
) -> DeltaEstimate:
    """Sampled sup of four-point defects over ``n`` quadruples.

    Deterministic for a fixed seed, and monotone in ``n`` for a fixed seed
    since draws are consumed sequentially.  ``sampler`` may be a callable on
    an rng or a finite iterator; exhaustion of a finite source raises.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    best = -math.inf
    best_quad: Quadruple | None = None
    if callable(sampler):
        draws: Iterator[Quadruple] = (sampler(rng) for _ in range(n))
    else:
        draws = iter(sampler)
    count = 0
    for _ in range(n):
        try:
            quad = next(draws)
        except StopIteration:
            raise SamplerExhausted(
                f"quadruple source exhausted after {count} of {n} draws"
            ) from None
        count += 1
        rep = four_point_defect(d, *quad)
        if rep.defect > best:
            best = rep.defect
            best_quad = quad
    assert best_quad is not None
    return DeltaEstimate(sup_defect=best, argmax=best_quad, n=n, seed=seed)


def max_product_metric(d1: DistanceOracle, d2: DistanceOracle) -> DistanceOracle:
    """Sup metric on the product: d((x1,x2),(y1,y2)) = max(d1(x1,y1), d2(x2,y2)).

    Points are 2-tuples with one component per factor; anything else is a
    point-space mismatch.
    """

    def fn(x, y) -> float:
        if len(x) != 2 or len(y) != 2:
            raise ValueError("product points must be 2-tuples (one entry per factor)")
        return max(d1(x[0], y[0]), d2(x[1], y[1]))

    def validate(p) -> bool:
        if len(p) != 2:
            return False
        ok1 = d1.validate(p[0]) if d1.validate is not None else True
        ok2 = d2.validate(p[1]) if d2.validate is not None else True
        return ok1 and ok2

    return DistanceOracle(
        point_space=f"({d1.point_space})x({d2.point_space})",
        fn=fn,
        validate=validate,
    )


def product_delta_bound(delta: float, c: float) -> float:
    """Hyperbolicity constant for a sup-product of a delta-hyperbolic factor
    with a factor of diameter at most c: the product is (delta + 3c)-hyperbolic.
    """
    if delta < 0 or c < 0:
        raise ValueError("delta and c must be nonnegative")
    return delta + 3.0 * c


def weak_midpoint_ratios(
    triples: Iterable[tuple[Point, Point, Point]],
    d: Callable[[Point, Point], float],
) -> list[tuple[float, float, float]]:
    """For each (x, y, z) return (d(x,z)/d(x,y), d(y,z)/d(x,y), d(x,y)).

    A sequence of triples with both ratios tending to 1/2 at diverging scale
    d(x,y) is a weak-midpoint family.  Zero base distance is refused.
    """
    out = []
    for x, y, z in triples:
        base = d(x, y)
        if base == 0.0:
            raise ValueError("degenerate triple: d(x, y) = 0")
        out.append((d(x, z) / base, d(y, z) / base, base))
    return out


_DEFAULT_C1_GRID = tuple(1.0 + 0.25 * k for k in range(61))  # 1.0 .. 16.0
_DEFAULT_C2_GRID = tuple(0.25 * k for k in range(33))  # 0.0 .. 8.0


def quasi_isometry_fit(
    d1: Callable[[Point, Point], float],
    d2: Callable[[Point, Point], float],
    pairs: Sequence[tuple[Point, Point]],
    c1_grid: Sequence[float] = _DEFAULT_C1_GRID,
    c2_grid: Sequence[float] = _DEFAULT_C2_GRID,
) -> QuasiIsometryFit:
    """Smallest (c1, then c2) on the grid with
    d1/c1 - c2 <= d2 <= c1*d1 + c2 on every supplied pair.

    Selection is lexicographic in (c1, c2).  If no grid point works, raises
    with the pair that resisted the largest (c1, c2) as a witness.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    v1 = np.array([d1(x, y) for x, y in pairs], dtype=float)
    v2 = np.array([d2(x, y) for x, y in pairs], dtype=float)
    for c1 in sorted(c1_grid):
        if c1 < 1.0:
            raise ValueError("c1 grid entries must be >= 1")
        # minimal additive slack this c1 needs on the data
        need = np.maximum(v2 - c1 * v1, v1 / c1 - v2)
        needed = max(0.0, float(need.max()))
        for c2 in sorted(c2_grid):
            if c2 >= needed:
                return QuasiIsometryFit(c1=c1, c2=c2, max_violation=0.0)
    c1 = max(c1_grid)
    need = np.maximum(v2 - c1 * v1, v1 / c1 - v2)
    worst = int(np.argmax(need))
    raise QuasiIsometryFitError(pairs[worst])


def metric_axiom_violations(
    d: Callable[[Point, Point], float],
    points: Sequence[Point],
    tol: float = METRIC_TOL,
) -> list[str]:
    """Spot-check identity, symmetry and the triangle inequality on a sample.

    Returns human-readable violation descriptions (empty list = clean).
    Quadratic in len(points) for symmetry, cubic for triangles on a capped
    subset; intended for verification suites, not hot paths.
    """
    msgs = []
    n = len(points)
    for i in range(n):
        if abs(d(points[i], points[i])) > tol:
            msgs.append(f"d(x,x) != 0 at index {i}")
    for i in range(n):
        for j in range(i + 1, n):
            a = d(points[i], points[j])
            b = d(points[j], points[i])
            if a < -tol:
                msgs.append(f"negative distance at ({i},{j})")
            if abs(a - b) > tol:
                msgs.append(f"asymmetry at ({i},{j}): {a} vs {b}")
    m = min(n, 12)
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if d(points[i], points[k]) > d(points[i], points[j]) + d(points[j], points[k]) + tol:
                    msgs.append(f"triangle violation at ({i},{j},{k})")
    return msgs
