"""Four-point machinery on abstract metric spaces."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gromovlab import core
from gromovlab.exact import disc_distance, disc_oracle


def d_real(x, y):
    return abs(x - y)


coords = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


@given(x=coords, y=coords, w=coords)
def test_gromov_product_on_the_line(x, y, w):
    # on R the product is twice the distance from w to the segment [x, y]
    gp = core.gromov_product(d_real, x, y, w)
    seg = max(min(x, y) - w, w - max(x, y), 0.0)
    assert gp == pytest.approx(2.0 * seg, abs=1e-9)
    assert gp >= -1e-12


@given(p=coords, q=coords, x=coords, w=coords)
def test_line_defect_is_nonpositive(p, q, x, w):
    # trees satisfy the four-point condition with zero defect
    rep = core.four_point_defect(d_real, p, q, x, w)
    assert rep.defect <= 1e-9


def test_four_point_report_fields():
    rep = core.four_point_defect(d_real, 0.0, 6.0, 2.0, 3.0)
    assert rep.gp_pq_w == pytest.approx(0.0)
    assert rep.defect == pytest.approx(min(rep.gp_px_w, rep.gp_xq_w) - rep.gp_pq_w)
    assert rep.quadruple == (0.0, 6.0, 2.0, 3.0)


def test_defect_needs_six_distances():
    calls = []

    def counting(x, y):
        calls.append((x, y))
        return abs(x - y)

    core.four_point_defect(counting, 0.0, 1.0, 2.0, 3.0)
    assert len(calls) == 6


def test_metric_axiom_violations_catches_asymmetry():
    def skew(x, y):
        return abs(x - y) + (0.1 if x < y else 0.0)

    msgs = core.metric_axiom_violations(skew, [0.0, 1.0, 2.0])
    assert any("symmetry" in m for m in msgs)
    assert core.metric_axiom_violations(d_real, [0.0, 1.0, 2.0]) == []


def test_metric_axiom_violations_catches_triangle():
    def bad(x, y):
        return abs(x - y) ** 2

    msgs = core.metric_axiom_violations(bad, [0.0, 1.0, 2.0])
    assert any("triangle" in m for m in msgs)


def test_estimate_delta_deterministic_and_monotone():
    d = disc_oracle().fn

    def gen(rng):
        z = rng.uniform(-0.7, 0.7) + 1j * rng.uniform(-0.7, 0.7)
        return z

    est1 = core.estimate_delta(d, core.uniform_quadruple_sampler(gen), 400, seed=5)
    est2 = core.estimate_delta(d, core.uniform_quadruple_sampler(gen), 400, seed=5)
    assert est1.sup_defect == est2.sup_defect
    assert est1.argmax == est2.argmax
    small = core.estimate_delta(d, core.uniform_quadruple_sampler(gen), 100, seed=5)
    assert small.sup_defect <= est1.sup_defect


def test_estimate_delta_accepts_iterator():
    quads = [(0.0, 0.1 * k, 0.05, 0.2) for k in range(1, 30)]
    est = core.estimate_delta(d_real, iter(quads), len(quads))
    assert est.sup_defect <= 1e-9
    assert est.n == len(quads)


def test_mixed_sampler_injects_at_period():
    marker = ("a", "b", "c", "d")

    def gen(rng):
        return float(rng.uniform())

    base = core.uniform_quadruple_sampler(gen)
    sampler = core.mixed_quadruple_sampler(base, [marker], period=4)
    rng = np.random.default_rng(0)
    draws = [sampler(rng) for _ in range(12)]
    assert draws[3] == marker and draws[7] == marker and draws[11] == marker
    assert all(not isinstance(q[0], str) for i, q in enumerate(draws) if i % 4 != 3)


def test_max_product_metric_is_max():
    d1 = disc_oracle()
    prod = core.max_product_metric(d1, d1)
    z = (0.3 + 0.0j, 0.1 + 0.0j)
    w = (-0.2 + 0.0j, 0.4 + 0.1j)
    expect = max(disc_distance(z[0], w[0]), disc_distance(z[1], w[1]))
    assert prod.fn(z, w) == pytest.approx(expect, abs=1e-14)


def test_product_delta_bound_grows_with_slack():
    assert core.product_delta_bound(0.7, 0.0) >= 0.7
    assert core.product_delta_bound(0.7, 2.0) > core.product_delta_bound(0.7, 0.5)


def test_weak_midpoint_ratios_on_the_line():
    triples = [(0.0, 4.0, 2.0), (0.0, 4.0, 3.0)]
    out = core.weak_midpoint_ratios(triples, d_real)
    (r1a, r1b, _), (r2a, r2b, _) = out
    assert (r1a, r1b) == pytest.approx((0.5, 0.5))
    assert (r2a, r2b) == pytest.approx((0.75, 0.25))


def test_quasi_isometry_fit_identity():
    pairs = [(float(i), float(j)) for i in range(6) for j in range(6) if i != j]
    fit = core.quasi_isometry_fit(d_real, d_real, pairs)
    assert fit.c1 == pytest.approx(1.0)
    assert fit.c2 == pytest.approx(0.0)


def test_quasi_isometry_fit_rejects_exponential_gap():
    pairs = [(0.0, float(k)) for k in range(1, 12)]
    with pytest.raises(core.QuasiIsometryFitError):
        core.quasi_isometry_fit(d_real, lambda x, y: math.exp(abs(x - y)), pairs)
