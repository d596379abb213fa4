"""Distribution-object queries: quantiles, moments, sampling, scaling."""

import math

import numpy as np
import pytest

from browntree import _grid, laws
from browntree.errors import DomainError

SQRT_PI = math.sqrt(math.pi)
SQRT2 = math.sqrt(2.0)
MEDIAN_GAMMA = 1.7302733508957872  # mpmath root of sf = 1/2
E_D = 2.3632718012063547  # = 4 sqrt(pi) / 3, mpmath quadrature
E_GAMMA2 = math.pi**2 / 3.0

GAMMA = laws.DistLaw(laws.LawKind.HEIGHT_GAMMA)
DIAM = laws.DistLaw(laws.LawKind.DIAMETER_D)
DELTA = laws.DistLaw(laws.LawKind.SZEKERES_DELTA)
ALL = (GAMMA, DIAM, DELTA)


def test_cdf_at_zero_and_domain():
    for law in ALL:
        assert law.cdf(0.0) == 0.0
        assert law.sf(0.0) == 1.0
        assert law.pdf(0.0) == 0.0
        with pytest.raises(DomainError):
            law.cdf(-0.1)


def test_cdf_sf_duality():
    for law in ALL:
        for x in (0.5, 1.0, 2.0):
            assert law.cdf(x) + law.sf(x) == pytest.approx(1.0, abs=1e-10)


def test_delta_is_sqrt2_pushforward_of_diameter():
    for x in (1.0, 2.0, 4.0):
        assert DELTA.cdf(x) == pytest.approx(DIAM.cdf(x / SQRT2), abs=1e-12)
        assert DELTA.pdf(x) == pytest.approx(DIAM.pdf(x / SQRT2) / SQRT2, abs=1e-12)


def test_distribution_level_tree_ordering():
    # Gamma <= D <= 2 Gamma transfers to sf_D between sf_Gamma(y) and sf_Gamma(y/2)
    for y in np.linspace(0.4, 6.0, 15):
        y = float(y)
        assert DIAM.sf(y) >= GAMMA.sf(y) - 1e-12
        assert DIAM.sf(y) <= GAMMA.sf(y / 2.0) + 1e-12


def test_quantile_median_and_roundtrip():
    med = GAMMA.quantile(0.5)
    assert med == pytest.approx(MEDIAN_GAMMA, abs=1e-9)
    assert GAMMA.sf(med) == pytest.approx(0.5, abs=1e-10)
    for law in ALL:
        for x0 in (1.0, 2.0, 3.0):
            p = law.cdf(x0)
            assert law.quantile(p) == pytest.approx(x0, abs=1e-8)


def test_quantile_roundtrip_probability_grid():
    for law in ALL:
        for p in (0.01, 0.1, 0.5, 0.9, 0.99):
            x = law.quantile(laws.QuantileQuery(p))
            assert law.cdf(x) == pytest.approx(p, abs=1e-10)


def test_quantile_monotone():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p1, p2 = sorted(rng.uniform(0.005, 0.995, size=2))
        if p2 - p1 < 1e-4:
            continue
        assert GAMMA.quantile(p1) < GAMMA.quantile(p2)


def test_quantile_validation():
    with pytest.raises(DomainError):
        laws.QuantileQuery(0.0)
    with pytest.raises(DomainError):
        laws.QuantileQuery(1.0)
    with pytest.raises(DomainError):
        GAMMA.quantile(2.0)


def test_first_moments():
    mg = GAMMA.moment(1)
    assert mg.value == pytest.approx(SQRT_PI, abs=1e-8)
    assert abs(mg.value - SQRT_PI) <= mg.abs_err + 1e-10
    md = DIAM.moment(1)
    assert md.value == pytest.approx(E_D, abs=1e-8)
    mdelta = DELTA.moment(1)
    assert mdelta.value == pytest.approx(SQRT2 * md.value, abs=1e-8)
    # Lemma 1 ordering, integrated
    assert mg.value <= md.value <= 2.0 * mg.value


def test_second_moment_of_height():
    m = GAMMA.moment(2)
    assert m.value == pytest.approx(E_GAMMA2, abs=1e-8)


def test_moment_routes_agree():
    for law in ALL:
        a = law.moment(1, route="pdf").value
        b = law.moment(1, route="sf").value
        assert a == pytest.approx(b, abs=1e-8)
    with pytest.raises(DomainError):
        GAMMA.moment(0)


def test_sampling_determinism_and_support():
    law = laws.DistLaw(laws.LawKind.HEIGHT_GAMMA, sampler_knots=512)
    a = law.sample(1000, seed=71)
    b = law.sample(1000, seed=71)
    assert np.array_equal(a, b)
    assert np.all(a > 0.0)
    c = law.sample(1000, seed=72)
    assert not np.array_equal(a, c)


def test_sampling_without_accelerator_matches_quantile():
    law = laws.DistLaw(laws.LawKind.DIAMETER_D)
    vals = law.sample(5, seed=3)
    rng = np.random.default_rng(3)
    u = rng.random(5)
    expect = [law.quantile(laws.QuantileQuery(p)) for p in u]
    assert vals == pytest.approx(expect, abs=1e-9)


def test_sampling_ks_bound():
    # Kolmogorov 99% band for m = 1e5 per the sampling contract
    from browntree.montecarlo import ks_statistic

    for kind in (laws.LawKind.HEIGHT_GAMMA, laws.LawKind.SZEKERES_DELTA):
        law = laws.DistLaw(kind, sampler_knots=1024)
        xs = law.sample(100_000, seed=2024)
        assert ks_statistic(xs, law) <= 0.0064


def test_grid_evaluators_match_scalar():
    rng = np.random.default_rng(11)
    xs = np.exp(rng.uniform(np.log(0.25), np.log(9.0), size=40))
    pairs = [
        (_grid.height_cdf, GAMMA.cdf), (_grid.height_sf, GAMMA.sf),
        (_grid.height_pdf, GAMMA.pdf), (_grid.diam_cdf, DIAM.cdf),
        (_grid.diam_sf, DIAM.sf), (_grid.diam_pdf, DIAM.pdf),
        (_grid.delta_cdf, DELTA.cdf), (_grid.delta_pdf, DELTA.pdf),
    ]
    for vec, scalar in pairs:
        got = vec(xs)
        want = np.array([scalar(float(x)) for x in xs])
        assert np.allclose(got, want, atol=1e-11, rtol=0.0)


def test_pdf_matches_cdf_derivative():
    h = 1e-4
    for law in ALL:
        for x in (1.0, 2.0, 3.5):
            fd = (law.cdf(x + h) - law.cdf(x - h)) / (2 * h)
            assert law.pdf(x) == pytest.approx(fd, abs=1e-6)
