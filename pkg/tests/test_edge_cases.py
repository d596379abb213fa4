"""Extreme-argument behavior: underflow certification, absurd magnitudes,
representation fallback, and error propagation."""

import math

import mpmath as mp
import numpy as np
import pytest

from browntree import laws, series
from browntree.errors import DomainError, NonConvergence

mp.mp.dps = 60

D = series.Representation.DIRECT
T = series.Representation.THETA_DUAL


def test_subnormal_window_certified():
    # around y ~ 0.115 the height cdf's leading term is a subnormal that the
    # two-factor product flushes to zero; the reported bound must still cover
    # the true value
    for y in (0.108, 0.112, 0.115, 0.118, 0.125):
        ev = series.marginal_height_cdf(y, series.SeriesSpec(T))
        true = float(4 * mp.pi ** mp.mpf("2.5") / mp.mpf(y) ** 3
                     * mp.nsum(lambda n: n**2 * mp.exp(-(n**2) * mp.pi**2 / mp.mpf(y) ** 2),
                               [1, mp.inf]))
        assert abs(ev.value - true) <= ev.trunc_bound, (y, ev, true)


def test_extreme_in_range_magnitudes():
    for y in (1e-40, 1e-20, 1e-6):
        assert series.marginal_height_cdf(y).value == 0.0
        assert series.marginal_diam_cdf(y).value == 0.0
        assert series.marginal_height_sf(y).value == 1.0
        assert series.szekeres_series(y).value == 0.0
        assert series.density_diam(y).value == 0.0
    for y in (1e3, 1e20, 1e40):
        assert series.marginal_height_sf(y).value == 0.0
        assert series.marginal_diam_sf(y).value == 0.0
        assert series.marginal_height_cdf(y, series.SeriesSpec(D)).value == 1.0
        assert series.density_diam(y, series.SeriesSpec(D)).value == 0.0
    args = series.JointArgs(1e-40, 5e-41)
    assert series.joint_survival(args).value == 1.0
    assert series.joint_cdf(args).value == 0.0
    args = series.JointArgs(1e30, 1e29)
    assert series.joint_survival(args).value == 0.0
    assert series.joint_cdf(args).value == pytest.approx(1.0, abs=1e-12)


def test_out_of_range_magnitudes_rejected():
    for bad in (1e-60, 1e60, 5e-324):
        with pytest.raises(DomainError):
            series.marginal_height_sf(bad)
        with pytest.raises(DomainError):
            series.density_diam(bad)
    with pytest.raises(DomainError):
        series.JointArgs(1e-90, 5e-91)
    with pytest.raises(DomainError):
        series.JointArgs(1.0, 1e50)


def test_nonfinite_arguments_rejected():
    for bad in (float("nan"), float("inf")):
        with pytest.raises(DomainError):
            series.marginal_height_sf(bad)
        with pytest.raises(DomainError):
            series.JointArgs(bad, 1.0)
        with pytest.raises(DomainError):
            series.JointArgs(1.0, bad)
        with pytest.raises(DomainError):
            laws.DistLaw(laws.LawKind.HEIGHT_GAMMA).cdf(bad)


def test_auto_mode_falls_back_when_direct_exhausts():
    # at y = 0.001 the direct height series needs ~30k terms; AUTO recovers
    # through the dual representation, explicit DIRECT raises
    spec_auto = series.SeriesSpec(series.Representation.AUTO)
    args = series.JointArgs(0.001, 0.0008)
    ev = series.joint_survival(args, spec_auto)
    assert ev.value == pytest.approx(1.0, abs=1e-12)
    assert ev.representation is T
    with pytest.raises(NonConvergence):
        series.joint_survival(args, series.SeriesSpec(D))
    with pytest.raises(NonConvergence):
        series.joint_cdf(args, series.SeriesSpec(D))
    assert series.joint_cdf(args, spec_auto).value == pytest.approx(0.0, abs=1e-12)


def test_law_propagates_nonconvergence():
    law = laws.DistLaw(laws.LawKind.HEIGHT_GAMMA,
                       spec=series.SeriesSpec(D, tol=1e-13, max_terms=8))
    with pytest.raises(NonConvergence):
        law.cdf(0.3)


def test_third_moments_match_oracle():
    # mpmath quadrature references; E[Gamma^3] = 3 sqrt(pi) zeta(3)
    got = laws.DistLaw(laws.LawKind.HEIGHT_GAMMA).moment(3)
    assert got.value == pytest.approx(6.3917711610383455, abs=1e-7)
    assert got.value == pytest.approx(float(3 * mp.sqrt(mp.pi) * mp.zeta(3)), abs=1e-7)
    got_d = laws.DistLaw(laws.LawKind.DIAMETER_D).moment(3)
    assert got_d.value == pytest.approx(14.179630807244128, abs=1e-7)


def test_quantile_extreme_levels_roundtrip():
    for law in (laws.DistLaw(laws.LawKind.HEIGHT_GAMMA),
                laws.DistLaw(laws.LawKind.SZEKERES_DELTA)):
        for p in (1e-4, 0.999, 0.99999):
            x = law.quantile(laws.QuantileQuery(p))
            assert law.cdf(x) == pytest.approx(p, rel=1e-6, abs=1e-12)


def test_series_spec_validation():
    with pytest.raises(DomainError):
        series.SeriesSpec(tol=0.0)
    with pytest.raises(DomainError):
        series.SeriesSpec(max_terms=0)
    with pytest.raises(DomainError):
        series.ThetaCoeff.for_index(0, 1.0)
    with pytest.raises(DomainError):
        series.ThetaCoeff.for_index(2, -1.0)
