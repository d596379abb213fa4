"""Vectorized cdf/sf/pdf evaluation over numpy arrays.

Fast path used by sampling and Kolmogorov-Smirnov sweeps, where the scalar
SeriesEval machinery would dominate the runtime.  The formulas mirror the
blocks in `series`; the test suite pins both paths against each other.
Term counts come from the same certified majorant rule as the scalar driver,
taken at the slowest-converging argument of each branch.
"""

from __future__ import annotations

import math

import numpy as np

from . import series

_SQRT2 = math.sqrt(2.0)


def _branch_terms(block_factory, xs, tol):
    """Terms needed for every x in xs, from the branch's worst endpoints."""
    lo, hi = float(xs.min()), float(xs.max())
    n = max(series._terms_needed(block_factory(lo), tol),
            series._terms_needed(block_factory(hi), tol))
    return n + 2


def _check_positive(xs):
    if np.any(xs <= 0.0):
        raise ValueError("grid evaluation requires strictly positive arguments")


def _height_cdf_branch(xs, tol):
    k = _branch_terms(series._height_cdf_block, xs, tol)
    n2 = np.arange(1, k + 1, dtype=float) ** 2
    e = np.exp(-np.outer(np.pi**2 / xs**2, n2))
    return (4.0 * np.pi**2.5 / xs**3) * (e @ n2)


def _height_sf_branch(xs, tol):
    k = _branch_terms(series._height_sf_block, xs, tol)
    n2 = np.arange(1, k + 1, dtype=float) ** 2
    y2 = xs * xs
    w = np.outer(y2, n2)
    return 2.0 * np.sum((2.0 * w - 1.0) * np.exp(-w), axis=1)


def height_cdf(xs, tol=1e-12):
    xs = np.asarray(xs, dtype=float)
    _check_positive(xs)
    out = np.empty_like(xs)
    dual = xs < series.HEIGHT_SWITCH
    if dual.any():
        out[dual] = _height_cdf_branch(xs[dual], tol)
    if (~dual).any():
        out[~dual] = 1.0 - _height_sf_branch(xs[~dual], tol)
    return out


def height_sf(xs, tol=1e-12):
    xs = np.asarray(xs, dtype=float)
    _check_positive(xs)
    out = np.empty_like(xs)
    dual = xs < series.HEIGHT_SWITCH
    if dual.any():
        out[dual] = 1.0 - _height_cdf_branch(xs[dual], tol)
    if (~dual).any():
        out[~dual] = _height_sf_branch(xs[~dual], tol)
    return out


def height_pdf(xs, tol=1e-12):
    xs = np.asarray(xs, dtype=float)
    _check_positive(xs)
    out = np.empty_like(xs)
    dual = xs < series.HEIGHT_SWITCH
    if dual.any():
        x = xs[dual]
        k = _branch_terms(series._height_pdf_dual_block, x, tol)
        n2 = np.arange(1, k + 1, dtype=float) ** 2
        w = np.outer(np.pi**2 / x**2, n2)
        out[dual] = (4.0 * np.pi**2.5 / x**4) * np.sum(n2 * (2.0 * w - 3.0) * np.exp(-w), axis=1)
    if (~dual).any():
        x = xs[~dual]
        k = _branch_terms(series._height_pdf_direct_block, x, tol)
        n2 = np.arange(1, k + 1, dtype=float) ** 2
        w = np.outer(x * x, n2)
        out[~dual] = 4.0 * x * np.sum(n2 * (2.0 * w - 3.0) * np.exp(-w), axis=1)
    return out


def _diam_cdf_branch(xs, tol):
    k = _branch_terms(series._diam_cdf_block, xs, tol)
    n2 = np.arange(1, k + 1, dtype=float) ** 2
    a = np.outer(4.0 * np.pi**2 / xs**2, n2)
    inner = ((8.0 / xs**3)[:, None] * (24.0 * a - 36.0 * a**2 + 8.0 * a**3)
             + (16.0 / xs)[:, None] * a**2)
    return (math.sqrt(math.pi) / 3.0) * np.sum(inner * np.exp(-a), axis=1)


def _diam_sf_branch(xs, tol):
    k = _branch_terms(series._diam_sf_block, xs, tol)
    n = np.arange(2, k + 2, dtype=float)
    n2 = n * n
    w = np.outer(xs * xs, n2)
    return np.sum((n2 - 1.0) * (w * w / 6.0 - 2.0 * w + 2.0) * np.exp(-w / 4.0), axis=1)


def diam_cdf(xs, tol=1e-12):
    xs = np.asarray(xs, dtype=float)
    _check_positive(xs)
    out = np.empty_like(xs)
    dual = xs < series.DIAM_SWITCH
    if dual.any():
        out[dual] = _diam_cdf_branch(xs[dual], tol)
    if (~dual).any():
        out[~dual] = 1.0 - _diam_sf_branch(xs[~dual], tol)
    return out


def diam_sf(xs, tol=1e-12):
    xs = np.asarray(xs, dtype=float)
    _check_positive(xs)
    out = np.empty_like(xs)
    dual = xs < series.DIAM_SWITCH
    if dual.any():
        out[dual] = 1.0 - _diam_cdf_branch(xs[dual], tol)
    if (~dual).any():
        out[~dual] = _diam_sf_branch(xs[~dual], tol)
    return out


def diam_pdf(xs, tol=1e-12):
    xs = np.asarray(xs, dtype=float)
    _check_positive(xs)
    out = np.empty_like(xs)
    dual = xs < series.DIAM_SWITCH
    if dual.any():
        x = xs[dual]
        k = _branch_terms(series._diam_pdf_dual_block, x, tol)
        n2 = np.arange(1, k + 1, dtype=float) ** 2
        a = np.outer(4.0 * np.pi**2 / x**2, n2)
        inner = ((16.0 / x**4)[:, None] * (4.0 * a**4 - 36.0 * a**3 + 75.0 * a**2 - 30.0 * a)
                 + (8.0 / x**2)[:, None] * (2.0 * a**3 - 5.0 * a**2))
        out[dual] = (2.0 * math.sqrt(math.pi) / 3.0) * np.sum(inner * np.exp(-a), axis=1)
    if (~dual).any():
        x = xs[~dual]
        k = _branch_terms(series._diam_pdf_direct_block, x, tol)
        n2 = np.arange(1, k + 1, dtype=float) ** 2
        n4, n6, n8 = n2 * n2, n2 * n2 * n2, (n2 * n2) ** 2
        x2 = x * x
        p = (np.outer(x2 * x2 * x, n8) - np.outer(x2 * x * (20.0 + x2), n6)
             + np.outer(20.0 * x * (3.0 + x2), n4) - np.outer(60.0 * x, n2))
        out[~dual] = np.sum(p * np.exp(-np.outer(x2, n2) / 4.0), axis=1) / 12.0
    return out


def delta_cdf(xs, tol=1e-12):
    return diam_cdf(np.asarray(xs, dtype=float) / _SQRT2, tol)


def delta_sf(xs, tol=1e-12):
    return diam_sf(np.asarray(xs, dtype=float) / _SQRT2, tol)


def delta_pdf(xs, tol=1e-12):
    return diam_pdf(np.asarray(xs, dtype=float) / _SQRT2, tol) / _SQRT2
