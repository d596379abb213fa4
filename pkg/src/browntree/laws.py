"""Queryable one-dimensional laws of the height, diameter and Szekeres limit.

DistLaw objects are immutable after construction: every query (cdf, sf, pdf,
quantile, moment, sample) is a pure function of the stored kind and series
policy, so instances are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate, special

from . import _grid, series
from .errors import BracketFailure, DomainError, QuadratureFailure

_SQRT2 = math.sqrt(2.0)


class LawKind(Enum):
    HEIGHT_GAMMA = "height-gamma"
    DIAMETER_D = "diameter-d"
    SZEKERES_DELTA = "szekeres-delta"


@dataclass(frozen=True)
class QuantileQuery:
    p: float
    tol_x: float = 1e-10

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"quantile level must lie in (0, 1), got {self.p}")
        if not self.tol_x > 0.0:
            raise DomainError(f"tol_x must be positive, got {self.tol_x}")


@dataclass(frozen=True)
class MomentResult:
    order: int
    value: float
    abs_err: float


# tail majorants sf(x) <= coeff * x^power * exp(-rate * x^2), valid for x >= valid_from
_TAIL = {
    LawKind.HEIGHT_GAMMA: (4.1, 2, 1.0, 2.0),
    LawKind.DIAMETER_D: (12.0, 4, 0.25, 3.0),
    LawKind.SZEKERES_DELTA: (3.0, 4, 0.125, 4.5),
}

_BRACKET_LO = 1e-6
_BRACKET_HI = 64.0


class DistLaw:
    """Law of Gamma, D or Delta under the normalized excursion measure."""

    def __init__(self, kind: LawKind, spec: series.SeriesSpec | None = None,
                 sampler_knots: int = 0):
        self.kind = kind
        self.spec = spec if spec is not None else series.DEFAULT_SPEC
        # Delta is the sqrt(2) pushforward of D
        self._scale = _SQRT2 if kind is LawKind.SZEKERES_DELTA else 1.0
        self._sampler_grid = self._build_sampler(sampler_knots) if sampler_knots else None

    # -- scalar queries ----------------------------------------------------

    def cdf(self, x: float) -> float:
        self._check_arg(x)
        if x == 0.0:
            return 0.0
        return self._series_cdf(x).value

    def sf(self, x: float) -> float:
        self._check_arg(x)
        if x == 0.0:
            return 1.0
        return self._series_sf(x).value

    def pdf(self, x: float) -> float:
        self._check_arg(x)
        if x == 0.0:
            return 0.0
        if self.kind is LawKind.HEIGHT_GAMMA:
            return series.density_height(x, self.spec).value
        if self.kind is LawKind.DIAMETER_D:
            return series.density_diam(x, self.spec).value
        return series.density_diam(x / _SQRT2, self.spec).value / _SQRT2

    def _check_arg(self, x: float):
        if x < 0.0 or not math.isfinite(x):
            raise DomainError(f"law argument must be nonnegative and finite, got {x}")

    def _series_cdf(self, x: float) -> series.SeriesEval:
        if self.kind is LawKind.HEIGHT_GAMMA:
            return series.marginal_height_cdf(x, self.spec)
        return series.marginal_diam_cdf(x / self._scale, self.spec)

    def _series_sf(self, x: float) -> series.SeriesEval:
        if self.kind is LawKind.HEIGHT_GAMMA:
            return series.marginal_height_sf(x, self.spec)
        return series.marginal_diam_sf(x / self._scale, self.spec)

    # -- vectorized queries (fast path) -------------------------------------

    def cdf_grid(self, xs) -> np.ndarray:
        fn = {LawKind.HEIGHT_GAMMA: _grid.height_cdf,
              LawKind.DIAMETER_D: _grid.diam_cdf,
              LawKind.SZEKERES_DELTA: _grid.delta_cdf}[self.kind]
        return fn(xs, min(self.spec.tol, 1e-12))

    def pdf_grid(self, xs) -> np.ndarray:
        fn = {LawKind.HEIGHT_GAMMA: _grid.height_pdf,
              LawKind.DIAMETER_D: _grid.diam_pdf,
              LawKind.SZEKERES_DELTA: _grid.delta_pdf}[self.kind]
        return fn(xs, min(self.spec.tol, 1e-12))

    # -- quantile ------------------------------------------------------------

    def quantile(self, q) -> float:
        """Inverse cdf, bracketed bisection refined by safeguarded Newton."""
        query = q if isinstance(q, QuantileQuery) else QuantileQuery(float(q))
        p = query.p
        lo, hi = _BRACKET_LO, _BRACKET_HI
        flo, fhi = self.cdf(lo) - p, self.cdf(hi) - p
        if flo > 0.0 or fhi < 0.0:
            raise BracketFailure(
                f"cdf bracket [{lo}, {hi}] does not straddle p={p} "
                f"(cdf(lo)-p={flo}, cdf(hi)-p={fhi})")
        # coarse bisection
        while hi - lo > 1e-3:
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) - p <= 0.0:
                lo = mid
            else:
                hi = mid
        # Newton polish, safeguarded by the bracket
        x = 0.5 * (lo + hi)
        for _ in range(120):
            f = self.cdf(x) - p
            if f <= 0.0:
                lo = max(lo, x)
            else:
                hi = min(hi, x)
            if abs(f) <= self.spec.tol and hi - lo <= query.tol_x:
                return x
            g = self.pdf(x)
            step_ok = g > 0.0 and math.isfinite(g)
            if step_ok:
                x_new = x - f / g
                step_ok = lo < x_new < hi
            if not step_ok:
                x_new = 0.5 * (lo + hi)
            if x_new == x:
                return x
            x = x_new
        return x

    # -- moments ---------------------------------------------------------------

    def _tail_bound_integral(self, order: int, x_cut: float) -> float:
        """Upper bound on order * int_{x_cut}^inf x^{order-1} sf(x) dx."""
        coeff, power, rate, valid_from = _TAIL[self.kind]
        if x_cut < valid_from:
            raise QuadratureFailure(f"tail cut {x_cut} below majorant validity {valid_from}")
        s = 0.5 * (order + power)
        return (order * coeff / 2.0) * rate**-s * special.gammaincc(s, rate * x_cut**2) * special.gamma(s)

    def _tail_cut(self, order: int) -> float:
        coeff, power, rate, valid_from = _TAIL[self.kind]
        x = max(valid_from, 6.0 / math.sqrt(rate))
        while self._tail_bound_integral(order, x) > 1e-13:
            x *= 1.25
        return x

    def _quad(self, fn, a, b):
        val, err = integrate.quad(fn, a, b, epsabs=1e-12, epsrel=1e-11, limit=200)
        if not math.isfinite(val) or err > 1e-7:
            raise QuadratureFailure(f"quadrature error {err} on [{a}, {b}]")
        return val, err

    def moment(self, order: int, route: str = "pdf") -> MomentResult:
        """E[X^order] by quadrature; pdf and sf routes are cross-checked.

        pdf route: int x^k f(x) dx.  sf route: k int x^{k-1} sf(x) dx.
        Both integrate on (0, cut] split at the p=0.999 quantile, with the
        remaining tail bounded by an explicit exponential majorant."""
        if order < 1:
            raise DomainError(f"moment order must be a positive integer, got {order}")
        if route not in ("pdf", "sf"):
            raise DomainError(f"unknown moment route {route!r}")
        split = self.quantile(QuantileQuery(0.999, tol_x=1e-6))
        cut = self._tail_cut(order)
        tail = self._tail_bound_integral(order, cut)

        v1a, e1a = self._quad(lambda x: x**order * self.pdf(x), 0.0, split)
        v1b, e1b = self._quad(lambda x: x**order * self.pdf(x), split, cut)
        # int_cut^inf x^k f = [x^k sf]_cut + k int_cut^inf x^{k-1} sf <= cut^k sf(cut) + tail
        pdf_value = v1a + v1b
        pdf_err = e1a + e1b + cut**order * self.sf(cut) + tail

        v2a, e2a = self._quad(lambda x: order * x ** (order - 1) * self.sf(x), 0.0, split)
        v2b, e2b = self._quad(lambda x: order * x ** (order - 1) * self.sf(x), split, cut)
        sf_value = v2a + v2b
        sf_err = e2a + e2b + tail

        gap = abs(pdf_value - sf_value)
        if gap > 1e-7 + pdf_err + sf_err:
            raise QuadratureFailure(
                f"moment routes disagree: pdf={pdf_value} sf={sf_value} gap={gap}")
        if route == "pdf":
            return MomentResult(order, pdf_value, pdf_err + gap)
        return MomentResult(order, sf_value, sf_err + gap)

    # -- sampling ---------------------------------------------------------------

    def _build_sampler(self, knots: int):
        """Monotone cdf table on an x-grid covering p in ~[1e-10, 1-1e-10]."""
        coeff, power, rate, valid_from = _TAIL[self.kind]
        x_hi = max(valid_from, 6.0 / math.sqrt(rate))
        while coeff * x_hi**power * math.exp(-rate * x_hi**2) > 1e-11:
            x_hi *= 1.2
        xs = np.linspace(0.05 * self._scale, x_hi, knots)
        cdfs = self.cdf_grid(xs)
        return xs, cdfs

    def sample(self, count: int, seed: int) -> np.ndarray:
        """Inverse-cdf draws; deterministic for a given seed."""
        if count < 1:
            raise DomainError(f"sample count must be positive, got {count}")
        rng = np.random.default_rng(seed)
        u = rng.random(count)
        if self._sampler_grid is None:
            return np.array([self.quantile(QuantileQuery(p)) for p in u])
        xs, cdfs = self._sampler_grid
        u = np.clip(u, cdfs[0], cdfs[-1])
        x = np.interp(u, cdfs, xs)
        # vectorized Newton refinement of the table guess
        for _ in range(8):
            f = self.cdf_grid(x) - u
            g = np.maximum(self.pdf_grid(x), 1e-300)
            step = f / g
            x = np.clip(x - step, xs[0] * 0.5, xs[-1] * 1.5)
            if np.max(np.abs(f)) < 1e-10:
                break
        return x
