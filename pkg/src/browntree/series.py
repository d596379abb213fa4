"""Theta-type series for the height and diameter laws of the Brownian tree.

Every law handled here has two series representations: a "direct" one whose
terms decay like exp(-c*n^2) with c growing in the argument, and a
"theta-dual" one (obtained through the Jacobi theta identity) whose terms
decay like exp(-c*n^2/arg^2).  Each evaluator returns a SeriesEval carrying
the value, the representation actually summed, the number of terms consumed
and a certified bound on the total error (truncation tail plus rounding).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .errors import DomainError, NonConvergence

_EPS = math.ulp(1.0)
_TINY = 5e-324  # smallest positive subnormal double; floor for reported bounds
SQRT_PI = math.sqrt(math.pi)

# Auto-mode switch points: argument where the leading exponents of the two
# representations coincide (n^2*y^2 = n^2*pi^2/y^2 for the height law,
# n^2*y^2/4 = 4*pi^2*n^2/y^2 for the diameter law).
HEIGHT_SWITCH = SQRT_PI
DIAM_SWITCH = 2.0 * SQRT_PI


class Representation(Enum):
    DIRECT = "direct"
    THETA_DUAL = "theta-dual"
    AUTO = "auto"


@dataclass(frozen=True)
class SeriesSpec:
    """Evaluation policy: representation choice, absolute tolerance, term cap."""

    mode: Representation = Representation.AUTO
    tol: float = 1e-13
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_SPEC = SeriesSpec()


@dataclass(frozen=True)
class SeriesEval:
    """Result of summing a theta-type series.

    trunc_bound is a certified upper bound on |true value - value| covering
    both the omitted tail and floating-point rounding of the included terms.
    """

    value: float
    representation: Representation
    terms_used: int
    trunc_bound: float


@dataclass(frozen=True)
class JointArgs:
    """Argument pair (y, z) of the joint law with its derived quantities.

    rho = max(z, y/2), delta = clamp(2(y-z)/y, 0, 1), q = min(y, 2y-z).
    """

    y: float
    z: float
    rho: float = field(init=False)
    delta: float = field(init=False)
    q: float = field(init=False)

    def __post_init__(self):
        if not self.y > 0.0 or not math.isfinite(self.y):
            raise DomainError(f"diameter threshold y must be positive and finite, got {self.y}")
        if self.z < 0.0 or not math.isfinite(self.z):
            raise DomainError(f"height threshold z must be nonnegative and finite, got {self.z}")
        if not ARG_FLOOR <= self.y <= ARG_CEIL or self.z > ARG_CEIL:
            raise DomainError(
                f"thresholds ({self.y}, {self.z}) outside the supported "
                f"range [{ARG_FLOOR}, {ARG_CEIL}]")
        object.__setattr__(self, "rho", max(self.z, 0.5 * self.y))
        object.__setattr__(self, "delta", min(max(2.0 * (self.y - self.z) / self.y, 0.0), 1.0))
        object.__setattr__(self, "q", min(self.y, 2.0 * self.y - self.z))


@dataclass(frozen=True)
class ThetaCoeff:
    """Series coefficients a = 4(pi n / y)^2 and b = 8(pi n / y)^2 = 2a."""

    n: int
    a: float
    b: float

    @classmethod
    def for_index(cls, n: int, y: float) -> "ThetaCoeff":
        if n < 1:
            raise DomainError(f"series index must be >= 1, got {n}")
        _check_positive(y)
        a = 4.0 * (math.pi * n / y) ** 2
        return cls(n=n, a=a, b=2.0 * a)


# --------------------------------------------------------------------------
# certified summation driver
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Block:
    """One Gaussian-decay series block: terms T_n for n >= start with
    |T_n| <= majorant(n) * exp(-rate * (n - shift)^2), where majorant is a
    polynomial with nonnegative coefficients of the given degree."""

    term: Callable[[int], float]
    majorant: Callable[[int], float]
    degree: int
    rate: float
    shift: float = 0.0
    start: int = 1


def _sum_block(block: _Block, tol: float, max_terms: int):
    """Sum a block until the certified tail bound drops below tol.

    Returns (value, terms_used, error_bound).  The tail past n=N is bounded
    by majorant(N+1)*exp(-rate*m^2) / (1 - exp(deg/(N+1) - 2*rate*m)) with
    m = N+1-shift (geometric majorant from convexity of the exponent and the
    nonnegative-coefficient growth bound on the polynomial part).  Rounding
    of the included terms is charged as (8 + |exponent|)*eps per majorant
    magnitude: the majorant also bounds the absolute sub-pieces inside each
    term (which matters when a term cancels internally) and the |exponent|
    factor covers the rounding of the exponent argument itself.  Terms whose
    Gaussian factor flushes to zero while the true product is still
    representable are charged to the bound at their log-space magnitude.
    """
    m0 = block.start - block.shift
    if block.rate * m0 * m0 > 745.0:
        try:
            maj0 = block.majorant(block.start)
        except OverflowError:
            maj0 = math.inf
        if not math.isfinite(maj0):
            # the polynomial prefactor leaves double range, but the Gaussian
            # factor has already pushed every term far below the subnormals
            # (within the supported argument range the prefactor log never
            # exceeds a few hundred while the exponent is past -745)
            return 0.0, 0, _TINY
    total = 0.0
    comp = 0.0
    err_acc = 0.0
    n = block.start
    used = 0
    while used < max_terms:
        t = block.term(n)
        s = total + t
        if abs(total) >= abs(t):
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
        m_here = n - block.shift
        e_here = -block.rate * m_here * m_here
        if e_here > -745.0:
            # rounding the exponent argument costs |e|*eps relatively, on top
            # of the ~8 ulp arithmetic inside the term
            err_acc += (8.0 - e_here) * _EPS * block.majorant(n) * math.exp(e_here)
        else:
            # the term flushed to zero; charge its full (log-recovered) size
            err_acc += _log_space_magnitude(block.majorant(n), e_here)
        used += 1
        n += 1
        m = n - block.shift
        log_ratio = block.degree / n - 2.0 * block.rate * m
        if log_ratio < 0.0:
            e_next = -block.rate * m * m
            maj = block.majorant(n)
            tail = maj * math.exp(e_next) if e_next > -745.0 else 0.0
            if tail == 0.0:
                tail = _log_space_magnitude(maj, e_next)
            bound = tail / -math.expm1(log_ratio)
            if bound <= tol:
                return total + comp, used, max(bound + err_acc, _TINY)
    raise NonConvergence(
        f"series did not reach tol={tol} within {max_terms} terms "
        f"(rate={block.rate})",
        terms_used=used,
    )


def _log_space_magnitude(majorant_value: float, log_gauss: float) -> float:
    """majorant * e^{log_gauss} recovered through logs when the two-factor
    product flushes to zero; exact zero only below the subnormal range."""
    if majorant_value == 0.0:
        return 0.0
    if majorant_value < 0.0 or not math.isfinite(majorant_value):
        return math.inf  # cannot certify; forces NonConvergence upstream
    # +1e-9 absorbs the rounding of the log-space evaluation itself
    lg = math.log(majorant_value) + log_gauss + 1e-9
    return math.exp(lg) if lg > -744.0 else 0.0


def _terms_needed(block: _Block, tol: float, max_terms: int = 10_000) -> int:
    """Number of leading terms after which the certified tail bound is <= tol.

    Walks the majorant only; used by the vectorized grid evaluators."""
    n = block.start
    used = 0
    while used < max_terms:
        used += 1
        n += 1
        m = n - block.shift
        log_ratio = block.degree / n - 2.0 * block.rate * m
        if log_ratio < 0.0:
            tail = block.majorant(n) * math.exp(-block.rate * m * m)
            if tail / -math.expm1(log_ratio) <= tol:
                return used
    raise NonConvergence(
        f"majorant tail did not reach tol={tol} within {max_terms} terms",
        terms_used=used,
    )


def _sum_blocks(blocks, tol, max_terms):
    share = tol / len(blocks)
    value = 0.0
    used = 0
    bound = 0.0
    for b in blocks:
        v, u, e = _sum_block(b, share, max_terms)
        value += v
        used += u
        bound += e
    return value, used, bound + 4.0 * _EPS * abs(value)


# --------------------------------------------------------------------------
# marginal laws of Gamma (height) and D (diameter) under N_nr
# --------------------------------------------------------------------------

def _height_sf_block(y: float) -> _Block:
    y2 = y * y
    return _Block(
        term=lambda n: 2.0 * (2.0 * n * n * y2 - 1.0) * math.exp(-n * n * y2),
        majorant=lambda n: 2.0 * (2.0 * n * n * y2 + 1.0),
        degree=2,
        rate=y2,
    )


def _height_cdf_block(y: float) -> _Block:
    c = math.pi * math.pi / (y * y)
    pref = 4.0 * math.pi ** 2.5 / y**3
    return _Block(
        term=lambda n: pref * n * n * math.exp(-c * n * n),
        majorant=lambda n: pref * n * n,
        degree=2,
        rate=c,
    )


def _height_pdf_direct_block(y: float) -> _Block:
    y2 = y * y
    return _Block(
        term=lambda n: 4.0 * n * n * y * (2.0 * n * n * y2 - 3.0) * math.exp(-n * n * y2),
        majorant=lambda n: 4.0 * n * n * y * (2.0 * n * n * y2 + 3.0),
        degree=4,
        rate=y2,
    )


def _height_pdf_dual_block(y: float) -> _Block:
    c = math.pi * math.pi / (y * y)
    pref = 4.0 * math.pi ** 2.5 / y**4
    return _Block(
        term=lambda n: pref * n * n * (2.0 * c * n * n - 3.0) * math.exp(-c * n * n),
        majorant=lambda n: pref * n * n * (2.0 * c * n * n + 3.0),
        degree=4,
        rate=c,
    )


def _diam_sf_block(y: float) -> _Block:
    y2 = y * y
    y4 = y2 * y2

    def term(n):
        n2 = n * n
        return (n2 - 1.0) * (n2 * n2 * y4 / 6.0 - 2.0 * n2 * y2 + 2.0) * math.exp(-n2 * y2 / 4.0)

    return _Block(
        term=term,
        majorant=lambda n: (n * n + 1.0) * ((n * n) ** 2 * y4 / 6.0 + 2.0 * n * n * y2 + 2.0),
        degree=6,
        rate=y2 / 4.0,
        start=2,
    )


def _diam_cdf_block(y: float) -> _Block:
    alpha = 4.0 * math.pi * math.pi / (y * y)
    pref = SQRT_PI / 3.0
    c3, c1 = 8.0 / y**3, 16.0 / y

    def term(n):
        a = alpha * n * n
        return pref * (c3 * (24.0 * a - 36.0 * a * a + 8.0 * a**3) + c1 * a * a) * math.exp(-a)

    def majorant(n):
        a = alpha * n * n
        return pref * (c3 * (24.0 * a + 36.0 * a * a + 8.0 * a**3) + c1 * a * a)

    return _Block(term=term, majorant=majorant, degree=6, rate=alpha)


def _diam_pdf_direct_block(y: float) -> _Block:
    y2 = y * y

    def term(n):
        n2 = n * n
        p = (n2**4 * y**5 - n2**3 * y**3 * (20.0 + y2)
             + 20.0 * n2 * n2 * y * (3.0 + y2) - 60.0 * n2 * y)
        return p * math.exp(-n2 * y2 / 4.0) / 12.0

    def majorant(n):
        n2 = n * n
        return (n2**4 * y**5 + n2**3 * y**3 * (20.0 + y2)
                + 20.0 * n2 * n2 * y * (3.0 + y2) + 60.0 * n2 * y) / 12.0

    return _Block(term=term, majorant=majorant, degree=8, rate=y2 / 4.0)


def _diam_pdf_dual_block(y: float) -> _Block:
    alpha = 4.0 * math.pi * math.pi / (y * y)
    pref = 2.0 * SQRT_PI / 3.0
    c4, c2 = 16.0 / y**4, 8.0 / y**2

    def term(n):
        a = alpha * n * n
        return pref * (c4 * (4.0 * a**4 - 36.0 * a**3 + 75.0 * a * a - 30.0 * a)
                       + c2 * (2.0 * a**3 - 5.0 * a * a)) * math.exp(-a)

    def majorant(n):
        a = alpha * n * n
        return pref * (c4 * (4.0 * a**4 + 36.0 * a**3 + 75.0 * a * a + 30.0 * a)
                       + c2 * (2.0 * a**3 + 5.0 * a * a))

    return _Block(term=term, majorant=majorant, degree=8, rate=alpha)


def _szekeres_block(y: float) -> _Block:
    beta = 8.0 * math.pi * math.pi / (y * y)
    pref = math.sqrt(2.0 * math.pi) / 3.0
    c4, c2 = 64.0 / y**4, 16.0 / y**2

    def term(n):
        b = beta * n * n
        return pref * (c4 * (4.0 * b**4 - 36.0 * b**3 + 75.0 * b * b - 30.0 * b)
                       + c2 * (2.0 * b**3 - 5.0 * b * b)) * math.exp(-b)

    def majorant(n):
        b = beta * n * n
        return pref * (c4 * (4.0 * b**4 + 36.0 * b**3 + 75.0 * b * b + 30.0 * b)
                       + c2 * (2.0 * b**3 + 5.0 * b * b))

    return _Block(term=term, majorant=majorant, degree=8, rate=beta)


# arguments beyond this range would overflow series coefficients in double
# precision; every value inside it evaluates cleanly (possibly to exact 0/1)
ARG_FLOOR = 1e-45
ARG_CEIL = 1e45


def _check_positive(y: float):
    if not y > 0.0 or not math.isfinite(y):
        raise DomainError(f"argument must be positive and finite, got {y}")
    if not ARG_FLOOR <= y <= ARG_CEIL:
        raise DomainError(
            f"argument {y} outside the supported range [{ARG_FLOOR}, {ARG_CEIL}]")


def _pick(mode: Representation, y: float, switch: float) -> Representation:
    if mode is Representation.AUTO:
        return Representation.DIRECT if y >= switch else Representation.THETA_DUAL
    return mode


def _tail_eval(y, spec, switch, direct_block, dual_block):
    """Evaluate a survival function: the direct series as printed, or
    1 - (dual cdf series) when the theta-dual representation is requested."""
    rep = _pick(spec.mode, y, switch)
    if rep is Representation.DIRECT:
        v, u, e = _sum_blocks([direct_block(y)], spec.tol, spec.max_terms)
        return SeriesEval(v, rep, u, e)
    v, u, e = _sum_blocks([dual_block(y)], spec.tol, spec.max_terms)
    return SeriesEval(1.0 - v, rep, u, e + _EPS)


def marginal_height_sf(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """Tail N_nr(Gamma > y) = 2 sum_{n>=1} (2 n^2 y^2 - 1) e^{-n^2 y^2}."""
    _check_positive(y)
    return _tail_eval(y, spec, HEIGHT_SWITCH, _height_sf_block, _height_cdf_block)


def marginal_height_cdf(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """N_nr(Gamma <= y) = (4 pi^{5/2} / y^3) sum n^2 e^{-n^2 pi^2 / y^2}."""
    _check_positive(y)
    rep = _pick(spec.mode, y, HEIGHT_SWITCH)
    if rep is Representation.THETA_DUAL:
        v, u, e = _sum_blocks([_height_cdf_block(y)], spec.tol, spec.max_terms)
        return SeriesEval(v, rep, u, e)
    v, u, e = _sum_blocks([_height_sf_block(y)], spec.tol, spec.max_terms)
    return SeriesEval(1.0 - v, rep, u, e + _EPS)


def marginal_diam_sf(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """Tail N_nr(D > y) = sum_{n>=2} (n^2-1)(n^4 y^4/6 - 2 n^2 y^2 + 2) e^{-n^2 y^2/4}."""
    _check_positive(y)
    return _tail_eval(y, spec, DIAM_SWITCH, _diam_sf_block, _diam_cdf_block)


def marginal_diam_cdf(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """N_nr(D <= y) in the theta-dual form with a_n = 4 (pi n / y)^2."""
    _check_positive(y)
    rep = _pick(spec.mode, y, DIAM_SWITCH)
    if rep is Representation.THETA_DUAL:
        v, u, e = _sum_blocks([_diam_cdf_block(y)], spec.tol, spec.max_terms)
        return SeriesEval(v, rep, u, e)
    v, u, e = _sum_blocks([_diam_sf_block(y)], spec.tol, spec.max_terms)
    return SeriesEval(1.0 - v, rep, u, e + _EPS)


def density_diam(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """Density f_D(y) of the diameter; both representations available."""
    _check_positive(y)
    rep = _pick(spec.mode, y, DIAM_SWITCH)
    block = _diam_pdf_direct_block(y) if rep is Representation.DIRECT else _diam_pdf_dual_block(y)
    v, u, e = _sum_blocks([block], spec.tol, spec.max_terms)
    return SeriesEval(v, rep, u, e)


def density_height(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """Density of Gamma, via term-wise differentiation of the cdf/sf series."""
    _check_positive(y)
    rep = _pick(spec.mode, y, HEIGHT_SWITCH)
    block = _height_pdf_direct_block(y) if rep is Representation.DIRECT else _height_pdf_dual_block(y)
    v, u, e = _sum_blocks([block], spec.tol, spec.max_terms)
    return SeriesEval(v, rep, u, e)


def density_szekeres(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """Szekeres density f_Delta(y) = f_D(y / sqrt 2) / sqrt 2 (by delegation)."""
    _check_positive(y)
    inner = density_diam(y / math.sqrt(2.0), spec)
    v = inner.value / math.sqrt(2.0)
    return SeriesEval(v, inner.representation, inner.terms_used,
                      inner.trunc_bound / math.sqrt(2.0) + 2.0 * _EPS * abs(v) + _TINY)


def szekeres_series(y: float, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """Literal evaluation of the Szekeres series for f_Delta with
    b_n = 8 (pi n / y)^2; agrees with density_szekeres."""
    _check_positive(y)
    v, u, e = _sum_blocks([_szekeres_block(y)], spec.tol, spec.max_terms)
    return SeriesEval(v, Representation.THETA_DUAL, u, e)


# --------------------------------------------------------------------------
# joint law of (Gamma, D) under N_nr
# --------------------------------------------------------------------------

def _joint_survival_blocks(args: JointArgs):
    rho2 = args.rho * args.rho
    y, d = args.y, args.delta
    y2 = y * y

    block_a = _Block(
        term=lambda n: 2.0 * (2.0 * n * n * rho2 - 1.0) * math.exp(-n * n * rho2),
        majorant=lambda n: 2.0 * (2.0 * n * n * rho2 + 1.0),
        degree=2,
        rate=rho2,
    )

    def term_b(n):
        up = ((n + d) ** 2 * y2 - 2.0) * math.exp(-((n + d) ** 2) * y2 / 4.0)
        down = ((n - d) ** 2 * y2 - 2.0) * math.exp(-((n - d) ** 2) * y2 / 4.0)
        mid = d * y * (n**3 * y**3 - 6.0 * n * y) * math.exp(-n * n * y2 / 4.0)
        return n * (n * n - 1.0) * (up - down + mid) / 6.0

    # all three exponents are >= (n-1)^2 y^2/4 for delta in [0, 1]
    def majorant_b(n):
        return (n**3 / 6.0) * (2.0 * ((n + 1.0) ** 2 * y2 + 2.0)
                               + y * (n**3 * y**3 + 6.0 * n * y))

    block_b = _Block(term=term_b, majorant=majorant_b, degree=6,
                     rate=y2 / 4.0, shift=1.0, start=2)
    return [block_a, block_b]


def _joint_complement_blocks(args: JointArgs):
    """Blocks of the theta-dual four-sum series; its value is 1 - S(y, z)."""
    y, d, rho = args.y, args.delta, args.rho
    alpha = 4.0 * math.pi * math.pi / (y * y)
    c_rho = math.pi * math.pi / (rho * rho)
    pref_a = 4.0 * math.pi ** 2.5 / rho**3

    blocks = [_Block(
        term=lambda n: pref_a * n * n * math.exp(-c_rho * n * n),
        majorant=lambda n: pref_a * n * n,
        degree=2,
        rate=c_rho,
    )]
    if d == 0.0:
        # sin(2 pi n delta) and the delta prefactors vanish identically
        return blocks

    k_b = 32.0 * math.pi ** 1.5 / 3.0
    k_cd = 16.0 * SQRT_PI / 3.0
    y3, y5 = y**3, y**5
    three_d2 = 3.0 * d * d - 1.0
    one_m_d2 = 1.0 - d * d

    if d < 1.0:
        def term_b(n):
            a = alpha * n * n
            poly = (2.0 / y5) * (2.0 * a * a - 9.0 * a + 6.0) - (three_d2 / y3) * (a - 1.0)
            return -k_b * n * math.sin(2.0 * math.pi * n * d) * poly * math.exp(-a)

        def majorant_b(n):
            a = alpha * n * n
            return k_b * n * ((2.0 / y5) * (2.0 * a * a + 9.0 * a + 6.0)
                              + (abs(three_d2) / y3) * (a + 1.0))

        blocks.append(_Block(term=term_b, majorant=majorant_b, degree=5, rate=alpha))

    def cos_factor(n):
        return 1.0 if d == 1.0 else math.cos(2.0 * math.pi * n * d)

    def term_c(n):
        a = alpha * n * n
        poly = (1.0 / y3) * (6.0 * a * a - 15.0 * a + 3.0) + (one_m_d2 / (2.0 * y)) * a
        return k_cd * d * cos_factor(n) * poly * math.exp(-a)

    def majorant_c(n):
        a = alpha * n * n
        return k_cd * d * ((1.0 / y3) * (6.0 * a * a + 15.0 * a + 3.0)
                           + (one_m_d2 / (2.0 * y)) * a)

    def term_d(n):
        a = alpha * n * n
        poly = ((1.0 / y3) * (4.0 * a**3 - 24.0 * a * a + 27.0 * a - 3.0)
                + (1.0 / (2.0 * y)) * (2.0 * a * a - 3.0 * a))
        return k_cd * d * poly * math.exp(-a)

    def majorant_d(n):
        a = alpha * n * n
        return k_cd * d * ((1.0 / y3) * (4.0 * a**3 + 24.0 * a * a + 27.0 * a + 3.0)
                           + (1.0 / (2.0 * y)) * (2.0 * a * a + 3.0 * a))

    blocks.append(_Block(term=term_c, majorant=majorant_c, degree=4, rate=alpha))
    blocks.append(_Block(term=term_d, majorant=majorant_d, degree=6, rate=alpha))
    return blocks


def _joint_pick(args: JointArgs, mode: Representation) -> Representation:
    if mode is not Representation.AUTO:
        return mode
    direct_worst = min(args.rho**2, args.y**2 / 4.0)
    dual_worst = min(math.pi**2 / args.rho**2, 4.0 * math.pi**2 / args.y**2)
    return Representation.DIRECT if direct_worst >= dual_worst else Representation.THETA_DUAL


def joint_survival_complement(args: JointArgs, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """The theta-dual four-sum joint series as printed; equals 1 - S(y, z),
    the measure of the complement of {D > y, Gamma > z}."""
    v, u, e = _sum_blocks(_joint_complement_blocks(args), spec.tol, spec.max_terms)
    return SeriesEval(v, Representation.THETA_DUAL, u, e)


def joint_survival(args: JointArgs, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """S(y, z) = N_nr(D > y; Gamma > z)."""
    if args.z == 0.0:
        # Gamma > 0 a.s.: the joint survival is the marginal diameter tail
        return marginal_diam_sf(args.y, spec)
    rep = _joint_pick(args, spec.mode)
    try:
        if rep is Representation.DIRECT:
            v, u, e = _sum_blocks(_joint_survival_blocks(args), spec.tol, spec.max_terms)
            return SeriesEval(v, rep, u, e)
        comp = joint_survival_complement(args, spec)
        return SeriesEval(1.0 - comp.value, Representation.THETA_DUAL,
                          comp.terms_used, comp.trunc_bound + _EPS)
    except NonConvergence:
        if spec.mode is not Representation.AUTO:
            raise
        other = (Representation.THETA_DUAL if rep is Representation.DIRECT
                 else Representation.DIRECT)
        return joint_survival(args, SeriesSpec(other, spec.tol, spec.max_terms))


def joint_cdf(args: JointArgs, spec: SeriesSpec = DEFAULT_SPEC) -> SeriesEval:
    """F(y, z) = N_nr(D <= y; Gamma <= z), assembled by inclusion-exclusion.

    Theta-dual route: F = cdf_D(y) + cdf_Gamma(z) - U(y, z) where U is the
    printed four-sum series (= 1 - S).  Direct route: F = 1 - sf_D - sf_Gamma + S.
    """
    if args.z == 0.0:
        # Gamma > 0 a.s., so {Gamma <= 0} is null
        return SeriesEval(0.0, _joint_pick(args, spec.mode), 0, _TINY)
    rep = _joint_pick(args, spec.mode)
    sub = SeriesSpec(Representation.AUTO, spec.tol, spec.max_terms)
    try:
        if rep is Representation.THETA_DUAL:
            u_eval = joint_survival_complement(args, spec)
            fd = marginal_diam_cdf(args.y, sub)
            fg = marginal_height_cdf(args.z, sub)
            v = fd.value + fg.value - u_eval.value
            e = (u_eval.trunc_bound + fd.trunc_bound + fg.trunc_bound
                 + 4.0 * _EPS * (abs(fd.value) + abs(fg.value) + abs(u_eval.value)))
            return SeriesEval(v, rep, u_eval.terms_used + fd.terms_used + fg.terms_used, e)
        s_eval = _sum_blocks(_joint_survival_blocks(args), spec.tol, spec.max_terms)
        sd = marginal_diam_sf(args.y, sub)
        sg = marginal_height_sf(args.z, sub)
        v = 1.0 - sd.value - sg.value + s_eval[0]
        e = (s_eval[2] + sd.trunc_bound + sg.trunc_bound
             + 4.0 * _EPS * (1.0 + abs(sd.value) + abs(sg.value) + abs(s_eval[0])))
        return SeriesEval(v, rep, s_eval[1] + sd.terms_used + sg.terms_used, e)
    except NonConvergence:
        if spec.mode is not Representation.AUTO:
            raise
        other = (Representation.THETA_DUAL if rep is Representation.DIRECT
                 else Representation.DIRECT)
        return joint_cdf(args, SeriesSpec(other, spec.tol, spec.max_terms))


# --------------------------------------------------------------------------
# Jacobi theta identity
# --------------------------------------------------------------------------

def jacobi_check(t: float, x: float, y: float, n_terms: int = 20):
    """Evaluate both sides of the theta duality
    sum_n e^{-(x+n)^2 t - 2 pi i n y} = e^{2 pi i x y} sqrt(pi/t)
    sum_n e^{-pi^2 (y+n)^2 / t + 2 pi i n x}, summing n in [-n_terms, n_terms].

    Returns (lhs, rhs) as complex numbers."""
    if not t > 0.0:
        raise DomainError(f"theta parameter t must be positive, got {t}")
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    lhs = 0.0 + 0.0j
    rhs_sum = 0.0 + 0.0j
    for n in range(-n_terms, n_terms + 1):
        lhs += cmath.exp(complex(-((x + n) ** 2) * t, -2.0 * math.pi * n * y))
        rhs_sum += cmath.exp(complex(-(math.pi**2) * (y + n) ** 2 / t, 2.0 * math.pi * n * x))
    rhs = cmath.exp(complex(0.0, 2.0 * math.pi * x * y)) * math.sqrt(math.pi / t) * rhs_sum
    return lhs, rhs
