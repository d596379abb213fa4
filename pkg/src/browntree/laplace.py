"""Closed-form Laplace transforms of the joint height/diameter law and the
excursion-measure identities they rest on, with quadrature cross-checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from . import series
from .errors import DomainError, QuadratureFailure

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class LaplaceArgs:
    lam: float
    y: float
    z: float

    def __post_init__(self):
        if not self.lam > 0.0 or not math.isfinite(self.lam):
            raise DomainError(f"Laplace parameter must be positive and finite, got {self.lam}")
        if self.y < 0.0 or self.z < 0.0 or not math.isfinite(self.y + self.z):
            raise DomainError(f"thresholds must be nonnegative and finite, got y={self.y}, z={self.z}")


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: float
    rhs: float


def _coth_minus_one(x: float) -> float:
    """coth(x) - 1 = 2 / (e^{2x} - 1), stable for tiny and huge x."""
    if not x > 0.0:
        raise DomainError(f"argument must be positive, got {x}")
    if x > 350.0:
        return 2.0 * math.exp(-2.0 * x)
    return 2.0 / math.expm1(2.0 * x)


def _sinh_minus_lin(u: float) -> float:
    """sinh(u) - u without cancellation for small u."""
    if u < 0.35:
        u2 = u * u
        # nested odd series through u^13
        return (u * u2 / 6.0) * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0 * (
            1.0 + u2 / 72.0 * (1.0 + u2 / 110.0 * (1.0 + u2 / 156.0)))))
    return math.sinh(u) - u


def _log_sinh(x: float) -> float:
    if x > 0.35:
        return x - _LOG2 + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x))


def _diam_correction(q: float, y: float) -> float:
    """(sinh(2q) - 2q) / (4 sinh^4 y) for 0 <= q <= y, overflow-safe."""
    if q <= 0.0:
        return 0.0
    u = 2.0 * q
    if y <= 20.0:
        sh = math.sinh(y)
        return _sinh_minus_lin(u) / (4.0 * sh**4)
    if u < 0.35:
        log_num = math.log(_sinh_minus_lin(u))
    elif u < 350.0:
        log_num = math.log(math.sinh(u) - u)
    else:
        log_num = u - _LOG2
    return math.exp(log_num - _LOG2 * 2.0 - 4.0 * _log_sinh(y))


def closed_form_L1(y: float, z: float) -> float:
    """L_1(y, z) = coth(y or z, whichever larger) - 1, minus the correction
    (sinh(2q) - 2q) / (4 sinh^4 y) with q = min(y, 2y - z) when z <= 2y."""
    if not y > 0.0:
        raise DomainError(f"y must be positive, got {y}")
    if z < 0.0:
        raise DomainError(f"z must be nonnegative, got {z}")
    value = _coth_minus_one(max(y, z))
    if z <= 2.0 * y:
        q = min(y, 2.0 * y - z)
        value -= _diam_correction(q, y)
    return value


def closed_form_Llambda(args: LaplaceArgs) -> float:
    """L_lambda(y, z) = sqrt(lam) * L_1(y sqrt(lam), z sqrt(lam)).

    y = 0 routes to the height-only transform sqrt(lam)(coth(z sqrt(lam)) - 1);
    z = 0 stays in the general formula, which reduces to the diameter-only one."""
    sl = math.sqrt(args.lam)
    if args.y == 0.0:
        if args.z == 0.0:
            raise DomainError("L_lambda(0, 0) diverges; need y > 0 or z > 0")
        return sl * _coth_minus_one(args.z * sl)
    return sl * closed_form_L1(args.y * sl, args.z * sl)


def numeric_L(args: LaplaceArgs, quad_tol: float = 1e-8) -> float:
    """Numerical evaluation of the defining integral
    (1/2 sqrt(pi)) int_0^inf e^{-lam r} r^{-3/2} S(2y/sqrt(r), z/sqrt(r)) dr,
    with the survival factor from the joint series.  Substituting r = t^2
    removes the endpoint weight; the tail past the cut is bounded analytically."""
    if not args.y > 0.0:
        raise DomainError(f"numeric_L needs y > 0, got {args.y}")
    if not quad_tol > 0.0:
        raise DomainError(f"quad_tol must be positive, got {quad_tol}")
    lam = args.lam
    spec = series.SeriesSpec(series.Representation.AUTO,
                             tol=min(1e-11, quad_tol * 1e-2), max_terms=20_000)

    floor = 4.0 * max(args.y, args.z) / series.ARG_CEIL

    def integrand(t):
        if t <= floor:
            # thresholds leave the supported range only where the survival
            # factor has long vanished
            return 0.0
        s = series.joint_survival(series.JointArgs(2.0 * args.y / t, args.z / t), spec)
        return math.exp(-lam * t * t) * s.value / (t * t)

    cut = 2.0 / math.sqrt(lam)
    while math.exp(-lam * cut * cut) / (2.0 * lam * cut**3 * math.sqrt(math.pi)) > quad_tol / 10.0:
        cut *= 1.5
    val, err = integrate.quad(integrand, 0.0, cut, epsabs=quad_tol / 4.0,
                              epsrel=0.0, limit=300)
    if not math.isfinite(val) or err > quad_tol:
        raise QuadratureFailure(f"numeric_L quadrature error {err} exceeds {quad_tol}")
    return val / math.sqrt(math.pi)


def excursion_measure_identities(lam: float, a: float) -> list[IdentityCheck]:
    """Quadrature checks of the three excursion-measure identities:

    1. integral of (1 - e^{-lam r}) against the lifetime law dr/(2 sqrt(pi) r^{3/2})
       equals sqrt(lam);
    2. integral over r > a of (r sqrt(lam)/sinh(r sqrt(lam)))^2 dr/r^2 equals
       sqrt(lam) coth(a sqrt(lam)) - sqrt(lam)  (Williams decomposition);
    3. the truncated lifetime transform: sqrt(lam) + (identity-2 integral)
       equals sqrt(lam) coth(a sqrt(lam)).

    Left sides are quadratures; right sides are the closed forms."""
    if not lam > 0.0 or not a > 0.0:
        raise DomainError(f"need lam > 0 and a > 0, got lam={lam}, a={a}")
    sl = math.sqrt(lam)

    def lifetime_integrand(t):
        if t == 0.0:
            return lam / math.sqrt(math.pi)
        return -math.expm1(-lam * t * t) / (math.sqrt(math.pi) * t * t)

    # past the cut the integrand is 1/(sqrt(pi) t^2) up to an e^{-lam t^2} term
    cut = max(30.0, 30.0 / sl)
    lhs1, err1 = integrate.quad(lifetime_integrand, 0.0, cut, epsabs=1e-12, limit=300)
    lhs1 += 1.0 / (math.sqrt(math.pi) * cut)

    def williams_integrand(r):
        return lam / math.sinh(r * sl) ** 2

    upper = a + 60.0 / sl
    lhs2, err2 = integrate.quad(williams_integrand, a, upper, epsabs=1e-12, limit=300)
    if max(err1, err2) > 1e-9:
        raise QuadratureFailure(f"identity quadrature errors too large: {err1}, {err2}")

    rhs2 = sl / math.tanh(a * sl) - sl
    return [
        IdentityCheck("lifetime-transform", lhs1, sl),
        IdentityCheck("williams-tail", lhs2, rhs2),
        IdentityCheck("truncated-lifetime-transform", sl + lhs2, sl / math.tanh(a * sl)),
    ]
