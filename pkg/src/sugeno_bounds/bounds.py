"""Endpoint-case bounds for Sugeno integrals of products of (s,m)-convex functions.

On [a, b], the product f*g of two non-negative (s,m)-convex functions is
dominated by the product of their endpoint power envelopes, so the integral
of f*g is at most min(beta, b - a), where beta solves F(beta) = beta for the
envelope-product distribution F.  The closed form of F depends on how f(b)
compares with m*f(a) (and likewise for g):

* increasing case  (both above):  each factor is w * (1 - Q**(1/s)),
* decreasing case  (both below):  each factor is w * Q**(1/s) + (m*a - a),
* degenerate case  (both equal):  beta = m**2 * 2**(2-2s) * f(a) * g(a),

with w = b - m*a and Q = (beta - m * 2**(1-s) * f(a)) / (f(b) - m*f(a)),
clamped to [0, 1].  Mixed endpoint configurations have no supported bound.

``literal`` mode keeps the factor lengths exactly as the closed forms give
them (they can stray outside [0, b - a] when m < 1); measure-consistent mode
clamps each factor to [0, b - a].  The two coincide for m = 1.

``verify_hadamard`` computes the integral of f*g, the bound, and the
endpoint (Kirmaci-type) comparison value, and reports the measured margin;
it never asserts the inequality, it measures it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

from .convexity import EndpointData, SMParams, endpoint_data
from .exceptions import CaseError, DomainError, UnsupportedCaseError
from .expr import FunctionExpr, product
from .measure import Interval, lebesgue
from .rootfind import SolverConfig, solve_sup_threshold
from .sugeno import DEFAULT_GRID, IntegralResult, sugeno_integral

__all__ = [
    "CaseTag",
    "BetaResult",
    "VerificationReport",
    "classify_case",
    "kirmaci_bound",
    "increasing_distribution",
    "decreasing_distribution",
    "increasing_case_beta",
    "decreasing_case_beta",
    "increasing_beta_convex",
    "decreasing_beta_convex",
    "degenerate_case_bound",
    "hadamard_bound",
    "verify_hadamard",
]

CASE_TIE_TOL = 1e-9
HOLDS_TOL = 1e-6


class CaseTag(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    DEGENERATE = "degenerate"
    MIXED = "mixed"


@dataclass(frozen=True)
class BetaResult:
    beta: float
    residual: float
    bound: float  # min(beta, b - a)
    case: CaseTag
    literal_mode: bool


def classify_case(e: EndpointData, p: SMParams, tie_tol: float = CASE_TIE_TOL) -> CaseTag:
    """Compare f(b) with m*f(a) and g(b) with m*g(a), with a tie tolerance."""
    df = e.fb - p.m * e.fa
    dg = e.gb - p.m * e.ga
    if abs(df) <= tie_tol and abs(dg) <= tie_tol:
        return CaseTag.DEGENERATE
    if df > tie_tol and dg > tie_tol:
        return CaseTag.INCREASING
    if df < -tie_tol and dg < -tie_tol:
        return CaseTag.DECREASING
    return CaseTag.MIXED


def kirmaci_bound(e: EndpointData, s: float) -> float:
    """Endpoint comparison value M/(s+2) + N/((s+1)(s+2)).

    M pairs same-end products, N pairs opposite ends; symmetric in f and g.
    """
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s!r}")
    m_term = e.fa * e.ga + e.fb * e.gb
    n_term = e.fa * e.gb + e.fb * e.ga
    return m_term / (s + 2.0) + n_term / ((s + 1.0) * (s + 2.0))


def _clamp01(q: float) -> float:
    return 0.0 if q < 0.0 else (1.0 if q > 1.0 else q)


def _clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else (hi if v > hi else v)


def increasing_distribution(
    e: EndpointData,
    base: Interval,
    p: SMParams,
    literal: bool = True,
) -> Callable[[float], float]:
    """Envelope-product distribution F(beta) for the increasing case."""
    c = 2.0 ** (1.0 - p.s)
    edge_f = p.m * c * e.fa
    edge_g = p.m * c * e.ga
    d_f = e.fb - p.m * e.fa
    d_g = e.gb - p.m * e.ga
    w = base.b - p.m * base.a
    inv_s = 1.0 / p.s
    cap = base.length

    def F(beta: float) -> float:
        len_f = w * (1.0 - _clamp01((beta - edge_f) / d_f) ** inv_s)
        len_g = w * (1.0 - _clamp01((beta - edge_g) / d_g) ** inv_s)
        if not literal:
            len_f = _clamp(len_f, 0.0, cap)
            len_g = _clamp(len_g, 0.0, cap)
        return len_f * len_g

    return F


def decreasing_distribution(
    e: EndpointData,
    base: Interval,
    p: SMParams,
    literal: bool = True,
) -> Callable[[float], float]:
    """Envelope-product distribution F(beta) for the decreasing case."""
    c = 2.0 ** (1.0 - p.s)
    edge_f = p.m * c * e.fa
    edge_g = p.m * c * e.ga
    d_f = e.fb - p.m * e.fa
    d_g = e.gb - p.m * e.ga
    w = base.b - p.m * base.a
    shift = p.m * base.a - base.a  # non-positive; zero when m = 1
    inv_s = 1.0 / p.s
    cap = base.length

    def F(beta: float) -> float:
        len_f = w * _clamp01((beta - edge_f) / d_f) ** inv_s + shift
        len_g = w * _clamp01((beta - edge_g) / d_g) ** inv_s + shift
        if not literal:
            len_f = _clamp(len_f, 0.0, cap)
            len_g = _clamp(len_g, 0.0, cap)
        return len_f * len_g

    return F


def _solve_beta(
    F: Callable[[float], float],
    base: Interval,
    p: SMParams,
    cfg: SolverConfig,
    case: CaseTag,
    literal: bool,
) -> BetaResult:
    w = base.b - p.m * base.a
    hi = max(w * w, base.length)
    res = solve_sup_threshold(F, 0.0, hi, cfg)
    return BetaResult(res.value, res.residual, min(res.value, base.length), case, literal)


def increasing_case_beta(
    e: EndpointData,
    base: Interval,
    p: SMParams,
    cfg: SolverConfig | None = None,
    literal: bool = True,
) -> BetaResult:
    """Bound threshold when f(b) > m*f(a) and g(b) > m*g(a)."""
    cfg = SolverConfig() if cfg is None else cfg
    tag = classify_case(e, p)
    if tag is not CaseTag.INCREASING:
        raise CaseError(f"endpoint case is {tag.value}, need increasing")
    F = increasing_distribution(e, base, p, literal)
    return _solve_beta(F, base, p, cfg, tag, literal)


def decreasing_case_beta(
    e: EndpointData,
    base: Interval,
    p: SMParams,
    cfg: SolverConfig | None = None,
    literal: bool = True,
) -> BetaResult:
    """Bound threshold when f(b) < m*f(a) and g(b) < m*g(a)."""
    cfg = SolverConfig() if cfg is None else cfg
    tag = classify_case(e, p)
    if tag is not CaseTag.DECREASING:
        raise CaseError(f"endpoint case is {tag.value}, need decreasing")
    F = decreasing_distribution(e, base, p, literal)
    return _solve_beta(F, base, p, cfg, tag, literal)


def increasing_beta_convex(
    e: EndpointData,
    base: Interval,
    cfg: SolverConfig | None = None,
) -> BetaResult:
    """Plain-convex specialization (s = m = 1) of the increasing-case equation."""
    cfg = SolverConfig() if cfg is None else cfg
    if not (e.fb > e.fa and e.gb > e.ga):
        raise CaseError("need f(b) > f(a) and g(b) > g(a)")
    w = base.length
    d_f = e.fb - e.fa
    d_g = e.gb - e.ga

    def F(beta: float) -> float:
        len_f = w * (1.0 - _clamp01((beta - e.fa) / d_f))
        len_g = w * (1.0 - _clamp01((beta - e.ga) / d_g))
        return len_f * len_g

    hi = max(w * w, w)
    res = solve_sup_threshold(F, 0.0, hi, cfg)
    return BetaResult(res.value, res.residual, min(res.value, w), CaseTag.INCREASING, True)


def decreasing_beta_convex(
    e: EndpointData,
    base: Interval,
    cfg: SolverConfig | None = None,
) -> BetaResult:
    """Plain-convex specialization (s = m = 1) of the decreasing-case equation."""
    cfg = SolverConfig() if cfg is None else cfg
    if not (e.fb < e.fa and e.gb < e.ga):
        raise CaseError("need f(b) < f(a) and g(b) < g(a)")
    w = base.length
    d_f = e.fb - e.fa
    d_g = e.gb - e.ga

    def F(beta: float) -> float:
        len_f = w * _clamp01((beta - e.fa) / d_f)
        len_g = w * _clamp01((beta - e.ga) / d_g)
        return len_f * len_g

    hi = max(w * w, w)
    res = solve_sup_threshold(F, 0.0, hi, cfg)
    return BetaResult(res.value, res.residual, min(res.value, w), CaseTag.DECREASING, True)


def degenerate_case_bound(e: EndpointData, base: Interval, p: SMParams) -> BetaResult:
    """Closed-form bound when f(b) = m*f(a) and g(b) = m*g(a): both envelopes are flat."""
    tag = classify_case(e, p)
    if tag is not CaseTag.DEGENERATE:
        raise CaseError(f"endpoint case is {tag.value}, need degenerate")
    beta = (p.m * p.m) * 2.0 ** (2.0 - 2.0 * p.s) * (e.fa * e.ga)
    return BetaResult(beta, 0.0, min(beta, base.length), tag, True)


def hadamard_bound(
    f: FunctionExpr,
    g: FunctionExpr,
    base: Interval,
    p: SMParams,
    cfg: SolverConfig | None = None,
    literal: bool = True,
) -> BetaResult:
    """Dispatch on the endpoint case; mixed cases raise UnsupportedCaseError."""
    e = endpoint_data(f, g, base)
    tag = classify_case(e, p)
    if tag is CaseTag.INCREASING:
        return increasing_case_beta(e, base, p, cfg, literal)
    if tag is CaseTag.DECREASING:
        return decreasing_case_beta(e, base, p, cfg, literal)
    if tag is CaseTag.DEGENERATE:
        return replace(degenerate_case_bound(e, base, p), literal_mode=literal)
    raise UnsupportedCaseError(
        "no bound for mixed endpoints: "
        f"f(b)-m*f(a)={e.fb - p.m * e.fa!r}, g(b)-m*g(a)={e.gb - p.m * e.ga!r}"
    )


@dataclass(frozen=True)
class VerificationReport:
    integral: IntegralResult
    hadamard: BetaResult
    kirmaci: float
    holds: bool   # margin >= -1e-6
    margin: float  # bound - integral

    def to_json_dict(self) -> dict:
        return {
            "integral": self.integral.value,
            "beta": self.hadamard.beta,
            "bound": self.hadamard.bound,
            "kirmaci": self.kirmaci,
            "case": self.hadamard.case.value,
            "holds": self.holds,
            "margin": self.margin,
            "literal_mode": self.hadamard.literal_mode,
            "residual": self.hadamard.residual,
        }


def verify_hadamard(
    f: FunctionExpr,
    g: FunctionExpr,
    base: Interval,
    p: SMParams,
    cfg: SolverConfig | None = None,
    grid: int = DEFAULT_GRID,
    literal: bool = True,
) -> VerificationReport:
    """Integrate f*g, compute the endpoint bounds, and report the measured margin."""
    cfg = SolverConfig() if cfg is None else cfg
    integral = sugeno_integral(product(f, g), base, lebesgue(), cfg, grid)
    bound = hadamard_bound(f, g, base, p, cfg, literal)
    kir = kirmaci_bound(endpoint_data(f, g, base), p.s)
    margin = bound.bound - integral.value
    return VerificationReport(integral, bound, kir, margin >= -HOLDS_TOL, margin)
