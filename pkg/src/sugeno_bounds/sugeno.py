"""Sugeno integral engines.

The Sugeno integral over a base interval X is

    sup over alpha >= 0 of min(alpha, F(alpha)),   F(alpha) = mu({x in X : f(x) >= alpha}),

and F is non-increasing, so the sup is the threshold where F crosses the
diagonal.  Two independent routes compute it:

* a fixed-point route bisecting on the predicate F(alpha) >= alpha, and
* a brute-force grid scan over an alpha lattice (the oracle).

Both sample the integrand on a shared x grid.  When the sampled values are
monotone, the level-set boundary is refined by bisection and the level set
is an exact interval; otherwise the measure falls back to grid counting.
Grid points where the integrand is not evaluable are excluded from level
sets and counted; the integral proceeds only while exclusions stay below
0.1% of the grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import EvalError, NegativeFunctionError, PreconditionError
from .expr import FunctionExpr, constant, evaluate, evaluate_array
from .measure import Interval, MeasureSpec, lebesgue, measure_of
from .rootfind import SolverConfig, solve_sign_change, solve_sup_threshold

__all__ = [
    "DEFAULT_GRID",
    "IntegralResult",
    "DistributionProfile",
    "PropertyReport",
    "level_set_measure",
    "sugeno_integral",
    "sugeno_integral_oracle",
    "distribution_profile",
    "check_proposition_properties",
]

DEFAULT_GRID = 100001
PROPERTY_TOL = 1e-6
MAX_EXCLUDED_FRACTION = 0.001
_MIN_GRID = 101
_NEG_SLACK = 1e-12
_GAMMA_PROBES = 10


@dataclass(frozen=True)
class IntegralResult:
    value: float
    method: str  # "fixed_point" | "grid_scan"
    residual: float
    alpha_bracket: tuple[float, float]
    grid_points: int | None = None


@dataclass(frozen=True)
class DistributionProfile:
    """(alpha, F(alpha)) samples at strictly increasing alphas."""

    samples: tuple[tuple[float, float], ...]

    def alphas(self) -> tuple[float, ...]:
        return tuple(a for a, _ in self.samples)

    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.samples)


class _LevelSets:
    """Shared grid state answering level-set measure queries for one integrand."""

    def __init__(
        self,
        f: FunctionExpr,
        base: Interval,
        spec: MeasureSpec,
        grid: int,
        require_nonnegative: bool = False,
    ):
        if grid < _MIN_GRID:
            raise ValueError(f"grid must be at least {_MIN_GRID} points")
        self.f = f
        self.base = base
        self.spec = spec
        self.grid = grid
        self.xs = np.linspace(base.a, base.b, grid)
        self.vals = evaluate_array(f, self.xs)
        bad = np.isnan(self.vals)
        self.n_excluded = int(np.count_nonzero(bad))
        if self.n_excluded >= MAX_EXCLUDED_FRACTION * grid:
            raise EvalError(
                f"integrand is not evaluable at {self.n_excluded} of {grid} grid points"
            )
        if self.n_excluded:
            warnings.warn(
                f"excluded {self.n_excluded} non-evaluable grid point(s) from level sets",
                RuntimeWarning,
                stacklevel=3,
            )
        if require_nonnegative:
            i_min = int(np.nanargmin(self.vals))
            v_min = float(self.vals[i_min])
            if v_min < -_NEG_SLACK:
                raise NegativeFunctionError(float(self.xs[i_min]), v_min)
        finite_vals = self.vals[~bad]
        diffs = np.diff(finite_vals)
        rising = bool(np.any(diffs > 0.0))
        falling = bool(np.any(diffs < 0.0))
        self.increasing = not falling  # non-decreasing; constants count
        self.decreasing = not rising
        self.exact_boundaries = (self.increasing or self.decreasing) and self.n_excluded == 0

    def level_length(self, alpha: float) -> float:
        """Lebesgue length of {x : f(x) >= alpha} within the base interval."""
        if self.exact_boundaries:
            if self.increasing:
                return self._length_increasing(alpha)
            return self._length_decreasing(alpha)
        count = int(np.count_nonzero(self.vals >= alpha))
        return (count / self.grid) * self.base.length

    def _refine(self, lo: float, hi: float, alpha: float) -> float:
        # One grid cell brackets the boundary.  The scalar evaluator can
        # disagree with the vectorized grid by an ulp, so guard both ends.
        def g(t: float) -> float:
            try:
                return evaluate(self.f, t) - alpha
            except EvalError:
                return math.nan
        g_lo, g_hi = g(lo), g(hi)
        if math.isnan(g_lo) or math.isnan(g_hi):
            return 0.5 * (lo + hi)
        if g_lo == 0.0:
            return lo
        if g_hi == 0.0:
            return hi
        if (g_lo > 0.0) == (g_hi > 0.0):
            return lo if abs(g_lo) <= abs(g_hi) else hi
        return solve_sign_change(g, lo, hi, SolverConfig(tol=1e-12, max_iter=100))

    def _length_increasing(self, alpha: float) -> float:
        vals, xs = self.vals, self.xs
        if vals[0] >= alpha:
            return self.base.length
        if vals[-1] < alpha:
            return 0.0
        i = int(np.searchsorted(vals, alpha, side="left"))
        x_star = self._refine(float(xs[i - 1]), float(xs[i]), alpha)
        return self.base.b - x_star

    def _length_decreasing(self, alpha: float) -> float:
        vals, xs = self.vals, self.xs
        if vals[-1] >= alpha:
            return self.base.length
        if vals[0] < alpha:
            return 0.0
        j = int(np.searchsorted(vals[::-1], alpha, side="left"))
        k = self.grid - 1 - j  # last index with vals[k] >= alpha
        x_star = self._refine(float(xs[k]), float(xs[k + 1]), alpha)
        return x_star - self.base.a

    def measure(self, alpha: float) -> float:
        length = self.level_length(alpha)
        if self.spec.kind == "lebesgue":
            return length
        return evaluate(self.spec.phi, length)


def level_set_measure(
    f: FunctionExpr,
    base: Interval,
    alpha: float,
    spec: MeasureSpec | None = None,
    grid: int = DEFAULT_GRID,
) -> float:
    """Measure of the level set {x in base : f(x) >= alpha}."""
    spec = lebesgue() if spec is None else spec
    return _LevelSets(f, base, spec, grid).measure(alpha)


def _integral_from_levels(levels: _LevelSets, cfg: SolverConfig) -> IntegralResult:
    mu_total = measure_of(levels.spec, levels.base)
    res = solve_sup_threshold(levels.measure, 0.0, mu_total, cfg)
    grid_points = None if levels.exact_boundaries else levels.grid
    return IntegralResult(res.value, "fixed_point", res.residual, res.bracket, grid_points)


def sugeno_integral(
    f: FunctionExpr,
    base: Interval,
    spec: MeasureSpec | None = None,
    cfg: SolverConfig | None = None,
    grid: int = DEFAULT_GRID,
) -> IntegralResult:
    """Sugeno integral of a non-negative ``f`` over ``base`` by fixed point."""
    spec = lebesgue() if spec is None else spec
    cfg = SolverConfig() if cfg is None else cfg
    levels = _LevelSets(f, base, spec, grid, require_nonnegative=True)
    return _integral_from_levels(levels, cfg)


def sugeno_integral_oracle(
    f: FunctionExpr,
    base: Interval,
    spec: MeasureSpec | None = None,
    n_alpha: int = DEFAULT_GRID,
    grid: int = DEFAULT_GRID,
) -> float:
    """Brute-force sup-min over an alpha lattice; independent of the bisection route."""
    spec = lebesgue() if spec is None else spec
    if n_alpha < 1000:
        raise ValueError("n_alpha must be at least 1000")
    if grid < _MIN_GRID:
        raise ValueError(f"grid must be at least {_MIN_GRID} points")
    xs = np.linspace(base.a, base.b, grid)
    vals = evaluate_array(f, xs)
    bad = np.isnan(vals)
    n_excluded = int(np.count_nonzero(bad))
    if n_excluded >= MAX_EXCLUDED_FRACTION * grid:
        raise EvalError(f"integrand is not evaluable at {n_excluded} of {grid} grid points")
    i_min = int(np.nanargmin(vals))
    if float(vals[i_min]) < -_NEG_SLACK:
        raise NegativeFunctionError(float(xs[i_min]), float(vals[i_min]))

    sorted_vals = np.sort(vals[~bad])
    mu_total = measure_of(spec, base)
    alphas = np.linspace(0.0, mu_total, n_alpha)
    counts = sorted_vals.size - np.searchsorted(sorted_vals, alphas, side="left")
    lengths = (counts / grid) * base.length
    if spec.kind == "lebesgue":
        f_hat = lengths
    else:
        f_hat = evaluate_array(spec.phi, lengths)
    return float(np.max(np.minimum(alphas, f_hat)))


def distribution_profile(
    f: FunctionExpr,
    base: Interval,
    spec: MeasureSpec | None = None,
    alphas=(),
    grid: int = DEFAULT_GRID,
) -> DistributionProfile:
    """Sample the distribution function F at the given increasing alphas."""
    spec = lebesgue() if spec is None else spec
    alphas = tuple(float(a) for a in alphas)
    if not alphas:
        raise ValueError("alphas must be non-empty")
    if any(nxt <= cur for cur, nxt in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be strictly increasing")
    levels = _LevelSets(f, base, spec, grid)
    return DistributionProfile(tuple((a, levels.measure(a)) for a in alphas))


@dataclass(frozen=True)
class PropertyReport:
    """Empirical verdicts for the standard Sugeno integral properties.

    The two ``*_sampled`` items quantify over all gamma in the underlying
    statement; here they are probed at finitely many gammas only, so a True
    is evidence, not proof.
    """

    bounded_by_measure: bool      # integral(f) <= mu(X), same for g
    constant_matches_min: bool    # integral of the constant k equals min(k, mu(X))
    monotone_in_integrand: bool   # f <= g implies integral(f) <= integral(g)
    threshold_lower: bool         # F(alpha) >= alpha implies integral >= alpha
    threshold_upper: bool         # F(alpha) <= alpha implies integral <= alpha
    exceeds_alpha_sampled: bool   # integral > alpha: some gamma > alpha has F(gamma) > alpha
    below_alpha_sampled: bool     # integral < alpha: some gamma < alpha has F(gamma) < alpha
    integral_f: float
    integral_g: float
    integral_k: float
    measure_total: float

    @property
    def all_pass(self) -> bool:
        return (
            self.bounded_by_measure
            and self.constant_matches_min
            and self.monotone_in_integrand
            and self.threshold_lower
            and self.threshold_upper
            and self.exceeds_alpha_sampled
            and self.below_alpha_sampled
        )


def check_proposition_properties(
    f: FunctionExpr,
    g: FunctionExpr,
    k: float,
    base: Interval,
    spec: MeasureSpec | None = None,
    cfg: SolverConfig | None = None,
    grid: int = 10001,
    tol: float = PROPERTY_TOL,
) -> PropertyReport:
    """Check the standard integral properties for a pair f <= g and a constant k.

    Raises :class:`PreconditionError` with a witness point when f <= g fails
    on the grid.
    """
    spec = lebesgue() if spec is None else spec
    cfg = SolverConfig() if cfg is None else cfg
    if k < 0.0:
        raise ValueError("k must be non-negative")
    levels_f = _LevelSets(f, base, spec, grid, require_nonnegative=True)
    levels_g = _LevelSets(g, base, spec, grid, require_nonnegative=True)

    both = ~np.isnan(levels_f.vals) & ~np.isnan(levels_g.vals)
    excess = np.where(both, levels_f.vals - levels_g.vals, -np.inf)
    worst = int(np.argmax(excess))
    if excess[worst] > 1e-12:
        x_bad = float(levels_f.xs[worst])
        raise PreconditionError(
            f"need f <= g on the grid; f exceeds g by {float(excess[worst])!r} at x={x_bad!r}",
            witness=x_bad,
        )

    mu_total = measure_of(spec, base)
    v_f = _integral_from_levels(levels_f, cfg).value
    v_g = _integral_from_levels(levels_g, cfg).value
    levels_k = _LevelSets(constant(k), base, spec, grid, require_nonnegative=True)
    v_k = _integral_from_levels(levels_k, cfg).value

    bounded = v_f <= mu_total + tol and v_g <= mu_total + tol
    const_ok = abs(v_k - min(k, mu_total)) <= tol
    mono = v_f <= v_g + tol

    # Threshold items: alpha is constructed from the computed integral so the
    # hypothesis is numerically decidable; a failed hypothesis passes vacuously.
    a4 = max(v_f - tol, 0.0)
    lower_ok = (levels_f.measure(a4) < a4) or (v_f >= a4 - 1e-9)
    a5 = v_f + tol
    upper_ok = (levels_f.measure(a5) > a5) or (v_f <= a5 + 1e-9)

    delta = max(1e-3 * max(1.0, mu_total), 10.0 * tol)
    a6 = v_f - delta
    if a6 <= 0.0:
        exceeds_ok = True  # no alpha strictly between 0 and the integral to probe
    else:
        gammas = [a6 + (v_f - a6) * j / _GAMMA_PROBES for j in range(1, _GAMMA_PROBES + 1)]
        exceeds_ok = any(levels_f.measure(gm) > a6 for gm in gammas)
    a7 = v_f + delta
    gammas = [v_f + delta * j / _GAMMA_PROBES for j in range(_GAMMA_PROBES)]
    below_ok = any(levels_f.measure(gm) < a7 for gm in gammas)

    return PropertyReport(
        bounded_by_measure=bounded,
        constant_matches_min=const_ok,
        monotone_in_integrand=mono,
        threshold_lower=lower_ok,
        threshold_upper=upper_ok,
        exceeds_alpha_sampled=exceeds_ok,
        below_alpha_sampled=below_ok,
        integral_f=v_f,
        integral_g=v_g,
        integral_k=v_k,
        measure_total=mu_total,
    )
