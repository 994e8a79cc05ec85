# -*- coding: utf-8 -*-

import logging
from fractions import Fraction
from math import floor, inf, log2
from typing import Iterable, Iterator, List, Sequence

import numpy as np
from scipy.optimize import root_scalar

from zfeedback.DataClasses import CodeParams, ErrorDistribution, RateCurve, Rational, to_fraction
from zfeedback.zf_helper import tuplelist2csv
from zfeedback.zf_numerics import binomial, entropy, entropy_array

logger = logging.getLogger(__name__)

# Above this many (block, budget, errors) cells the balanced closed form replaces the DP.
DP_STATE_LIMIT = 200_000

UPPER_GRID_STEP = 1e-3
UPPER_REFINEMENTS = 3
UPPER_REFINE_POINTS = 21
UPPER_XTOL = 1e-12


def gamma_factors(delta: int, p: int, epsilon: Rational) -> List[Fraction]:
    epsilon = to_fraction(epsilon)
    count = binomial(delta, p)
    factors = [(1 - epsilon) * Fraction(count, binomial(delta - p + e, e)) for e in range(p)]
    return factors + [Fraction(1)]


def error_distributions(k: int, t: int, p: int) -> Iterator[ErrorDistribution]:
    """Yield every (k_0, ..., k_p) with sum k and at most t + p errors in total."""
    budget = t + p

    def compositions(prefix, e, blocks_left, errors_left):
        if e == p:
            if blocks_left * p <= errors_left:
                yield prefix + (blocks_left,)
            return
        for count in range(blocks_left + 1):
            if count * e > errors_left:
                break
            yield from compositions(prefix + (count,), e + 1, blocks_left - count, errors_left - count * e)

    for counts in compositions((), 0, k, budget):
        yield ErrorDistribution(counts, t)


def min_product_bruteforce(gammas: Sequence[Fraction], k: int, t: int) -> Fraction:
    p = len(gammas) - 1
    return min(dist.product(tuple(gammas)) for dist in error_distributions(k, t, p))


def min_product_dp(gammas: Sequence[Fraction], k: int, t: int) -> Fraction:
    """Minimise the product over all error distributions, one subblock at a time.

    best[u] is the smallest product reachable with u errors spent so far.
    """
    p = len(gammas) - 1
    budget = t + p
    best = [None] * (budget + 1)
    best[0] = Fraction(1)
    for _ in range(k):
        step = [None] * (budget + 1)
        for used, value in enumerate(best):
            if value is None:
                continue
            for e, gamma in enumerate(gammas):
                if used + e > budget:
                    break
                candidate = value * gamma
                if step[used + e] is None or candidate < step[used + e]:
                    step[used + e] = candidate
        best = step
    return min(value for value in best if value is not None)


def min_product_balanced(gammas: Sequence[Fraction], k: int, t: int) -> Fraction:
    """Closed-form minimum: spread the error budget as evenly as possible.

    log(gamma_e) is convex and decreasing in e, so the optimum spends
    min(t + p, p*k) errors with per-subblock counts differing by at most one.
    """
    p = len(gammas) - 1
    budget = min(t + p, p * k)
    if k == 0:
        return Fraction(1)
    low, extra = divmod(budget, k)
    if low == p:
        return Fraction(1)
    return gammas[low] ** (k - extra) * gammas[low + 1] ** extra


def lemma2_guarantee(params: CodeParams) -> int:
    """Return floor(A * min over error distributions of prod gamma_e^k_e)."""
    gammas = params.gammas
    cells = params.k * (params.t + params.p + 1) * (params.p + 1)
    if cells <= DP_STATE_LIMIT:
        minimum = min_product_dp(gammas, params.k, params.t)
    else:
        minimum = min_product_balanced(gammas, params.k, params.t)
    return floor(params.A * minimum)


def lemma2_closed_form_log2(params: CodeParams) -> float:
    """Return log2 of (closed-form message count + 1), finite at any size."""
    k, t, p, delta = params.k, params.t, params.p, params.delta
    return (log2(params.A) + k * log2(1 - params.epsilon) + k * log2(binomial(delta, p))
            - log2(binomial(delta * k - p * k + t + p, t + p)))


def lemma2_closed_form(params: CodeParams) -> float:
    exponent = lemma2_closed_form_log2(params)
    if exponent > 1023:
        return inf
    return 2 ** exponent - 1


def construction_rate(params: CodeParams) -> float:
    return log2(lemma2_guarantee(params)) / params.n


def lower_rate(tau: float) -> float:
    if not 0 <= tau <= 1:
        raise ValueError(f'lower_rate() argument {tau} outside [0, 1]')
    tau_log_tau = tau * log2(tau) if tau > 0 else 0.0
    return (1 + tau) - (1 + tau) * log2(1 + tau) + tau_log_tau


def _side_condition(v: float, c: float) -> float:
    """h(v) + v*h(min(c/v, 1/2)), increasing in v on [0, 1/2]."""
    if v == 0:
        return 0.0
    return entropy(v) + v * entropy(min(c / v, 0.5))


def _largest_v(c: float) -> float:
    if _side_condition(0.5, c) <= 1:
        return 0.5
    solution = root_scalar(lambda v: _side_condition(v, c) - 1, bracket=[0.0, 0.5],
                           method='bisect', xtol=UPPER_XTOL)
    return solution.root


def _inner_rate(tau: float, tau_prime: float) -> float:
    c = (tau - tau_prime) / (1 - tau_prime)
    return (1 - tau_prime) * entropy(_largest_v(max(c, 0.0)))


def upper_rate(tau: float) -> float:
    """Return the upper bound on the capacity error function at tau.

    The outer minimum over tau' runs on a grid of step 1e-3 followed by
    three rounds of local refinement; the inner v is found by bisection.
    """
    if not 0 < tau < 1:
        raise ValueError(f'upper_rate() argument {tau} outside (0, 1)')
    points = max(1, int(np.ceil(tau / UPPER_GRID_STEP)))
    grid = np.linspace(0.0, tau, points + 1)
    values = [_inner_rate(tau, x) for x in grid]
    best = int(np.argmin(values))
    best_x, best_value = grid[best], values[best]
    step = tau / points
    for _ in range(UPPER_REFINEMENTS):
        grid = np.linspace(max(0.0, best_x - step), min(tau, best_x + step), UPPER_REFINE_POINTS)
        for x in grid:
            value = _inner_rate(tau, x)
            if value < best_value:
                best_x, best_value = x, value
        step /= (UPPER_REFINE_POINTS - 1) / 2
    logger.debug('upper_rate(%s) = %s at tau_prime=%s', tau, best_value, best_x)
    return best_value


def upper_rate_gridscan(tau: float, resolution: float = 1e-4, chunk: int = 256) -> float:
    """Independent evaluation of upper_rate() by scanning a (tau', v) grid.

    The side condition crossing in v is located by linear interpolation
    between neighbouring grid points.
    """
    if not 0 < tau < 1:
        raise ValueError(f'upper_rate_gridscan() argument {tau} outside (0, 1)')
    v = np.linspace(0.0, 0.5, int(round(0.5 / resolution)) + 1)
    h_v = entropy_array(v)
    tau_primes = np.linspace(0.0, tau, max(1, int(np.ceil(tau / resolution))) + 1)
    best = np.inf
    for start in range(0, len(tau_primes), chunk):
        tp = tau_primes[start:start + chunk, None]
        c = (tau - tp) / (1 - tp)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(v > 0, c / v, 0.5)
        phi = h_v + v * entropy_array(np.clip(np.minimum(ratio, 0.5), 0.0, 0.5))
        feasible = phi <= 1
        # index of the last feasible v per row; phi is increasing so feasibility is a prefix
        last = feasible.sum(axis=1) - 1
        rows = np.arange(len(tp))
        v_star = v[last].copy()
        inside = last < len(v) - 1
        lo, hi = last[inside], last[inside] + 1
        phi_lo, phi_hi = phi[rows[inside], lo], phi[rows[inside], hi]
        v_star[inside] = v[lo] + (1 - phi_lo) / (phi_hi - phi_lo) * (v[hi] - v[lo])
        values = (1 - tp[:, 0]) * entropy_array(v_star)
        best = min(best, float(values.min()))
    return best


def emit_curve(tau_grid: Iterable[float]) -> RateCurve:
    curve = RateCurve()
    for tau in tau_grid:
        curve.add(tau, lower_rate(tau), upper_rate(tau))
    return curve


def curve_to_csv(curve: RateCurve) -> str:
    return tuplelist2csv(curve.samples, header=('tau', 'lower', 'upper'))
