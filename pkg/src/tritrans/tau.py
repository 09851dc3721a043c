"""Branching numbers and bound formulas.

``solve_tau`` returns the unique ``tau >= 1`` with ``sum(tau ** -k) == 1``
for a branching vector ``k``.  ``case_taus`` evaluates the four branching
vectors of the descendant rule for a given ``alpha``.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

DEFAULT_ALPHA = 0.145785
TAU0 = 1.8393
LOWER_BASE = 1.4977
UPPER_BASE = 1.5012
MATCHING_BASE = 1.4422
H15_COUNT = 428

_RESIDUAL = 1e-12


class TauResult(NamedTuple):
    tau: float
    residual: float
    iterations: int


class CaseTaus(NamedTuple):
    case1: TauResult
    case2_1: TauResult
    case2_2: TauResult
    case3: TauResult

    def max_tau(self) -> float:
        return max(r.tau for r in self)


def _branch_sum(drops, tau):
    return math.fsum(tau ** -k for k in drops)


def solve_tau(drops: Sequence[float]) -> TauResult:
    """Bisection on ``[1, upper]``, then two Newton steps."""
    drops = [float(k) for k in drops]
    if not drops:
        raise ValueError("branching vector is empty")
    if any(not k > 0 for k in drops):
        raise ValueError(f"branching vector entries must be positive, got {drops}")
    if len(drops) == 1:
        return TauResult(1.0, 0.0, 0)

    lo, hi = 1.0, 2.0
    while _branch_sum(drops, hi) >= 1:
        lo, hi = hi, 2 * hi
    iterations = 0
    while hi - lo > 4 * math.ulp(hi) and iterations < 400:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if _branch_sum(drops, mid) > 1:
            lo = mid
        else:
            hi = mid
    tau = 0.5 * (lo + hi)
    for _ in range(2):
        g = _branch_sum(drops, tau) - 1
        dg = -math.fsum(k * tau ** (-k - 1) for k in drops)
        step = tau - g / dg
        if lo <= step <= hi:
            tau = step
    residual = abs(_branch_sum(drops, tau) - 1)
    if residual > _RESIDUAL:
        raise ArithmeticError(f"tau solver residual {residual:.3e} for {drops}")
    return TauResult(tau, residual, iterations)


def case_vectors(alpha: float) -> dict[str, tuple]:
    a = float(alpha)
    return {
        "case1": (2 - 2 * a, 3 - 3 * a, 2 - 2 * a),
        "case2_1": (2 - a, 2 - a),
        "case2_2": (2 - 2 * a, 3 - 3 * a, 4 - 3 * a, 2 - a),
        "case3": (1.0, 2.0, 3.0),
    }


def case_taus(alpha: float) -> CaseTaus:
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    results = {name: solve_tau(v) for name, v in case_vectors(alpha).items()}
    closed = 2 ** (1 / (2 - alpha))
    if abs(results["case2_1"].tau - closed) > 1e-9:
        raise ArithmeticError(
            f"case 2.1 root {results['case2_1'].tau} disagrees with 2^(1/(2-alpha))={closed}"
        )
    return CaseTaus(**results)


def certify_mu_bounded(alpha: float, tau0: float = TAU0) -> bool:
    return case_taus(alpha).max_tau() <= tau0 + 1e-9


class AlphaOptimum(NamedTuple):
    alpha: float
    max_tau: float
    feasible: tuple  # (lo, hi) where every case stays within tau3 + tolerance


def _max_tau(alpha):
    return case_taus(alpha).max_tau()


def optimize_alpha(interval=(1e-6, 0.5), tolerance=1e-9) -> AlphaOptimum:
    """Golden-section search for the alpha minimising the worst case.

    Case 3 does not depend on alpha, so the minimum is a plateau; the
    returned range is the part of ``interval`` where the worst case stays
    within ``tolerance`` of the case 3 value.
    """
    lo, hi = map(float, interval)
    if not 0 < lo <= hi < 1:
        raise ValueError(f"interval must lie inside (0, 1), got {interval}")
    inv_phi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    while b - a > 1e-12:
        c = b - inv_phi * (b - a)
        d = a + inv_phi * (b - a)
        if _max_tau(c) <= _max_tau(d):
            b = d
        else:
            a = c
    best = 0.5 * (a + b)
    floor = solve_tau((1, 2, 3)).tau
    feasible = _feasible_range(lo, hi, floor + tolerance)
    return AlphaOptimum(best, _max_tau(best), feasible)


def _feasible_range(lo, hi, limit):
    # every case vector's drops shrink as alpha grows, so the worst case is
    # non-decreasing in alpha and the feasible set is an initial segment
    if _max_tau(lo) > limit:
        return None
    if _max_tau(hi) <= limit:
        return (lo, hi)
    a, b = lo, hi
    while b - a > 1e-13:
        mid = 0.5 * (a + b)
        if _max_tau(mid) <= limit:
            a = mid
        else:
            b = mid
    return (lo, a)


def upper_bound(n: float) -> float:
    return TAU0 ** (2 * n / 3)


def lower_bound(n: float) -> float:
    c = (MATCHING_BASE / LOWER_BASE) ** 12
    return c * LOWER_BASE**n


def naive_bounds(n: float) -> tuple[float, float]:
    return 3 ** (n / 3), 4 ** (n / 3)


def exact_lower(n: int) -> int:
    """Count for ``k`` copies of H15 plus ``r`` 3-edges, ``n = 3(5k + r)``."""
    if n == 0:
        return 1
    if n < 0 or n % 3:
        raise ValueError(f"n must be a non-negative multiple of 3, got {n}")
    k, r = divmod(n // 3, 5)
    return H15_COUNT**k * 3**r


def leaf_bound(n: int, s: int, tau0: float = TAU0) -> float:
    return tau0 ** (n - s)
