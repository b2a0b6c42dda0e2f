"""Square-root-of-dimension approximation for vector knapsack.

Items are split by whether every coordinate fits in half its budget.
The half-fitting ("2-bounded") side is handled by randomized rounding of
the exact fractional relaxation with greedy repair; the other side is
discretized geometrically, duplicate-keyed items are pruned, and subsets
of at most d items are enumerated (on that side no feasible solution can
be larger, one coordinate per item being more than half spent).  The
combined routine returns the better branch.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .discretize import gamma_for_dimension, prune_by_discretization
from .knapsack import (
    DEFAULT_BOUNDED_CAP,
    Solution,
    VkInstance,
    check_feasible,
    profit,
    solve_bruteforce_bounded_size,
    subinstance,
)
from .simplex import DEFAULT_VARIABLE_CAP, knapsack_relaxation

DEFAULT_ROUNDING_TRIALS = 32


@dataclass(frozen=True)
class BoundednessSplit:
    """Partition of the items by the half-budget test, decided exactly."""

    bounded_items: tuple[int, ...]
    unbounded_items: tuple[int, ...]


def _is_bounded(inst: VkInstance, i: int) -> bool:
    return all(2 * inst.costs[i][j] <= inst.budget[j] for j in range(inst.dimension))


def split_by_boundedness(inst: VkInstance) -> BoundednessSplit:
    bounded = []
    unbounded = []
    for i in range(inst.item_count):
        (bounded if _is_bounded(inst, i) else unbounded).append(i)
    return BoundednessSplit(tuple(bounded), tuple(unbounded))


def _best_solution(inst: VkInstance, a: Solution, b: Solution) -> Solution:
    pa, pb = profit(inst, a), profit(inst, b)
    if pa != pb:
        return a if pa > pb else b
    return a if a.sorted_items() <= b.sorted_items() else b


def approx_2unbounded(
    inst: VkInstance, bounded_cap: int = DEFAULT_BOUNDED_CAP
) -> Solution:
    """Discretize, prune duplicate cost keys, enumerate subsets of size <= d.

    Every item must fail the half-budget test in some coordinate.  Items
    that do not fit the budget alone are dropped up front.  The
    enumeration runs on the original, undiscretized costs of the
    survivors, so the output is always feasible.
    """
    d = inst.dimension
    for i in range(inst.item_count):
        if _is_bounded(inst, i):
            raise ValueError(f"item {i} fits half the budget in every coordinate")
    fitting = [
        i
        for i in range(inst.item_count)
        if all(inst.costs[i][j] <= inst.budget[j] for j in range(d))
    ]
    if not fitting:
        return Solution()
    gamma = gamma_for_dimension(d)
    survivors = prune_by_discretization(
        [(i, inst.profits[i], inst.costs[i]) for i in fitting],
        inst.budget,
        gamma,
    )
    sub, order = subinstance(inst, survivors)
    _, sol = solve_bruteforce_bounded_size(sub, d, bounded_cap)
    return Solution(frozenset(order[i] for i in sol.chosen))


def lp_solve_relaxation(
    inst: VkInstance, variable_cap: int = DEFAULT_VARIABLE_CAP
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact fractional optimum; never below the integral optimum."""
    if inst.item_count == 0:
        return Fraction(0), ()
    return knapsack_relaxation(inst.profits, inst.costs, inst.budget, variable_cap)


def _best_singleton(inst: VkInstance) -> Solution:
    best = Solution()
    best_profit = -1
    for i in range(inst.item_count):
        if check_feasible(inst, Solution(frozenset([i]))):
            if inst.profits[i] > best_profit:
                best = Solution(frozenset([i]))
                best_profit = inst.profits[i]
    return best if best_profit >= 0 else Solution()


def _repair(inst: VkInstance, chosen: set[int]) -> set[int]:
    """Drop the worst profit-per-violation item until the set is feasible."""
    while True:
        totals = [sum(inst.costs[i][j] for i in chosen) for j in range(inst.dimension)]
        violated = [j for j in range(inst.dimension) if totals[j] > inst.budget[j]]
        if not violated:
            return chosen
        scored = []
        for i in chosen:
            load = sum(inst.costs[i][j] for j in violated)
            if load > 0:
                scored.append((Fraction(inst.profits[i], load), i))
        worst = min(scored)
        chosen.discard(worst[1])


def approx_lp_rounding(
    inst: VkInstance,
    seed: int,
    trials: int = DEFAULT_ROUNDING_TRIALS,
    variable_cap: int = DEFAULT_VARIABLE_CAP,
) -> Solution:
    """Round the scaled fractional optimum; repair; keep the best of many trials.

    Every item must pass the half-budget test.  Each trial includes item i
    with probability x_i / (4 sqrt(d)); infeasible draws are repaired by
    discarding low profit-per-violation items.  The best feasible single
    item is always a candidate, as is the empty set, so the result is
    never worse than the best singleton.
    """
    for i in range(inst.item_count):
        if not _is_bounded(inst, i):
            raise ValueError(f"item {i} exceeds half the budget in some coordinate")
    if inst.item_count == 0:
        return Solution()
    d = inst.dimension
    if d == 0:
        return Solution(frozenset(range(inst.item_count)))
    _, weights = lp_solve_relaxation(inst, variable_cap)
    theta = min(1.0, 1.0 / (4.0 * math.sqrt(d)))
    probabilities = [min(1.0, theta * float(w)) for w in weights]

    best = _best_singleton(inst)
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        drawn = {i for i, p in enumerate(probabilities) if rng.random() < p}
        repaired = _repair(inst, drawn)
        candidate = Solution(frozenset(repaired))
        best = _best_solution(inst, best, candidate)
    return best


def approx_sqrt_d(inst: VkInstance, seed: int) -> Solution:
    """Run both branches on their item classes and keep the better solution."""
    split = split_by_boundedness(inst)
    candidates = [Solution()]
    if split.bounded_items:
        sub, order = subinstance(inst, split.bounded_items)
        sol = approx_lp_rounding(sub, seed)
        candidates.append(Solution(frozenset(order[i] for i in sol.chosen)))
    if split.unbounded_items:
        sub, order = subinstance(inst, split.unbounded_items)
        sol = approx_2unbounded(sub)
        candidates.append(Solution(frozenset(order[i] for i in sol.chosen)))
    best = candidates[0]
    for candidate in candidates[1:]:
        best = _best_solution(inst, best, candidate)
    return best
