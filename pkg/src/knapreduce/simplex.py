"""Dense tableau simplex over exact rationals, Bland's rule throughout.

Solves max c.x subject to A.x <= b, x >= 0 with b >= 0, which is all the
knapsack relaxation needs: the all-slack basis is feasible, so there is
no phase one, and Bland's pivoting rule guarantees termination without
any tolerance fiddling.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapExceededError

DEFAULT_VARIABLE_CAP = 400


class SimplexError(Exception):
    """Internal invariant failure (an unbounded direction, here impossible)."""


def simplex_maximize(objective, rows, rhs) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Maximize objective . x over A x <= rhs, x >= 0 (all rhs nonnegative).

    Returns (optimal value, primal point).  Entering variable: smallest
    index with a positive reduced cost; leaving: smallest basic variable
    among the minimum-ratio rows.
    """
    n = len(objective)
    m = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("constraint rows must match the objective length")
    if any(b < 0 for b in rhs):
        raise ValueError("right-hand sides must be nonnegative")

    # Columns: n structurals then m slacks; basis starts as the slacks.
    tableau = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(b)]
        for i, (row, b) in enumerate(zip(rows, rhs))
    ]
    cost = [Fraction(x) for x in objective] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    total = n + m

    while True:
        entering = next((j for j in range(total) if cost[j] > 0), None)
        if entering is None:
            break
        candidates = []
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                candidates.append((tableau[i][total] / a, basis[i], i))
        if not candidates:
            raise SimplexError("unbounded direction in a bounded program")
        _, _, pivot_row = min(candidates, key=lambda item: (item[0], item[1]))
        pivot = tableau[pivot_row][entering]
        tableau[pivot_row] = [x / pivot for x in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][entering] != 0:
                factor = tableau[i][entering]
                tableau[i] = [
                    x - factor * y for x, y in zip(tableau[i], tableau[pivot_row])
                ]
        if cost[entering] != 0:
            factor = cost[entering]
            cost = [x - factor * y for x, y in zip(cost, tableau[pivot_row])]
        basis[pivot_row] = entering

    point = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            point[var] = tableau[i][total]
    value = sum(Fraction(c) * x for c, x in zip(objective, point))
    return value, tuple(point)


def knapsack_relaxation(
    profits, costs, budget, variable_cap: int = DEFAULT_VARIABLE_CAP
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Fractional relaxation: max p.x, cost constraints, 0 <= x <= 1."""
    n = len(profits)
    if n > variable_cap:
        raise CapExceededError(f"{n} variables exceeds the LP cap {variable_cap}")
    d = len(budget)
    rows = [[costs[i][j] for i in range(n)] for j in range(d)]
    rows += [[int(i == k) for i in range(n)] for k in range(n)]
    rhs = list(budget) + [1] * n
    return simplex_maximize(list(profits), rows, rhs)
