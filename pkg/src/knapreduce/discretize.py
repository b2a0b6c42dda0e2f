"""Exact geometric discretization of costs and their budget complements.

All rounding is done on the exact rational grid 1, g, g^2, ... for
g = 1 + 1/(10 d); exponents are found by iterated multiplication and
binary search over memoized powers, never by floating-point logarithms,
so boundary values bucket deterministically.

A coordinate's discretized value is the smaller of the geometric
round-up of the cost and the budget minus the geometric round-down of
the residual; ties go to the round-up branch.  The per-coordinate key
(branch, exponent) determines the exact value given the budget and g.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

ZERO = "zero"
UP = "up"
COMP_DOWN = "comp_down"

CoordKey = tuple  # (ZERO,) | (UP, t) | (COMP_DOWN, t or None)

_powers: dict[Fraction, list[Fraction]] = {}


def gamma_for_dimension(d: int) -> Fraction:
    """The scaling factor 1 + 1/(10 d), exactly."""
    if d < 1:
        raise ValueError("dimension must be positive")
    return Fraction(10 * d + 1, 10 * d)


def _power_table(gamma: Fraction, upto) -> list[Fraction]:
    if gamma <= 1:
        raise ValueError("scaling factor must exceed 1")
    table = _powers.setdefault(gamma, [Fraction(1)])
    while table[-1] < upto:
        table.append(table[-1] * gamma)
    return table


def _round_up_exponent(x, gamma: Fraction) -> int:
    """Smallest t >= 0 with gamma^t >= x, for x >= 1."""
    table = _power_table(gamma, x)
    return bisect_left(table, x)


def varpi_up(x: int, gamma: Fraction) -> Fraction:
    """0 at 0, else the smallest gamma power at or above x."""
    if x < 0:
        raise ValueError("negative values cannot be discretized")
    if x == 0:
        return Fraction(0)
    return _power_table(gamma, x)[_round_up_exponent(x, gamma)]


def varpi_down(x: int, gamma: Fraction) -> Fraction:
    """0 at 0, else the largest gamma power at or below x."""
    if x < 0:
        raise ValueError("negative values cannot be discretized")
    if x == 0:
        return Fraction(0)
    table = _power_table(gamma, x)
    t = bisect_left(table, x)
    return table[t] if table[t] == x else table[t - 1]


@dataclass(frozen=True)
class DiscretizedCost:
    """Per-coordinate branch keys plus the exact values they denote."""

    keys: tuple[CoordKey, ...]
    values: tuple[Fraction, ...]


def digamma(cost_vector, budget, gamma: Fraction) -> DiscretizedCost:
    """Discretize one cost vector against its budget, coordinate by coordinate."""
    if len(cost_vector) != len(budget):
        raise ValueError("cost vector and budget must have equal length")
    keys = []
    values = []
    for x, b in zip(cost_vector, budget):
        if not 0 <= x <= b:
            raise ValueError(f"cost {x} outside the budget range [0, {b}]")
        if x == 0:
            keys.append((ZERO,))
            values.append(Fraction(0))
            continue
        table = _power_table(gamma, max(x, b))
        t_up = bisect_left(table, x)
        up = table[t_up]
        residual = b - x
        if residual == 0:
            t_down = None
            comp = Fraction(b)
        else:
            t = bisect_left(table, residual)
            t_down = t if table[t] == residual else t - 1
            comp = b - table[t_down]
        if up <= comp:
            keys.append((UP, t_up))
            values.append(up)
        else:
            keys.append((COMP_DOWN, t_down))
            values.append(comp)
    return DiscretizedCost(tuple(keys), tuple(values))


def prune_by_discretization(items, budget, gamma: Fraction) -> list[int]:
    """Keep one maximum-profit item per full discretization key.

    items is a sequence of (index, profit, cost_vector) triples whose
    costs already fit the budget; profit ties keep the smaller index.
    Returns the surviving indices in ascending order.
    """
    best: dict[tuple[CoordKey, ...], tuple[int, int]] = {}
    for index, item_profit, cost in items:
        key = digamma(cost, budget, gamma).keys
        incumbent = best.get(key)
        if incumbent is None or (item_profit, -index) > (incumbent[0], -incumbent[1]):
            best[key] = (item_profit, index)
    return sorted(index for _, index in best.values())
