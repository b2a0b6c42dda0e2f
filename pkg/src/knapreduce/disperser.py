"""Randomized-with-verification covering set families.

A family of k subsets of size at most l over an m-element universe is
accepted when every union of r distinct member sets covers at least a
(1 - epsilon) fraction of the universe.  Construction draws the sets at
random and verifies the covering property exhaustively, retrying with
fresh randomness up to a cap; failure is surfaced, never hidden.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import CapExceededError, ConstructionError

DEFAULT_RETRY_CAP = 64
DEFAULT_VERIFY_CAP = 200_000


@dataclass(frozen=True)
class Disperser:
    universe_size: int
    sets: tuple[frozenset[int], ...]
    set_size: int
    cover_count: int
    epsilon: Fraction


def covering_holds(
    universe_size: int, sets, cover_count: int, epsilon: Fraction
) -> bool:
    """Exhaustive check that every union of cover_count sets is large enough."""
    threshold = (1 - epsilon) * universe_size
    for chosen in combinations(sets, cover_count):
        union = frozenset().union(*chosen) if chosen else frozenset()
        if len(union) < threshold:
            return False
    return True


def build_disperser(
    universe_size: int,
    set_count: int,
    set_size: int,
    cover_count: int,
    epsilon,
    seed: int,
    retry_cap: int = DEFAULT_RETRY_CAP,
    verify_cap: int = DEFAULT_VERIFY_CAP,
) -> Disperser:
    """Draw and exhaustively verify a covering family, deterministically per seed."""
    eps = Fraction(epsilon)
    if not 0 <= eps <= 1:
        raise ValueError(f"epsilon {eps} outside [0, 1]")
    if set_size > universe_size:
        raise ValueError(f"set size {set_size} exceeds universe size {universe_size}")
    if not 0 <= cover_count <= set_count:
        raise ValueError("cover count must be between 0 and the number of sets")
    if comb(set_count, cover_count) > verify_cap:
        raise CapExceededError(
            f"{comb(set_count, cover_count)} unions exceed verification cap {verify_cap}"
        )
    rng = random.Random(seed)
    universe = range(universe_size)
    for _ in range(retry_cap):
        sets = tuple(frozenset(rng.sample(universe, set_size)) for _ in range(set_count))
        if covering_holds(universe_size, sets, cover_count, eps):
            return Disperser(universe_size, sets, set_size, cover_count, eps)
    raise ConstructionError(
        f"no covering family found in {retry_cap} attempts; parameters are likely "
        f"infeasible at this scale"
    )
