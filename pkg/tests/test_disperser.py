from fractions import Fraction
from itertools import combinations

import pytest

from knapreduce.disperser import Disperser, build_disperser, covering_holds
from knapreduce.errors import CapExceededError, ConstructionError


def test_partition_covers_fully():
    sets = (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5}))
    assert covering_holds(6, sets, 3, Fraction(0))


def test_single_full_set():
    family = build_disperser(5, 1, 5, 1, Fraction(1, 2), seed=1)
    assert family.sets[0] == frozenset(range(5))


def test_seeded_family_verifies_and_is_deterministic():
    a = build_disperser(12, 6, 6, 3, Fraction(1, 4), seed=99)
    b = build_disperser(12, 6, 6, 3, Fraction(1, 4), seed=99)
    assert a.sets == b.sets
    assert all(len(s) == 6 for s in a.sets)
    # independent re-check of the covering property over all 20 triples
    for chosen in combinations(a.sets, 3):
        union = frozenset().union(*chosen)
        assert len(union) >= (1 - Fraction(1, 4)) * 12


def test_infeasible_parameters_fail_loudly():
    # one singleton can never cover a 10-element universe exactly
    with pytest.raises(ConstructionError):
        build_disperser(10, 4, 1, 1, Fraction(0), seed=5)


def test_verification_cap():
    with pytest.raises(CapExceededError):
        build_disperser(30, 25, 5, 12, Fraction(1, 2), seed=0, verify_cap=100)


def test_parameter_validation():
    with pytest.raises(ValueError):
        build_disperser(4, 2, 5, 1, Fraction(0), seed=0)
    with pytest.raises(ValueError):
        build_disperser(4, 2, 2, 3, Fraction(0), seed=0)
    with pytest.raises(ValueError):
        build_disperser(4, 2, 2, 1, Fraction(3, 2), seed=0)


def test_dataclass_fields():
    family = build_disperser(6, 3, 4, 2, Fraction(1, 3), seed=2)
    assert isinstance(family, Disperser)
    assert family.universe_size == 6
    assert family.cover_count == 2
