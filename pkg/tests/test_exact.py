"""
Tests of the exact oracles: scenarios, optimal schedules and the capacity decision
"""

import itertools
from fractions import Fraction

import pytest

from robsched.models.common.instance import Instance, Schedule, Scenario
from robsched.models.common.objective import worst_case_makespan
from robsched.models.common.outcome import SizeLimitExceeded
from robsched.models.common.value import FORBIDDEN
from robsched.models.exact.capacity import MachineType, CapacitatedTypedInstance, capacity_decision_exact, \
    within_capacity
from robsched.models.exact.scenarios import enumerate_scenarios, adversary_argmax
from robsched.models.exact.search import BranchAndBound, optimal_bruteforce, optimal_bnb
from tests import *

pytestmark = pytest.mark.exact


def test_enumerate_scenarios():
    assert [s.deviating for s in enumerate_scenarios(3, 1)] == \
        [frozenset(), frozenset({0}), frozenset({1}), frozenset({2})]
    assert list(enumerate_scenarios(3, 0)) == [Scenario()]
    assert len(list(enumerate_scenarios(2, 5))) == 4
    assert len(set(enumerate_scenarios(6, 3))) == 1 + 6 + 15 + 20


def test_enumerate_scenarios_limit():
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_scenarios(30, 1))
    assert len(list(enumerate_scenarios(30, 1, limit=30))) == 31


def test_adversary_argmax():
    instance = Instance.identical([1, 2], [3, 1], 1, 1)
    assert adversary_argmax(instance, Schedule([0, 0])) == (Scenario({0}), 6)
    classical = instance.with_gamma(0)
    assert adversary_argmax(classical, Schedule([0, 0])) == (Scenario(), 3)
    rng = seeded(10)
    for _ in range(50):
        instance = random_instance(rng)
        schedule = random_schedule(rng, instance)
        assert adversary_argmax(instance, schedule)[1] == worst_case_makespan(instance, schedule)


def test_bruteforce_examples():
    schedule, value = optimal_bruteforce(Instance.identical([1, 1, 2], [0, 0, 0], 2, 0))
    assert value == 2
    schedule, value = optimal_bruteforce(Instance.identical([1, 2], [1, 1], 1, 1))
    assert schedule == Schedule([0, 0]) and value == 4
    schedule, value = optimal_bruteforce(Instance.identical([1, 1, 1], [1, 1, 1], 3, 1))
    assert value == 2
    assert sorted(schedule) == [0, 1, 2]


def test_bruteforce_example_file():
    schedule, value = optimal_bruteforce(Instance.load(EXAMPLE_INSTANCE))
    assert value == Fraction(9, 2)
    assert schedule == Schedule([0, 1, 0])


def test_bruteforce_limit():
    instance = Instance.identical([1] * 13, [0] * 13, 3, 0)
    with pytest.raises(SizeLimitExceeded):
        optimal_bruteforce(instance)
    with pytest.raises(SizeLimitExceeded):
        optimal_bruteforce(instance.with_gamma(0), limit=100)


def test_bnb_examples():
    schedule, value = optimal_bnb(Instance.unrelated([[3, 5], [2, FORBIDDEN]], [[1, 0], [4, 0]], 1))
    assert value == 6
    single = Instance.unrelated([[3], [2]], [[1], [4]], 1)
    assert optimal_bnb(single)[1] == 4
    classical = Instance.identical([3, 3, 2, 2, 2], [0] * 5, 2, 0)
    assert optimal_bnb(classical)[1] == 6


def test_bnb_matches_bruteforce():
    rng = seeded(11)
    for _ in range(150):
        instance = random_instance(rng, jobs=(1, 7), machines=(1, 3), gamma=(0, 3))
        schedule, value = optimal_bnb(instance)
        assert worst_case_makespan(instance, schedule) == value
        assert value == optimal_bruteforce(instance)[1]


@pytest.mark.slow
def test_bnb_matches_bruteforce_large():
    rng = seeded(12)
    for _ in range(500):
        instance = random_instance(rng, jobs=(1, 8), machines=(1, 3), gamma=(0, 3))
        assert optimal_bnb(instance)[1] == optimal_bruteforce(instance)[1]


def test_symmetry_groups():
    engine = BranchAndBound(Instance.identical([1, 2], [0, 0], 3, 0).p_bar_matrix)
    assert engine.group == [0, 0, 0]
    uniform = Instance.uniform([1, 2], [0, 0], [1, 2, 1], 0)
    engine = BranchAndBound(uniform.p_bar_matrix, uniform.p_hat_matrix)
    assert engine.group == [0, 1, 0]


def one_type(count, capacity, times):
    return CapacitatedTypedInstance([MachineType(count, Fraction(capacity), tuple(times))])


def test_capacity_decision_examples():
    outcome = capacity_decision_exact(one_type(2, 1, [1, 1]))
    assert outcome.accepted
    assert sorted(outcome.schedule) == [0, 1]
    assert not capacity_decision_exact(one_type(1, 1, [Fraction(3, 5), Fraction(3, 5)])).accepted
    forbidden = CapacitatedTypedInstance([MachineType(1, Fraction(1), (FORBIDDEN, 0)),
                                          MachineType(2, Fraction(1), (FORBIDDEN, 1))])
    assert not capacity_decision_exact(forbidden).accepted
    assert not capacity_decision_exact(one_type(0, 1, [0])).accepted


def test_capacity_instance_checks():
    with pytest.raises(ValueError):
        one_type(1, 0, [1])
    with pytest.raises(ValueError):
        CapacitatedTypedInstance([MachineType(1, Fraction(1), (1,)), MachineType(1, Fraction(1), (1, 2))])
    with pytest.raises(ValueError):
        CapacitatedTypedInstance([])
    cti = CapacitatedTypedInstance([MachineType(2, Fraction(1), (1, 2)), MachineType(1, Fraction(3), (2, 1))])
    assert cti.machine_types() == [0, 0, 1]
    assert cti.capacities() == [1, 1, 3]
    assert cti.loads(Schedule([2, 2])) == [0, 0, 3]


def random_cti(rng):
    n = rng.randint(1, 5)
    types = []
    for _ in range(rng.randint(1, 3)):
        times = tuple(FORBIDDEN if rng.random() < 0.15 else rational(rng, high=4, denominator=2) for _ in range(n))
        types.append(MachineType(rng.randint(0, 2), rational(rng, low=1, high=6, denominator=2), times))
    return CapacitatedTypedInstance(types)


def exists_within_capacity(cti):
    return any(within_capacity(cti, Schedule(a))
               for a in itertools.product(range(cti.machine_count), repeat=cti.job_count))


def test_capacity_decision_matches_enumeration():
    rng = seeded(13)
    for _ in range(200):
        cti = random_cti(rng)
        outcome = capacity_decision_exact(cti)
        if outcome.accepted:
            assert within_capacity(cti, outcome.schedule)
        assert outcome.accepted == exists_within_capacity(cti)


def test_capacity_decision_scaling():
    rng = seeded(14)
    for _ in range(100):
        cti = random_cti(rng)
        factor = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert capacity_decision_exact(cti).accepted == capacity_decision_exact(cti.scaled(factor)).accepted


def test_capacity_decision_limit():
    with pytest.raises(SizeLimitExceeded):
        capacity_decision_exact(one_type(2, 1, [0] * 5), limit=4)
