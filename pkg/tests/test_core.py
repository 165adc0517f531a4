"""
Tests of the instance model and the robust objective
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from robsched.models.common.instance import Instance, InstanceError, Schedule, ScheduleError, Scenario, ScenarioError
from robsched.models.common.objective import gamma_set, worst_case_load, worst_case_makespan, scenario_makespan, \
    validate, machine_loads, trivial_lower_bound, average_lower_bound
from robsched.models.common.value import FORBIDDEN, to_value, format_value, decimal_string
from robsched.models.exact.scenarios import enumerate_scenarios
from tests import *

pytestmark = pytest.mark.core


def one_machine(jobs, gamma):
    return Instance.identical([p for p, _ in jobs], [h for _, h in jobs], 1, gamma)


def test_gamma_set_examples():
    instance = Instance.identical([1, 1, 1], [3, 1, 2], 1, 2)
    assert gamma_set(instance, 0, {0, 1, 2}) == {0, 2}
    assert gamma_set(instance.with_gamma(5), 0, {0, 1}) == {0, 1}
    ties = Instance.identical([1, 1], [2, 2], 1, 1)
    assert gamma_set(ties, 0, {0, 1}) == {0}


def test_gamma_set_bad_machine():
    instance = Instance.identical([1], [1], 2, 1)
    with pytest.raises(InstanceError):
        gamma_set(instance, 2, {0})


def test_worst_case_load_examples():
    instance = one_machine([(1, 3), (2, 1), (1, 2)], 2)
    assert worst_case_load(instance, 0, [0, 1, 2]) == 9
    assert worst_case_load(instance.with_gamma(0), 0, [0, 1, 2]) == 4
    assert worst_case_load(one_machine([(1, 3)], 2), 0, [0]) == 4
    assert worst_case_load(instance, 0, []) == 0


def test_worst_case_load_forbidden():
    instance = Instance.unrelated([[1, FORBIDDEN], [1, 1]], [[0, 0], [0, 0]], 1)
    assert worst_case_load(instance, 0, [0, 1]) is FORBIDDEN
    assert worst_case_load(instance, 1, [0, 1]) == 2


def test_worst_case_makespan_examples():
    instance = Instance.identical([1, 1], [1, 1], 2, 1)
    assert worst_case_makespan(instance, Schedule([0, 1])) == 2
    assert worst_case_makespan(instance, Schedule([0, 0])) == worst_case_load(instance, 0, [0, 1]) == 3
    assert machine_loads(instance, Schedule([0, 0])) == [3, 0]


def test_scenario_makespan_examples():
    instance = one_machine([(1, 3), (2, 1)], 1)
    schedule = Schedule([0, 0])
    assert scenario_makespan(instance, schedule, Scenario()) == 3
    assert scenario_makespan(instance, schedule, Scenario({0})) == 6
    everything = one_machine([(1, 3), (2, 1)], 5)
    assert scenario_makespan(everything, schedule, Scenario({0, 1})) == 7


def test_scenario_over_budget():
    instance = one_machine([(1, 3), (2, 1)], 1)
    with pytest.raises(ScenarioError):
        scenario_makespan(instance, Schedule([0, 0]), Scenario({0, 1}))
    with pytest.raises(ScenarioError):
        scenario_makespan(instance, Schedule([0, 0]), Scenario({4}))


def test_validate():
    instance = Instance.unrelated([[1, FORBIDDEN], [1, 1]], [[0, 0], [0, 0]], 0)
    assert validate(instance, Schedule([0, 1])) is None
    assert 'job 1' in validate(instance, Schedule([0, 0]))
    assert 'length' in validate(instance, Schedule([0]))
    assert validate(instance, Schedule([0, 2])) is not None
    with pytest.raises(ScheduleError):
        worst_case_makespan(instance, Schedule([1, 0, 0]))


def test_instance_invariants():
    with pytest.raises(InstanceError):
        Instance.identical([], [], 1, 0)
    with pytest.raises(InstanceError):
        Instance.identical([1], [1], 0, 0)
    with pytest.raises(InstanceError):
        Instance.identical([1], [1], 1, -1)
    with pytest.raises(InstanceError):
        Instance.uniform([1], [1], [0], 0)
    with pytest.raises(InstanceError):
        Instance.unrelated([[FORBIDDEN]], [[0]], 0)
    with pytest.raises(InstanceError):
        Instance.identical([FORBIDDEN], [0], 1, 0)


def test_uniform_access_rule():
    instance = Instance.uniform([2, 3], [1, 4], [1, 2], 1)
    assert instance.p_bar(1, 0) == 1
    assert instance.p_hat(1, 1) == 2
    assert instance.p_bar(0, 1) == 3


def test_values():
    assert to_value('3/6') == Fraction(1, 2)
    assert to_value(4) == 4
    assert to_value('inf', allow_forbidden=True) is FORBIDDEN
    assert to_value(' 3/4 ') == Fraction(3, 4)
    assert to_value('7') == 7
    for bad in ['-1', '-1/2', '+3', '1.5', '1e3', '1/2/3', '3/', '1/0', 'x', 0.5, True]:
        with pytest.raises(ValueError):
            to_value(bad)
    with pytest.raises(ValueError):
        to_value('inf')
    assert FORBIDDEN > Fraction(10 ** 9)
    assert FORBIDDEN + 3 is FORBIDDEN
    assert format_value(Fraction(6, 4)) == '3/2'
    assert format_value(FORBIDDEN) == 'inf'
    assert decimal_string(Fraction(1, 3)) == '0.333333'


def test_json_round_trip():
    rng = seeded(1)
    for _ in range(20):
        instance = random_instance(rng)
        text = instance.to_json()
        again = Instance.from_json(text)
        assert again == instance
        assert again.to_json() == text


def test_load_example(tmp_path):
    instance = Instance.load(EXAMPLE_INSTANCE)
    assert instance.kind == 'identical'
    assert instance.job_p_bar == (1, 2, Fraction(1, 2))
    path = tmp_path / 'copy.json'
    instance.save(str(path))
    assert Instance.load(str(path)) == instance
    with pytest.raises(InstanceError):
        Instance.from_json('{"kind": "identical", "gamma": 1, "jobs": []}')
    with pytest.raises(InstanceError):
        Instance.from_json('not json')


def test_lower_bounds():
    instance = Instance.identical([1, 2, 1], [3, 1, 0], 2, 1)
    assert trivial_lower_bound(instance) == 4
    assert average_lower_bound(instance) == 2


def test_objective_matches_scenario_enumeration():
    rng = seeded(2)
    for _ in range(500):
        instance = random_instance(rng, jobs=(1, 8), gamma=(0, 3))
        schedule = random_schedule(rng, instance)
        by_enumeration = max(scenario_makespan(instance, schedule, s)
                             for s in enumerate_scenarios(instance.job_count, instance.gamma))
        assert worst_case_makespan(instance, schedule) == by_enumeration


def test_extreme_budgets():
    rng = seeded(3)
    for _ in range(50):
        instance = random_instance(rng)
        schedule = random_schedule(rng, instance)
        loads = [Fraction(0)] * instance.machine_count
        full = [Fraction(0)] * instance.machine_count
        for j, i in enumerate(schedule):
            loads[i] += instance.p_bar(i, j)
            full[i] += instance.processing(i, j)
        assert worst_case_makespan(instance.with_gamma(0), schedule) == max(loads)
        assert worst_case_makespan(instance.with_gamma(instance.job_count), schedule) == max(full)


small_times = st.lists(st.tuples(st.fractions(min_value=0, max_value=10, max_denominator=6),
                                 st.fractions(min_value=0, max_value=10, max_denominator=6)),
                       min_size=1, max_size=7)


@settings(max_examples=100, deadline=None)
@given(jobs=small_times, gamma=st.integers(min_value=0, max_value=8), machines=st.integers(min_value=1, max_value=3),
       data=st.data())
def test_monotone_in_gamma(jobs, gamma, machines, data):
    instance = Instance.identical([p for p, _ in jobs], [h for _, h in jobs], machines, gamma)
    assignment = data.draw(st.lists(st.integers(0, machines - 1), min_size=len(jobs), max_size=len(jobs)))
    schedule = Schedule(assignment)
    value = worst_case_makespan(instance, schedule)
    assert worst_case_makespan(instance.with_gamma(gamma + 1), schedule) >= value
    assert worst_case_makespan(instance, schedule) == value


@settings(max_examples=100, deadline=None)
@given(jobs=small_times, gamma=st.integers(min_value=0, max_value=8))
def test_gamma_set_selects_largest(jobs, gamma):
    instance = one_machine(jobs, gamma)
    everything = set(range(len(jobs)))
    chosen = gamma_set(instance, 0, everything)
    assert len(chosen) == min(len(jobs), gamma)
    for j in chosen:
        for k in everything - chosen:
            assert instance.p_hat(0, j) >= instance.p_hat(0, k)
