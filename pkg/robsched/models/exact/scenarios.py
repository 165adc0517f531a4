"""
Scenario enumeration and the exhaustive adversary.
"""

import itertools

from robsched.models.common.constant import DEFAULT_SCENARIO_LIMIT
from robsched.models.common.instance import Scenario, ScheduleError
from robsched.models.common.objective import scenario_makespan, validate
from robsched.models.common.outcome import SizeLimitExceeded


def enumerate_scenarios(n, gamma, limit=None):
    """ Yield every subset of [0, n) with at most `gamma` elements, exactly once.

    Subsets come by increasing size, lexicographically within a size.
    """
    limit = DEFAULT_SCENARIO_LIMIT if limit is None else limit
    if n > limit:
        raise SizeLimitExceeded('scenario enumeration', n, limit)
    for size in range(min(gamma, n) + 1):
        for deviating in itertools.combinations(range(n), size):
            yield Scenario(frozenset(deviating))


def adversary_argmax(instance, schedule, limit=None):
    """ The first enumerated scenario attaining the worst-case makespan, with its value. """
    violation = validate(instance, schedule)
    if violation is not None:
        raise ScheduleError(violation)
    best_scenario, best_value = None, None
    for scenario in enumerate_scenarios(instance.job_count, instance.gamma, limit=limit):
        value = scenario_makespan(instance, schedule, scenario)
        if best_value is None or value > best_value:
            best_scenario, best_value = scenario, value
    return best_scenario, best_value
