"""
Evaluation of the robust objective.

For a fixed set of jobs on one machine the adversary's best answer is to let the
`gamma` jobs with the largest deviations deviate, so the worst-case load is the
nominal load plus those deviations. The makespan is the largest such load.
"""

from fractions import Fraction

from robsched.models.common.instance import ScheduleError, ScenarioError, Schedule
from robsched.models.common.value import FORBIDDEN


def gamma_set(instance, machine, jobs):
    """ The jobs of `jobs` that deviate in the worst case on `machine`.

    Largest deviations first, ties broken by the smaller job index. When no more
    than `gamma` jobs are given, all of them deviate.
    """
    instance.check_machine(machine)
    jobs = sorted(jobs)
    if len(jobs) <= instance.gamma:
        return set(jobs)
    # sorted() is stable with reverse=True, so equal deviations keep index order
    ordered = sorted(jobs, key=lambda j: instance.p_hat(machine, j), reverse=True)
    return set(ordered[:instance.gamma])


def worst_case_load(instance, machine, jobs):
    """ Nominal load of `jobs` on `machine` plus their `gamma` largest deviations.

    FORBIDDEN when one of the jobs cannot run on the machine.
    """
    instance.check_machine(machine)
    jobs = list(jobs)
    if any(not instance.is_allowed(machine, j) for j in jobs):
        return FORBIDDEN
    nominal = sum((instance.p_bar(machine, j) for j in jobs), Fraction(0))
    deviation = sum((instance.p_hat(machine, j) for j in gamma_set(instance, machine, jobs)), Fraction(0))
    return nominal + deviation


def validate(instance, schedule):
    """ Check a schedule against an instance.

    Returns None when the schedule is valid, otherwise a description of the first violation.
    """
    assignment = schedule.assignment if isinstance(schedule, Schedule) else tuple(schedule)
    if len(assignment) != instance.job_count:
        return f"assignment has length {len(assignment)} but the instance has {instance.job_count} jobs"
    for job, machine in enumerate(assignment):
        if isinstance(machine, bool) or not isinstance(machine, int) or not 0 <= machine < instance.machine_count:
            return f"job {job} is assigned to machine {machine!r}, outside [0, {instance.machine_count})"
        if not instance.is_allowed(machine, job):
            return f"job {job} is assigned to machine {machine} where its processing time is forbidden"
    return None


def _check_schedule(instance, schedule):
    violation = validate(instance, schedule)
    if violation is not None:
        raise ScheduleError(violation)


def machine_loads(instance, schedule):
    """ Worst-case load of every machine under `schedule`. """
    _check_schedule(instance, schedule)
    return [worst_case_load(instance, i, jobs) for i, jobs in enumerate(schedule.machine_jobs(instance.machine_count))]


def worst_case_makespan(instance, schedule):
    """ The robust objective: the largest worst-case machine load. Empty machines count 0. """
    return max(machine_loads(instance, schedule))


def scenario_makespan(instance, schedule, scenario):
    """ Makespan when exactly the jobs of `scenario` deviate. """
    _check_schedule(instance, schedule)
    if len(scenario.deviating) > instance.gamma:
        raise ScenarioError(f"{len(scenario.deviating)} deviating jobs exceed the budget gamma={instance.gamma}")
    unknown = [j for j in scenario.deviating if not 0 <= j < instance.job_count]
    if unknown:
        raise ScenarioError(f"unknown jobs {sorted(unknown)}")
    loads = [Fraction(0)] * instance.machine_count
    for job, machine in enumerate(schedule.assignment):
        loads[machine] += instance.p_bar(machine, job)
        if job in scenario.deviating:
            loads[machine] += instance.p_hat(machine, job)
    return max(loads)


def trivial_lower_bound(instance):
    """ Every job alone on its best machine: max_j min_i C_gamma({j}). """
    best = Fraction(0)
    for j in range(instance.job_count):
        alone = min(worst_case_load(instance, i, [j]) for i in range(instance.machine_count))
        best = max(best, alone)
    return best


def average_lower_bound(instance):
    """ Sum over jobs of the smallest nominal time, spread over all machines. """
    total = Fraction(0)
    for j in range(instance.job_count):
        total += min(instance.p_bar(i, j) for i in range(instance.machine_count) if instance.is_allowed(i, j))
    return total / instance.machine_count
