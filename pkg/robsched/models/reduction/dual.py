"""
Dual approximation for robust makespan minimisation.

A dual procedure, given a threshold T, either returns a schedule whose
worst-case makespan is at most `guarantee * T` or rejects, certifying OPT > T.
`binary_search_solve` turns any such procedure into an approximation algorithm
with ratio `guarantee * (1 + delta)` by a geometric search over T.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List

from robsched.models.common.instance import Schedule
from robsched.models.common.objective import worst_case_load, worst_case_makespan, \
    trivial_lower_bound, average_lower_bound
from robsched.models.common.outcome import Accept, Reject, ContractViolation
from robsched.models.common.value import FORBIDDEN, to_value
from robsched.models.reduction.classical import build_classical
from robsched.models.reduction.subroutine import CmaxSubroutine

logger = logging.getLogger('robsched')


def _positive(value, name):
    try:
        value = to_value(value)
    except ValueError as e:
        raise ValueError(f"{name}: {e}")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def greedy_schedule(instance):
    """ Every job, in index order, onto the machine minimising its resulting worst-case load. """
    jobs = [[] for _ in range(instance.machine_count)]
    loads = [Fraction(0)] * instance.machine_count
    assignment = []
    for job in range(instance.job_count):
        best_machine, best_load = None, FORBIDDEN
        for machine in range(instance.machine_count):
            if not instance.is_allowed(machine, job):
                continue
            load = worst_case_load(instance, machine, jobs[machine] + [job])
            if best_machine is None or load < best_load:
                best_machine, best_load = machine, load
        jobs[best_machine].append(job)
        loads[best_machine] = best_load
        assignment.append(best_machine)
    return Schedule(assignment), max(loads)


def dual_step(instance, threshold, subroutine):
    """ Accept with worst-case makespan <= (c + 1) * T, or reject certifying OPT > T.

    The subroutine (guarantee c) runs on the classical instance at T. If OPT <= T,
    an optimal robust schedule has makespan <= T there, so a rejection
    proves OPT > T; an accepted schedule loses at most T under the robust objective.
    """
    threshold = _positive(threshold, 'threshold')
    lower = trivial_lower_bound(instance)
    if threshold < lower:
        return Reject(f"T = {threshold} is below the single-job lower bound {lower}")

    classical = build_classical(instance, threshold)
    outcome = subroutine(classical, threshold)
    if not outcome.accepted:
        return Reject(f"classical instance rejected at T = {threshold}: {outcome.certificate}")

    value = worst_case_makespan(instance, outcome.schedule)
    bound = (subroutine.guarantee + 1) * threshold
    if value > bound:
        raise ContractViolation('dual_step', f"worst-case makespan {value} exceeds {bound}")
    return Accept(outcome.schedule, value)


class ReductionDual:
    """ The dual procedure obtained from a classical subroutine through the threshold transformation. """

    def __init__(self, subroutine):
        self.subroutine = subroutine

    @property
    def name(self):
        return f"reduction[{self.subroutine.NAME}]"

    @property
    def guarantee(self):
        return self.subroutine.guarantee + 1

    def __call__(self, instance, threshold):
        return dual_step(instance, threshold, self.subroutine)


@dataclass(frozen=True)
class SearchStep:
    index: int
    threshold: Fraction
    accepted: bool
    value: Any = None


@dataclass
class SearchResult:
    """ Outcome of `binary_search_solve`.

    `value` is the worst-case makespan of `schedule`; `threshold` is the smallest
    accepted threshold (the upper bound when nothing was accepted) and `rejected`
    the largest rejected one, if any.
    """

    schedule: Schedule
    value: Fraction
    threshold: Fraction
    rejected: Any
    lower: Fraction
    upper: Fraction
    guarantee: Fraction
    steps: List[SearchStep] = field(default_factory=list)

    @property
    def iterations(self):
        return len(self.steps)


def search_bounds(instance):
    """ Lower and upper bounds on OPT, and the greedy schedule attaining the upper one. """
    greedy, upper = greedy_schedule(instance)
    if instance.machine_count == 1:
        # the only schedule
        return upper, upper, greedy
    lower = max(trivial_lower_bound(instance), average_lower_bound(instance))
    return min(lower, upper), upper, greedy


def grid_size(lower, upper, delta):
    """ Smallest k with lower * (1 + delta)^k >= upper. """
    k, point = 0, lower
    while point < upper:
        point *= 1 + delta
        k += 1
    return k


def binary_search_solve(instance, procedure, delta=Fraction(1, 100)):
    """ Approximate the robust optimum with a dual procedure or a classical subroutine.

    Thresholds lie on the grid T_k = LB * (1 + delta)^k, k = 0..K, with K the smallest
    index reaching the greedy upper bound UB. The search keeps the smallest accepted
    index (K stands for the greedy schedule) and the largest rejected one and stops
    when they are adjacent, so the returned value is at most
    `guarantee * (1 + delta) * OPT`.
    """
    delta = _positive(delta, 'delta')
    if isinstance(procedure, CmaxSubroutine):
        procedure = ReductionDual(procedure)
    guarantee = Fraction(procedure.guarantee)

    lower, upper, greedy = search_bounds(instance)
    if upper == 0 or lower == upper:
        logger.debug(f"Search bounds coincide at {upper}, returning the greedy schedule")
        return SearchResult(greedy, upper, upper, None, lower, upper, guarantee)

    top = grid_size(lower, upper, delta)
    best_schedule, best_value = greedy, upper
    low, high = -1, top
    steps = []
    while high - low > 1:
        mid = (low + high) // 2
        threshold = lower * (1 + delta) ** mid
        outcome = procedure(instance, threshold)
        steps.append(SearchStep(mid, threshold, outcome.accepted, outcome.value if outcome.accepted else None))
        logger.debug(f"Probe T_{mid} = {float(threshold):.6f}: {'accept' if outcome.accepted else 'reject'}")
        if outcome.accepted:
            high = mid
            if outcome.value < best_value:
                best_schedule, best_value = outcome.schedule, outcome.value
        else:
            low = mid

    value = worst_case_makespan(instance, best_schedule)
    accepted = lower * (1 + delta) ** high if high < top else upper
    rejected = lower * (1 + delta) ** low if low >= 0 else None
    logger.info(f"Search finished after {len(steps)} probes: rejected {rejected}, accepted {accepted}, value {value}")
    return SearchResult(best_schedule, value, accepted, rejected, lower, upper, guarantee, steps)
