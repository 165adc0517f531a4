"""
Classical makespan subroutines behind the dual approximation.

A subroutine with guarantee c, given a classical instance and a threshold T,
either accepts with a schedule of makespan at most c * T or rejects, certifying
that every schedule has makespan above T. Acceptances are re-evaluated here, so a
subroutine that breaks its promise raises ContractViolation instead of silently
weakening the search.
"""

import logging
from abc import ABC, abstractmethod
from fractions import Fraction

from robsched.models.common.constant import IDENTICAL, DEFAULT_BNB_JOB_LIMIT
from robsched.models.common.instance import InstanceError, Schedule
from robsched.models.common.outcome import Accept, Reject, SizeLimitExceeded, ContractViolation
from robsched.models.exact.search import BranchAndBound
from robsched.pipeline.solver import SolverRegisterException

logger = logging.getLogger('robsched')

SUBROUTINES = dict()


class CmaxSubroutine(ABC):
    """ Base class for classical makespan decision procedures """

    NAME = None
    GUARANTEE = Fraction(1)

    def __init__(self, config=None):
        self._config = config or {}

    @property
    def config(self):
        return self._config

    @property
    def guarantee(self):
        """ The factor c of the accept bound makespan <= c * T. """
        return Fraction(self.GUARANTEE)

    @abstractmethod
    def decide(self, classical, threshold):
        pass

    def __call__(self, classical, threshold):
        outcome = self.decide(classical, threshold)
        if outcome.accepted:
            makespan = classical.makespan(outcome.schedule)
            if makespan > self.guarantee * threshold:
                raise ContractViolation(self.NAME, f"accepted a schedule of makespan {makespan} > {self.guarantee} * {threshold}")
        return outcome


def register_subroutine(name):
    def wrapper(Cls):
        if not isinstance(Cls, type) or not issubclass(Cls, CmaxSubroutine):
            raise SolverRegisterException(Cls, CmaxSubroutine)

        Cls.NAME = name
        SUBROUTINES[name] = Cls
        return Cls
    return wrapper


def list_schedule_identical(classical, threshold):
    """ Greedy list scheduling on identical machines, in job index order.

    Rejects when a single job or the average load exceeds T; otherwise every job
    starts before T on the least loaded machine, so the makespan is at most 2T.
    """
    if classical.kind != IDENTICAL:
        raise InstanceError(f"list scheduling needs identical machines, got {classical.kind}")
    threshold = Fraction(threshold)
    times = classical.job_times
    m = classical.machine_count
    for job, p in enumerate(times):
        if p > threshold:
            return Reject(f"job {job} has processing time {p} > T = {threshold}")
    total = sum(times, Fraction(0))
    if total > m * threshold:
        return Reject(f"total load {total} exceeds {m} * T = {m * threshold}")

    loads = [Fraction(0)] * m
    assignment = []
    for p in times:
        machine = min(range(m), key=lambda i: (loads[i], i))
        loads[machine] += p
        assignment.append(machine)
    return Accept(Schedule(assignment), max(loads))


def exact_subroutine(classical, threshold, limit=None):
    """ Accept iff some schedule has makespan <= T, found by branch and bound. """
    limit = DEFAULT_BNB_JOB_LIMIT if limit is None else limit
    if classical.job_count > limit:
        raise SizeLimitExceeded('classical decision', classical.job_count, limit)
    threshold = Fraction(threshold)
    capacities = [threshold] * classical.machine_count
    engine = BranchAndBound(classical.matrix, capacities=capacities)
    assignment = engine.decide()
    if assignment is None:
        return Reject(f"no schedule of makespan <= {threshold} ({engine.nodes} nodes searched)")
    schedule = Schedule(assignment)
    return Accept(schedule, classical.makespan(schedule))


@register_subroutine('list')
class ListScheduleSubroutine(CmaxSubroutine):
    """ 2-approximate decisions for identical machines. """

    GUARANTEE = Fraction(2)

    def decide(self, classical, threshold):
        return list_schedule_identical(classical, threshold)


@register_subroutine('exact')
class ExactSubroutine(CmaxSubroutine):
    """ Exact decisions at desk scale. """

    GUARANTEE = Fraction(1)

    def decide(self, classical, threshold):
        return exact_subroutine(classical, threshold, limit=self.config.get('limit'))


def build_subroutine(name, config=None):
    if name not in SUBROUTINES:
        raise ValueError(f"Unknown subroutine {name!r}, expected one of {', '.join(sorted(SUBROUTINES))}")
    return SUBROUTINES[name](config)
