"""
Classical scheduling with machine types and per-machine capacities, and an exact
decision procedure for it.

The decision procedure either accepts with a schedule whose load on every machine is
at most (1 + slack) times its capacity, or rejects, proving that no schedule keeps
every load within capacity. Being exact, it never uses the slack.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Tuple

from robsched.models.common.constant import DEFAULT_BNB_JOB_LIMIT
from robsched.models.common.instance import InstanceError, Schedule, scale
from robsched.models.common.outcome import Accept, Reject, SizeLimitExceeded, ContractViolation
from robsched.models.common.value import FORBIDDEN, to_value
from robsched.models.exact.search import BranchAndBound

logger = logging.getLogger('robsched')


@dataclass(frozen=True)
class MachineType:
    """ `multiplicity` machines sharing one capacity and one processing time per job.

    `tag` is free for the builder of the instance, e.g. the threshold a type stands for.
    """

    multiplicity: int
    capacity: Fraction
    times: Tuple[Any, ...]
    tag: Any = None


class CapacitatedTypedInstance:
    """ A classical instance whose machines come in types, each machine with a capacity.

    Machines are numbered type-major: the machines of type 0 first, then type 1, ...
    """

    def __init__(self, types, job_count=None):
        self._types = tuple(self._check_type(t) for t in types)
        if not self._types:
            raise InstanceError("a capacitated instance needs at least one machine type")
        lengths = {len(t.times) for t in self._types}
        if len(lengths) != 1:
            raise InstanceError("every machine type must list one processing time per job")
        self._job_count = lengths.pop()
        if job_count is not None and job_count != self._job_count:
            raise InstanceError(f"expected {job_count} jobs, machine types list {self._job_count}")

    @staticmethod
    def _check_type(machine_type):
        if isinstance(machine_type.multiplicity, bool) or not isinstance(machine_type.multiplicity, int) \
                or machine_type.multiplicity < 0:
            raise InstanceError(f"type multiplicity must be a non-negative integer, got {machine_type.multiplicity!r}")
        try:
            capacity = to_value(machine_type.capacity)
            times = tuple(to_value(p, allow_forbidden=True) for p in machine_type.times)
        except ValueError as e:
            raise InstanceError(str(e))
        if capacity <= 0:
            raise InstanceError("machine capacities must be positive")
        return MachineType(machine_type.multiplicity, capacity, times, machine_type.tag)

    @property
    def types(self):
        return self._types

    @property
    def type_count(self):
        return len(self._types)

    @property
    def job_count(self):
        return self._job_count

    @property
    def machine_count(self):
        return sum(t.multiplicity for t in self._types)

    def machine_types(self):
        """ The type index of every machine. """
        return [k for k, t in enumerate(self._types) for _ in range(t.multiplicity)]

    def capacities(self):
        return [self._types[k].capacity for k in self.machine_types()]

    def time(self, machine_type, job):
        return self._types[machine_type].times[job]

    def loads(self, schedule):
        """ Load of every machine under `schedule`; FORBIDDEN where a job may not run. """
        kinds = self.machine_types()
        loads = [Fraction(0)] * len(kinds)
        for job, machine in enumerate(schedule):
            loads[machine] = loads[machine] + self.time(kinds[machine], job)
        return loads

    def scaled(self, factor):
        """ The same instance with every capacity and processing time multiplied by `factor`. """
        factor = Fraction(factor)
        return CapacitatedTypedInstance([
            MachineType(t.multiplicity, t.capacity * factor, tuple(scale(p, factor) for p in t.times), t.tag)
            for t in self._types])

    def __repr__(self):
        return f"<CapacitatedTypedInstance types={self.type_count};machines={self.machine_count};jobs={self.job_count}>"


def within_capacity(cti, schedule, slack=0):
    """ True when every load is at most (1 + slack) times the machine's capacity. """
    if len(schedule) != cti.job_count:
        return False
    if any(not 0 <= machine < cti.machine_count for machine in schedule):
        return False
    factor = 1 + Fraction(slack)
    return all(load is not FORBIDDEN and load <= factor * capacity
               for load, capacity in zip(cti.loads(schedule), cti.capacities()))


def capacity_decision_exact(cti, slack=0, limit=None):
    """ Accept a schedule with every load <= capacity, or reject when none exists. """
    limit = DEFAULT_BNB_JOB_LIMIT if limit is None else limit
    if cti.job_count > limit:
        raise SizeLimitExceeded('capacity decision', cti.job_count, limit)
    kinds = cti.machine_types()
    if not kinds:
        return Reject("no machines")
    for job in range(cti.job_count):
        if all(cti.time(k, job) is FORBIDDEN for k in set(kinds)):
            return Reject(f"job {job} is forbidden on every machine type")

    nominal = tuple(cti.types[k].times for k in kinds)
    engine = BranchAndBound(nominal, capacities=cti.capacities())
    assignment = engine.decide()
    if assignment is None:
        return Reject(f"exhaustive search over {engine.nodes} nodes found no schedule within capacities")
    schedule = Schedule(assignment)
    if not within_capacity(cti, schedule, slack):
        raise ContractViolation('capacity_decision_exact', f"schedule {schedule} exceeds the capacities")
    return Accept(schedule)
