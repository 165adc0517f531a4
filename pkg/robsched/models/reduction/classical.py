"""
Classical (non-robust) makespan instances and the threshold transformation that
turns a robust instance into one.

For a threshold T the jobs whose deviation on machine i exceeds T / gamma are
"big" on i: they are charged p_bar + p_hat there, every other job only p_bar.
A schedule of the robust instance with worst-case makespan at most T is a
schedule of the classical instance with makespan at most T, and any schedule of
the classical instance loses at most T when evaluated under the robust objective.
"""

from fractions import Fraction

from robsched.models.common.constant import IDENTICAL, UNIFORM, UNRELATED
from robsched.models.common.instance import InstanceError, ScheduleError
from robsched.models.common.value import FORBIDDEN, to_value


class ClassicalInstance:
    """ An m x n processing matrix, tagged with the machine environment it came from.

    For identical instances every row is the same; for uniform instances
    `job_times[j] / speeds[i]` reproduces entry (i, j).
    """

    def __init__(self, kind, matrix, speeds=None, job_times=None):
        if kind not in (IDENTICAL, UNIFORM, UNRELATED):
            raise InstanceError(f"unknown machine kind {kind!r}")
        self._kind = kind
        self._matrix = tuple(tuple(to_value(p, allow_forbidden=True) for p in row) for row in matrix)
        self._speeds = speeds
        self._job_times = job_times
        if not self._matrix or not self._matrix[0]:
            raise InstanceError("a classical instance needs at least one machine and one job")
        if len({len(row) for row in self._matrix}) != 1:
            raise InstanceError("every machine row must list one entry per job")

    @property
    def kind(self):
        return self._kind

    @property
    def matrix(self):
        return self._matrix

    @property
    def speeds(self):
        return self._speeds

    @property
    def job_times(self):
        return self._job_times

    @property
    def machine_count(self):
        return len(self._matrix)

    @property
    def job_count(self):
        return len(self._matrix[0])

    def time(self, machine, job):
        return self._matrix[machine][job]

    def loads(self, schedule):
        if len(schedule) != self.job_count:
            raise ScheduleError(f"assignment has length {len(schedule)} but the instance has {self.job_count} jobs")
        loads = [Fraction(0)] * self.machine_count
        for job, machine in enumerate(schedule):
            if not 0 <= machine < self.machine_count:
                raise ScheduleError(f"job {job} is assigned to machine {machine}, outside [0, {self.machine_count})")
            loads[machine] = loads[machine] + self._matrix[machine][job]
        return loads

    def makespan(self, schedule):
        """ Largest machine load; FORBIDDEN if a job sits where it may not run. """
        return max(self.loads(schedule))

    def __repr__(self):
        return f"<ClassicalInstance kind={self.kind};jobs={self.job_count};machines={self.machine_count}>"


def _big(p_hat, threshold):
    return p_hat is not FORBIDDEN and p_hat > threshold


def build_classical(instance, threshold):
    """ The classical instance at threshold T: p_ij = p_bar_ij + p_hat_ij if p_hat_ij > T / gamma, else p_bar_ij.

    The comparison is strict, so a deviation equal to T / gamma stays small. With
    gamma = 0 nothing deviates and p_ij = p_bar_ij.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError(f"Threshold must be positive, got {threshold}")
    m, n = instance.machine_count, instance.job_count
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            p_bar, p_hat = instance.p_bar(i, j), instance.p_hat(i, j)
            if p_bar is FORBIDDEN or p_hat is FORBIDDEN:
                row.append(FORBIDDEN)
            elif instance.gamma > 0 and _big(p_hat, threshold / instance.gamma):
                row.append(p_bar + p_hat)
            else:
                row.append(p_bar)
        rows.append(tuple(row))

    if instance.kind == IDENTICAL:
        return ClassicalInstance(IDENTICAL, rows, job_times=rows[0])
    if instance.kind == UNIFORM:
        # the big sets differ between machines of different speeds, so the result is
        # uniform only when every job ends up with one speed-independent size
        sizes = [{rows[i][j] * instance.speeds[i] for i in range(m)} for j in range(n)]
        if all(len(s) == 1 for s in sizes):
            return ClassicalInstance(UNIFORM, rows, speeds=instance.speeds,
                                     job_times=tuple(s.pop() for s in sizes))
    return ClassicalInstance(UNRELATED, rows)
