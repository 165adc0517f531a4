"""
Basic data structures: robust scheduling instances, schedules and scenarios.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from robsched.models.common.constant import IDENTICAL, UNIFORM, UNRELATED, MACHINE_KINDS
from robsched.models.common.value import FORBIDDEN, to_value, format_value


class InstanceError(ValueError):
    """ Exception indicating malformed instance data. """

    def __init__(self, reason):
        self.reason = reason
        self.build_message()

    def build_message(self):
        self.message = f"Invalid instance: {self.reason}"

    def __str__(self):
        return self.message


class ScheduleError(ValueError):
    """ Exception indicating a schedule that does not fit its instance. """

    def __init__(self, violation):
        self.violation = violation
        self.build_message()

    def build_message(self):
        self.message = f"Invalid schedule: {self.violation}"

    def __str__(self):
        return self.message


class ScenarioError(ValueError):
    """ Exception indicating a scenario outside the budgeted uncertainty set. """

    def __init__(self, violation):
        self.violation = violation
        self.build_message()

    def build_message(self):
        self.message = f"Invalid scenario: {self.violation}"

    def __str__(self):
        return self.message


def _freeze_vector(raw, name, allow_forbidden=False):
    try:
        return tuple(to_value(x, allow_forbidden=allow_forbidden) for x in raw)
    except ValueError as e:
        raise InstanceError(f"{name}: {e}")


class Instance:
    """ An instance of robust makespan minimisation under budgeted uncertainty.

    Processing times are exposed uniformly as m x n matrices, whatever the machine
    environment; identical and uniform instances also keep their per-job vectors.
    Instances are immutable.
    """

    def __init__(self, kind, gamma, p_bar_rows, p_hat_rows, job_p_bar=None, job_p_hat=None, speeds=None):
        if kind not in MACHINE_KINDS:
            raise InstanceError(f"unknown machine kind {kind!r}, expected one of {', '.join(MACHINE_KINDS)}")
        if isinstance(gamma, bool) or not isinstance(gamma, int) or gamma < 0:
            raise InstanceError(f"gamma must be a non-negative integer, got {gamma!r}")
        self._kind = kind
        self._gamma = gamma
        self._p_bar_rows = p_bar_rows
        self._p_hat_rows = p_hat_rows
        self._job_p_bar = job_p_bar
        self._job_p_hat = job_p_hat
        self._speeds = speeds
        self._check()

    @classmethod
    def identical(cls, p_bar, p_hat, machine_count, gamma):
        """ Build an instance on `machine_count` identical machines. """
        job_p_bar = _freeze_vector(p_bar, 'p_bar')
        job_p_hat = _freeze_vector(p_hat, 'p_hat')
        if isinstance(machine_count, bool) or not isinstance(machine_count, int) or machine_count < 1:
            raise InstanceError(f"machine count must be a positive integer, got {machine_count!r}")
        rows_bar = tuple(job_p_bar for _ in range(machine_count))
        rows_hat = tuple(job_p_hat for _ in range(machine_count))
        return cls(IDENTICAL, gamma, rows_bar, rows_hat, job_p_bar=job_p_bar, job_p_hat=job_p_hat)

    @classmethod
    def uniform(cls, p_bar, p_hat, speeds, gamma):
        """ Build an instance on uniform machines: p_ij = p_j / s_i. """
        job_p_bar = _freeze_vector(p_bar, 'p_bar')
        job_p_hat = _freeze_vector(p_hat, 'p_hat')
        speeds = _freeze_vector(speeds, 'speeds')
        if any(s == 0 for s in speeds):
            raise InstanceError("machine speeds must be positive")
        rows_bar = tuple(tuple(p / s for p in job_p_bar) for s in speeds)
        rows_hat = tuple(tuple(p / s for p in job_p_hat) for s in speeds)
        return cls(UNIFORM, gamma, rows_bar, rows_hat, job_p_bar=job_p_bar, job_p_hat=job_p_hat, speeds=speeds)

    @classmethod
    def unrelated(cls, p_bar_matrix, p_hat_matrix, gamma):
        """ Build an instance on unrelated machines from m x n matrices; entries may be FORBIDDEN. """
        rows_bar = tuple(_freeze_vector(row, 'p_bar_matrix', allow_forbidden=True) for row in p_bar_matrix)
        rows_hat = tuple(_freeze_vector(row, 'p_hat_matrix', allow_forbidden=True) for row in p_hat_matrix)
        return cls(UNRELATED, gamma, rows_bar, rows_hat)

    def _check(self):
        if len(self._p_bar_rows) < 1:
            raise InstanceError("at least one machine is required")
        if len(self._p_bar_rows) != len(self._p_hat_rows):
            raise InstanceError("p_bar and p_hat disagree on the number of machines")
        n = len(self._p_bar_rows[0])
        if n < 1:
            raise InstanceError("at least one job is required")
        for row_bar, row_hat in zip(self._p_bar_rows, self._p_hat_rows):
            if len(row_bar) != n or len(row_hat) != n:
                raise InstanceError("every machine row must list one entry per job")
        for j in range(n):
            if not any(self.is_allowed(i, j) for i in range(len(self._p_bar_rows))):
                raise InstanceError(f"job {j} is forbidden on every machine")

    @property
    def kind(self):
        return self._kind

    @property
    def gamma(self):
        """ Maximum number of jobs deviating simultaneously. """
        return self._gamma

    @property
    def job_count(self):
        return len(self._p_bar_rows[0])

    @property
    def machine_count(self):
        return len(self._p_bar_rows)

    @property
    def speeds(self):
        """ Machine speeds of a uniform instance, None otherwise. """
        return self._speeds

    @property
    def job_p_bar(self):
        """ Per-job nominal times (identical and uniform instances only). """
        return self._job_p_bar

    @property
    def job_p_hat(self):
        """ Per-job deviations (identical and uniform instances only). """
        return self._job_p_hat

    @property
    def p_bar_matrix(self):
        return self._p_bar_rows

    @property
    def p_hat_matrix(self):
        return self._p_hat_rows

    def check_machine(self, machine):
        if isinstance(machine, bool) or not isinstance(machine, int) or not 0 <= machine < self.machine_count:
            raise InstanceError(f"machine index {machine!r} out of range [0, {self.machine_count})")

    def p_bar(self, machine, job):
        return self._p_bar_rows[machine][job]

    def p_hat(self, machine, job):
        return self._p_hat_rows[machine][job]

    def processing(self, machine, job):
        """ Deviated processing time p_bar + p_hat of `job` on `machine`. """
        return self._p_bar_rows[machine][job] + self._p_hat_rows[machine][job]

    def is_allowed(self, machine, job):
        return self._p_bar_rows[machine][job] is not FORBIDDEN and self._p_hat_rows[machine][job] is not FORBIDDEN

    def with_gamma(self, gamma):
        """ The same jobs and machines under another deviation budget. """
        return Instance(self._kind, gamma, self._p_bar_rows, self._p_hat_rows,
                        job_p_bar=self._job_p_bar, job_p_hat=self._job_p_hat, speeds=self._speeds)

    def to_dict(self):
        data = {'kind': self.kind, 'gamma': self.gamma}
        if self.kind == UNRELATED:
            data['p_bar_matrix'] = [[format_value(x) for x in row] for row in self._p_bar_rows]
            data['p_hat_matrix'] = [[format_value(x) for x in row] for row in self._p_hat_rows]
        else:
            data['jobs'] = [{'p_bar': format_value(b), 'p_hat': format_value(h)}
                            for b, h in zip(self._job_p_bar, self._job_p_hat)]
            if self.kind == UNIFORM:
                data['speeds'] = [format_value(s) for s in self._speeds]
            else:
                data['machines'] = self.machine_count
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            kind = data['kind']
            gamma = data['gamma']
            if kind == UNRELATED:
                return cls.unrelated(data['p_bar_matrix'], data['p_hat_matrix'], gamma)
            p_bar = [job['p_bar'] for job in data['jobs']]
            p_hat = [job['p_hat'] for job in data['jobs']]
        except (KeyError, TypeError) as e:
            raise InstanceError(f"missing or malformed field: {e}")
        if kind == UNIFORM:
            if 'speeds' not in data:
                raise InstanceError("uniform instances need a 'speeds' list")
            return cls.uniform(p_bar, p_hat, data['speeds'], gamma)
        if kind == IDENTICAL:
            if 'machines' not in data:
                raise InstanceError("identical instances need a 'machines' count")
            return cls.identical(p_bar, p_hat, data['machines'], gamma)
        raise InstanceError(f"unknown machine kind {kind!r}")

    def to_json(self):
        """ Deterministic serialisation: equal instances give byte-identical text. """
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + '\n'

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InstanceError(f"not valid JSON: {e}")
        return cls.from_dict(data)

    def save(self, path):
        with open(path, 'w') as fout:
            fout.write(self.to_json())

    @classmethod
    def load(cls, path):
        with open(path) as fin:
            return cls.from_json(fin.read())

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self._kind, self._gamma, self._p_bar_rows, self._p_hat_rows, self._speeds) == \
            (other._kind, other._gamma, other._p_bar_rows, other._p_hat_rows, other._speeds)

    def __hash__(self):
        return hash((self._kind, self._gamma, self._p_bar_rows, self._p_hat_rows))

    def __repr__(self):
        return f"<Instance kind={self.kind};jobs={self.job_count};machines={self.machine_count};gamma={self.gamma}>"


class Schedule:
    """ A total assignment of jobs (by index) to machines (by index). """

    def __init__(self, assignment):
        self._assignment = tuple(assignment)

    @property
    def assignment(self):
        return self._assignment

    @property
    def job_count(self):
        return len(self._assignment)

    def machine_jobs(self, machine_count):
        """ The jobs of every machine, each list in increasing job order. """
        jobs = [[] for _ in range(machine_count)]
        for job, machine in enumerate(self._assignment):
            jobs[machine].append(job)
        return jobs

    def to_dict(self):
        return {'assignment': list(self._assignment)}

    @classmethod
    def from_dict(cls, data):
        try:
            assignment = data['assignment']
        except (KeyError, TypeError):
            raise ScheduleError("schedule data needs an 'assignment' list")
        if not isinstance(assignment, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in assignment):
            raise ScheduleError("'assignment' must be a list of machine indices")
        return cls(assignment)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True) + '\n'

    @classmethod
    def load(cls, path):
        with open(path) as fin:
            try:
                return cls.from_dict(json.load(fin))
            except json.JSONDecodeError as e:
                raise ScheduleError(f"not valid JSON: {e}")

    def __len__(self):
        return len(self._assignment)

    def __getitem__(self, job):
        return self._assignment[job]

    def __iter__(self):
        return iter(self._assignment)

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return self._assignment == other._assignment

    def __hash__(self):
        return hash(self._assignment)

    def __repr__(self):
        return f"<Schedule {list(self._assignment)}>"


@dataclass(frozen=True)
class Scenario:
    """ The set of jobs taking their deviated processing time. """

    deviating: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'deviating', frozenset(self.deviating))

    def __len__(self):
        return len(self.deviating)

    def __contains__(self, job):
        return job in self.deviating


def scale(value, factor):
    """ Multiply a Value by a positive rational, keeping FORBIDDEN. """
    if value is FORBIDDEN:
        return FORBIDDEN
    return value * Fraction(factor)
