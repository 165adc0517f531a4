"""
Exact optimisation by enumeration and by branch and bound.

`BranchAndBound` works on raw m x n matrices so the same engine answers the robust
optimisation question (minimise the worst-case makespan), the classical decision
question (is there a schedule with makespan <= T) and the capacitated decision
question (is there a schedule with load <= c_i on every machine i).
"""

import itertools
import logging
from fractions import Fraction

from robsched.models.common.constant import DEFAULT_BRUTEFORCE_LIMIT
from robsched.models.common.instance import Schedule
from robsched.models.common.objective import worst_case_load
from robsched.models.common.outcome import SizeLimitExceeded
from robsched.models.common.value import FORBIDDEN

logger = logging.getLogger('robsched')


class _Stop(Exception):
    pass


class BranchAndBound:
    """ Depth-first search over job-to-machine assignments.

    Jobs are branched on in order of their largest finite processing time, descending
    (ties by index). Machines whose rows (and capacities) coincide are interchangeable:
    a job may open an empty machine of such a group only if it is the lowest-indexed
    empty machine of the group. A branch is cut as soon as a partial worst-case load
    reaches the incumbent (optimisation) or exceeds its capacity (decision).
    """

    def __init__(self, nominal, deviation=None, gamma=0, capacities=None):
        self.nominal = nominal
        self.machine_count = len(nominal)
        self.job_count = len(nominal[0])
        self.deviation = deviation if deviation is not None else \
            tuple(tuple(Fraction(0) for _ in range(self.job_count)) for _ in range(self.machine_count))
        self.gamma = gamma
        self.capacities = capacities
        self.nodes = 0

        self.allowed = [[i for i in range(self.machine_count) if self._is_allowed(i, j)]
                        for j in range(self.job_count)]
        self.order = sorted(range(self.job_count), key=lambda j: (-self._max_time(j), j))

        signature = {}
        self.group = []
        for i in range(self.machine_count):
            key = (self.nominal[i], self.deviation[i], None if capacities is None else capacities[i])
            self.group.append(signature.setdefault(key, len(signature)))

    def _is_allowed(self, machine, job):
        return self.nominal[machine][job] is not FORBIDDEN and self.deviation[machine][job] is not FORBIDDEN

    def _max_time(self, job):
        times = [self.nominal[i][job] + self.deviation[i][job] for i in self.allowed[job]]
        return max(times) if times else Fraction(0)

    def _min_nominal(self, job):
        return min(self.nominal[i][job] for i in self.allowed[job])

    def _place(self, state, machine, job):
        """ Nominal sum, top deviations and load of `machine` after adding `job`. """
        nominal, top = state[machine]
        nominal = nominal + self.nominal[machine][job]
        if self.gamma > 0:
            top = tuple(sorted(top + (self.deviation[machine][job],), reverse=True)[:self.gamma])
        return nominal, top, nominal + sum(top, Fraction(0))

    def _candidates(self, state, counts, job):
        opened = set()
        for machine in self.allowed[job]:
            if counts[machine] == 0:
                if self.group[machine] in opened:
                    continue
                opened.add(self.group[machine])
            yield machine

    def _blocked(self, state, k, exceeds):
        """ True when some job from position `k` on has no machine where `exceeds(machine, load)` is false. """
        for job in self.order[k:]:
            if all(exceeds(machine, self._place(state, machine, job)[2]) for machine in self.allowed[job]):
                return True
        return False

    def single_job_bound(self):
        """ max_j min_i of the load of j alone on i; a lower bound on any makespan. """
        best = Fraction(0)
        empty = [(Fraction(0), ())] * self.machine_count
        for j in range(self.job_count):
            best = max(best, min(self._place(empty, i, j)[2] for i in self.allowed[j]))
        return best

    def greedy(self):
        """ Each job in search order onto the machine with the smallest resulting load. """
        state = [(Fraction(0), ())] * self.machine_count
        loads = [Fraction(0)] * self.machine_count
        assignment = [None] * self.job_count
        for job in self.order:
            best = None
            for machine in self.allowed[job]:
                placed = self._place(state, machine, job)
                if best is None or placed[2] < best[1][2]:
                    best = (machine, placed)
            machine, placed = best
            state[machine] = placed[:2]
            loads[machine] = placed[2]
            assignment[job] = machine
        return tuple(assignment), max(loads)

    def minimize(self):
        """ An assignment of smallest makespan, with that makespan. """
        if any(not allowed for allowed in self.allowed):
            return None, FORBIDDEN
        best_assignment, best_value = self.greedy()
        lower = self.single_job_bound()
        incumbent = {'assignment': best_assignment, 'value': best_value}
        if best_value <= lower:
            return best_assignment, best_value

        state = [(Fraction(0), ())] * self.machine_count
        counts = [0] * self.machine_count
        assignment = [None] * self.job_count

        def dfs(k, current):
            self.nodes += 1
            if k == self.job_count:
                incumbent['assignment'], incumbent['value'] = tuple(assignment), current
                if current <= lower:
                    raise _Stop()
                return
            if self._blocked(state, k, lambda machine, load: load >= incumbent['value']):
                return
            job = self.order[k]
            options = []
            for machine in self._candidates(state, counts, job):
                placed = self._place(state, machine, job)
                if max(current, placed[2]) < incumbent['value']:
                    options.append((placed[2], machine, placed))
            options.sort(key=lambda x: (x[0], x[1]))
            for _, machine, placed in options:
                if max(current, placed[2]) >= incumbent['value']:
                    continue
                saved = state[machine]
                state[machine] = placed[:2]
                counts[machine] += 1
                assignment[job] = machine
                dfs(k + 1, max(current, placed[2]))
                assignment[job] = None
                counts[machine] -= 1
                state[machine] = saved

        try:
            dfs(0, Fraction(0))
        except _Stop:
            pass
        logger.debug(f"Branch and bound explored {self.nodes} nodes")
        return incumbent['assignment'], incumbent['value']

    def decide(self):
        """ An assignment with load <= capacity on every machine, or None if none exists. """
        assert self.capacities is not None, "decide() needs machine capacities"
        if any(not allowed for allowed in self.allowed):
            return None
        # suffix sums of the cheapest nominal contribution of the remaining jobs
        remaining = [Fraction(0)] * (self.job_count + 1)
        for k in range(self.job_count - 1, -1, -1):
            remaining[k] = remaining[k + 1] + self._min_nominal(self.order[k])

        state = [(Fraction(0), ())] * self.machine_count
        loads = [Fraction(0)] * self.machine_count
        counts = [0] * self.machine_count
        assignment = [None] * self.job_count
        found = {}

        def dfs(k):
            self.nodes += 1
            if k == self.job_count:
                found['assignment'] = tuple(assignment)
                raise _Stop()
            slack = sum(c - l for c, l in zip(self.capacities, loads))
            if remaining[k] > slack:
                return
            if self._blocked(state, k, lambda machine, load: load > self.capacities[machine]):
                return
            job = self.order[k]
            options = []
            for machine in self._candidates(state, counts, job):
                placed = self._place(state, machine, job)
                if placed[2] <= self.capacities[machine]:
                    # fullest machine first keeps room for the large jobs still to come
                    options.append((self.capacities[machine] - placed[2], machine, placed))
            options.sort(key=lambda x: (x[0], x[1]))
            for _, machine, placed in options:
                saved = state[machine], loads[machine]
                state[machine] = placed[:2]
                loads[machine] = placed[2]
                counts[machine] += 1
                assignment[job] = machine
                dfs(k + 1)
                assignment[job] = None
                counts[machine] -= 1
                state[machine], loads[machine] = saved

        try:
            dfs(0)
        except _Stop:
            pass
        logger.debug(f"Capacity search explored {self.nodes} nodes")
        return found.get('assignment')


def optimal_bruteforce(instance, limit=None):
    """ Enumerate all m^n assignments; ties go to the lexicographically first one. """
    limit = DEFAULT_BRUTEFORCE_LIMIT if limit is None else limit
    m, n = instance.machine_count, instance.job_count
    if m ** n > limit:
        raise SizeLimitExceeded('brute-force assignment enumeration', m ** n, limit)

    cache = [{} for _ in range(m)]

    def load(machine, mask):
        if mask not in cache[machine]:
            jobs = [j for j in range(n) if mask >> j & 1]
            cache[machine][mask] = worst_case_load(instance, machine, jobs)
        return cache[machine][mask]

    best_assignment, best_value = None, None
    for assignment in itertools.product(range(m), repeat=n):
        masks = [0] * m
        for job, machine in enumerate(assignment):
            masks[machine] |= 1 << job
        value = max(load(i, masks[i]) for i in range(m))
        if best_value is None or value < best_value:
            best_assignment, best_value = assignment, value
    return Schedule(best_assignment), best_value


def optimal_bnb(instance):
    """ Minimise the worst-case makespan by branch and bound; same value as brute force. """
    engine = BranchAndBound(instance.p_bar_matrix, instance.p_hat_matrix, gamma=instance.gamma)
    assignment, value = engine.minimize()
    return Schedule(assignment), value
