"""
Outlines: how many machines of a schedule sit at each deviation threshold.

On a machine with more than gamma jobs, the threshold is the gamma-th largest
(rounded) deviation: jobs above it deviate in the worst case, jobs below it do
not. Machines with at most gamma jobs have threshold 0.
"""

from fractions import Fraction
from math import comb
from typing import NamedTuple, Tuple

from robsched.models.common.objective import gamma_set, worst_case_makespan
from robsched.models.common.value import format_value


class OutlineError(ValueError):
    """ Exception indicating an outline that does not exist or does not fit. """

    def __init__(self, reason):
        self.reason = reason
        self.build_message()

    def build_message(self):
        self.message = f"Outline error: {self.reason}"

    def __str__(self):
        return self.message


class Outline(NamedTuple):
    """ Machine counts per threshold; the counts add up to the machine count. """

    thresholds: Tuple
    counts: Tuple[int, ...]

    @property
    def machine_count(self):
        return sum(self.counts)

    def __str__(self):
        return '(' + ', '.join(f"{format_value(t)}:{c}" for t, c in zip(self.thresholds, self.counts) if c) + ')'


class RestrictedOutline(NamedTuple):
    """ Per-threshold counts that are 0 or powers of two, adding up to between m/2 and m. """

    thresholds: Tuple
    counts: Tuple[int, ...]

    @property
    def total(self):
        return sum(self.counts)

    def __str__(self):
        return '[' + ', '.join(f"{format_value(t)}:{c}" for t, c in zip(self.thresholds, self.counts) if c) + ']'


def outline_of(rounded, schedule):
    """ The threshold of every machine under `schedule`, for a schedule of cost <= 1. """
    instance = rounded.as_instance()
    value = worst_case_makespan(instance, schedule)
    if value > 1:
        raise OutlineError(f"outlines exist only for schedules of cost <= 1, this one costs {value}")
    thresholds = []
    for machine, jobs in enumerate(schedule.machine_jobs(instance.machine_count)):
        if len(jobs) <= instance.gamma or instance.gamma == 0:
            thresholds.append(Fraction(0))
            continue
        deviating = gamma_set(instance, machine, jobs)
        thresholds.append(min(rounded.p_hat[j] for j in deviating))
    return tuple(thresholds)


def outline_counts(thresholds, delta):
    """ Count the machines at every value of the threshold set `delta`. """
    index = {t: k for k, t in enumerate(delta)}
    counts = [0] * len(delta)
    for t in thresholds:
        if t not in index:
            raise OutlineError(f"threshold {t} is not in the threshold set")
        counts[index[t]] += 1
    return Outline(tuple(delta), tuple(counts))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_outlines(machine_count, delta):
    """ Every way to spread `machine_count` machines over the thresholds, each once.

    Outlines putting more machines on small thresholds come first.
    """
    delta = tuple(delta)
    for counts in _compositions(machine_count, len(delta)):
        yield Outline(delta, counts)


def power_floor(count):
    """ 0 for 0, otherwise the largest power of two not above `count`. """
    if count <= 0:
        return 0
    return 1 << (count.bit_length() - 1)


def restrict(outline):
    """ Round every count down to a power of two. """
    return RestrictedOutline(outline.thresholds, tuple(power_floor(c) for c in outline.counts))


def _restricted_counts(values, parts, budget):
    if parts == 0:
        yield ()
        return
    for value in values:
        if value > budget:
            continue
        for rest in _restricted_counts(values, parts - 1, budget - value):
            yield (value,) + rest


def enumerate_restricted_outlines(machine_count, delta):
    """ Every vector of counts in {0, 1, 2, 4, ...} (powers not above m) with m/2 <= sum <= m. """
    delta = tuple(delta)
    values = sorted({0} | {1 << k for k in range(machine_count.bit_length()) if 1 << k <= machine_count},
                    reverse=True)
    for counts in _restricted_counts(values, len(delta), machine_count):
        if 2 * sum(counts) >= machine_count:
            yield RestrictedOutline(delta, counts)


def outline_count(machine_count, threshold_count):
    """ Number of outlines: the compositions of m into |delta| non-negative parts. """
    return comb(machine_count + threshold_count - 1, threshold_count - 1)

