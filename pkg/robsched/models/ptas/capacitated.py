"""
Capacitated typed instances built from an outline, and the normalisation that
turns a schedule of the cloned-machine instance back into one on m machines.

A machine at threshold l gets capacity 1 - gamma * l + eps. A job is charged
p_bar + p_hat - l there when its rounded deviation reaches l, otherwise p_bar:
the gamma deviating jobs each pay l through the reduced capacity and only the
excess above l through their processing time.
"""

import logging
from fractions import Fraction

from robsched.models.common.instance import Schedule
from robsched.models.common.outcome import ContractViolation
from robsched.models.common.value import FORBIDDEN
from robsched.models.exact.capacity import MachineType, CapacitatedTypedInstance

logger = logging.getLogger('robsched')


class NormalizationError(ContractViolation):
    """ Exception raised when a cloned-machine schedule cannot be normalised. """

    def __init__(self, detail):
        super().__init__('normalize_and_lift', detail)


def capacity(gamma, threshold, epsilon):
    return 1 - gamma * threshold + epsilon


def threshold_times(rounded, threshold):
    """ Processing time of every job on a machine at `threshold`. """
    return tuple(p_bar + p_hat - threshold if p_hat >= threshold else p_bar
                 for p_bar, p_hat in zip(rounded.p_bar, rounded.p_hat))


def build_capacitated(rounded, outline, epsilon):
    """ One machine type per threshold, with the outline's count as multiplicity. """
    epsilon = Fraction(epsilon)
    types = [MachineType(count, capacity(rounded.gamma, threshold, epsilon),
                         threshold_times(rounded, threshold), tag=threshold)
             for threshold, count in zip(outline.thresholds, outline.counts)]
    return CapacitatedTypedInstance(types, job_count=rounded.job_count)


def dummy_count(rounded, restricted):
    return 2 * restricted.total - rounded.machine_count


def build_capacitated_eptas(rounded, restricted, epsilon):
    """ Original and cloned types per threshold, plus 2m' - m dummy jobs.

    Types come in the order original, clone for every threshold. Dummy jobs are the
    last jobs; each fills a cloned machine exactly and cannot run on an original one,
    so the dummies switch off 2m' - m of the 2m' machines.
    """
    epsilon = Fraction(epsilon)
    dummies = dummy_count(rounded, restricted)
    if dummies < 0:
        raise ValueError(f"restricted outline {restricted} covers fewer than half of the {rounded.machine_count} machines")
    types = []
    for threshold, count in zip(restricted.thresholds, restricted.counts):
        c = capacity(rounded.gamma, threshold, epsilon)
        times = threshold_times(rounded, threshold)
        types.append(MachineType(count, c, times + (FORBIDDEN,) * dummies, tag=(threshold, False)))
        types.append(MachineType(count, c, times + (c,) * dummies, tag=(threshold, True)))
    return CapacitatedTypedInstance(types, job_count=rounded.job_count + dummies)


def normalize_and_lift(schedule, cti, epsilon, job_count=None):
    """ Schedule of the cloned-machine instance -> schedule of the m-machine instance.

    Regular jobs sharing a cloned machine with a dummy job are moved to an original
    machine of the same threshold, a different one for every such clone. The machines
    holding dummies are then dropped and the rest renumbered in order. Loads stay
    within (1 + 2 eps) times capacity; anything else raises NormalizationError.
    """
    epsilon = Fraction(epsilon)
    if job_count is None:
        # dummies are the jobs an original machine cannot take
        job_count = sum(1 for j in range(cti.job_count) if cti.time(0, j) is not FORBIDDEN)
    kinds = cti.machine_types()
    capacities = cti.capacities()
    loads = cti.loads(schedule)
    for machine, (load, c) in enumerate(zip(loads, capacities)):
        if load is FORBIDDEN or load > (1 + epsilon) * c:
            raise NormalizationError(f"machine {machine} has load {load} above (1 + eps) * {c}")

    assignment = list(schedule)
    dummy_machines = {}
    for job in range(job_count, cti.job_count):
        machine = assignment[job]
        if machine in dummy_machines:
            raise NormalizationError(f"machine {machine} carries two dummy jobs")
        dummy_machines[machine] = job

    # originals of every threshold still free to receive moved jobs
    free = {}
    for machine, kind in enumerate(kinds):
        threshold, cloned = cti.types[kind].tag
        if not cloned:
            free.setdefault(threshold, []).append(machine)

    for machine in sorted(dummy_machines):
        threshold, cloned = cti.types[kinds[machine]].tag
        moved = [job for job in range(job_count) if assignment[job] == machine]
        if not moved:
            continue
        if not free.get(threshold):
            raise NormalizationError(f"no original machine left at threshold {threshold} for clone {machine}")
        target = free[threshold].pop(0)
        for job in moved:
            assignment[job] = target
            loads[target] += cti.time(kinds[target], job)
        if loads[target] > (1 + 2 * epsilon) * capacities[target]:
            raise NormalizationError(f"machine {target} reaches {loads[target]} after normalisation")

    kept = [machine for machine in range(cti.machine_count) if machine not in dummy_machines]
    renumber = {machine: k for k, machine in enumerate(kept)}
    logger.debug(f"Normalised: {len(dummy_machines)} dummy machines dropped, {len(kept)} kept")
    return Schedule(renumber[assignment[job]] for job in range(job_count))
