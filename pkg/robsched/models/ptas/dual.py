"""
Dual steps of the approximation schemes for identical machines.

Both steps scale the instance so that the threshold becomes 1, round the
deviations, and try every (restricted) outline in turn on a capacitated typed
instance. The capacity solver is any callable `solver(cti, slack)` returning
Accept or Reject with the decision contract of `capacity_decision_exact`. If
OPT <= T, the outline of an optimal schedule of the rounded instance yields an
instance the solver must accept, so rejecting every outline proves OPT > T.
"""

import logging
from fractions import Fraction

from robsched.models.common.constant import IDENTICAL
from robsched.models.common.instance import InstanceError
from robsched.models.common.objective import worst_case_makespan, trivial_lower_bound
from robsched.models.common.outcome import Accept, Reject, ContractViolation
from robsched.models.common.value import to_value
from robsched.models.exact.capacity import MachineType, CapacitatedTypedInstance, \
    capacity_decision_exact, within_capacity
from robsched.models.ptas.capacitated import build_capacitated, build_capacitated_eptas, normalize_and_lift
from robsched.models.ptas.outline import enumerate_outlines, enumerate_restricted_outlines, outline_count
from robsched.models.ptas.rounding import MAX_EPSILON, round_deviations, \
    scale_to_threshold, threshold_set

logger = logging.getLogger('robsched')


def clamp_epsilon(epsilon):
    """ Parse epsilon; values above 1/5 are lowered to 1/5 with a warning. """
    try:
        epsilon = to_value(epsilon)
    except ValueError as e:
        raise ValueError(f"epsilon: {e}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if epsilon > MAX_EPSILON:
        logger.warning(f"epsilon {epsilon} is above {MAX_EPSILON}, using {MAX_EPSILON}")
        return MAX_EPSILON
    return epsilon


def ptas_guarantee(epsilon):
    """ (1 + eps)^3 + eps, at most 1 + 5 eps for eps <= 1/5. """
    return (1 + epsilon) ** 3 + epsilon


def eptas_guarantee(epsilon):
    """ (1 + eps) (1 + 2 eps)^2 + eps. """
    return (1 + epsilon) * (1 + 2 * epsilon) ** 2 + epsilon


def _classical_cti(scaled):
    # without deviations, one type of m machines with capacity 1 decides P||Cmax at T
    return CapacitatedTypedInstance([MachineType(scaled.machine_count, Fraction(1), scaled.job_p_bar, tag=Fraction(0))])


def _prepare(instance, threshold, epsilon):
    if instance.kind != IDENTICAL:
        raise InstanceError(f"the approximation schemes need identical machines, got {instance.kind}")
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError(f"Threshold must be positive, got {threshold}")
    return threshold, clamp_epsilon(epsilon)


def _finish(instance, threshold, schedule, guarantee, procedure):
    value = worst_case_makespan(instance, schedule)
    if value > guarantee * threshold:
        raise ContractViolation(procedure, f"worst-case makespan {value} exceeds {guarantee} * {threshold}")
    return Accept(schedule, value)


def _classical_step(instance, threshold, epsilon, solver, guarantee, procedure):
    scaled = scale_to_threshold(instance, threshold)
    cti = _classical_cti(scaled)
    outcome = solver(cti, epsilon)
    if not outcome.accepted:
        return Reject(f"no deviations and the classical instance is rejected at T = {threshold}")
    if not within_capacity(cti, outcome.schedule, epsilon):
        raise ContractViolation(procedure, "capacity solver exceeded (1 + eps) * capacity")
    return _finish(instance, threshold, outcome.schedule, guarantee, procedure)


def ptas_dual_step(instance, threshold, epsilon, solver=capacity_decision_exact):
    """ Accept with worst-case makespan <= ((1+eps)^3 + eps) T, or reject certifying OPT > T. """
    threshold, epsilon = _prepare(instance, threshold, epsilon)
    guarantee = ptas_guarantee(epsilon)
    lower = trivial_lower_bound(instance)
    if threshold < lower:
        return Reject(f"T = {threshold} is below the single-job lower bound {lower}")
    if instance.gamma == 0 or not any(instance.job_p_hat):
        return _classical_step(instance, threshold, epsilon, solver, guarantee, 'ptas_dual_step')

    rounded = round_deviations(scale_to_threshold(instance, threshold), epsilon)
    delta = threshold_set(epsilon, instance.gamma)
    total = outline_count(instance.machine_count, len(delta))
    logger.debug(f"Trying up to {total} outlines over {len(delta)} thresholds at T = {threshold}")
    tried = 0
    for outline in enumerate_outlines(instance.machine_count, delta):
        tried += 1
        cti = build_capacitated(rounded, outline, epsilon)
        outcome = solver(cti, epsilon)
        if not outcome.accepted:
            continue
        if not within_capacity(cti, outcome.schedule, epsilon):
            raise ContractViolation('ptas_dual_step', f"capacity solver exceeded (1 + eps) * capacity on outline {outline}")
        logger.debug(f"Outline {outline} accepted after {tried} of {total} tries at T = {threshold}")
        # machines are numbered threshold by threshold, which is a valid machine order
        return _finish(instance, threshold, outcome.schedule, guarantee, 'ptas_dual_step')
    logger.debug(f"All {tried} of {total} outlines rejected at T = {threshold}")
    return Reject(f"all {tried} outlines rejected at T = {threshold}")


def eptas_dual_step(instance, threshold, epsilon, solver=capacity_decision_exact):
    """ As `ptas_dual_step`, over restricted outlines with cloned machines and dummy jobs.

    Accepts with worst-case makespan <= ((1+eps)(1+2eps)^2 + eps) T.
    """
    threshold, epsilon = _prepare(instance, threshold, epsilon)
    guarantee = eptas_guarantee(epsilon)
    lower = trivial_lower_bound(instance)
    if threshold < lower:
        return Reject(f"T = {threshold} is below the single-job lower bound {lower}")
    if instance.gamma == 0 or not any(instance.job_p_hat):
        return _classical_step(instance, threshold, epsilon, solver, guarantee, 'eptas_dual_step')

    rounded = round_deviations(scale_to_threshold(instance, threshold), epsilon)
    delta = threshold_set(epsilon, instance.gamma)
    tried = 0
    for restricted in enumerate_restricted_outlines(instance.machine_count, delta):
        tried += 1
        cti = build_capacitated_eptas(rounded, restricted, epsilon)
        outcome = solver(cti, epsilon)
        if not outcome.accepted:
            continue
        schedule = normalize_and_lift(outcome.schedule, cti, epsilon, job_count=instance.job_count)
        logger.debug(f"Restricted outline {restricted} accepted after {tried} tries at T = {threshold}")
        return _finish(instance, threshold, schedule, guarantee, 'eptas_dual_step')
    logger.debug(f"All {tried} restricted outlines rejected at T = {threshold}")
    return Reject(f"all {tried} restricted outlines rejected at T = {threshold}")


class PtasDual:
    """ `ptas_dual_step` with fixed epsilon and capacity solver, for `binary_search_solve`. """

    name = 'ptas'

    def __init__(self, epsilon=MAX_EPSILON, solver=capacity_decision_exact):
        self.epsilon = clamp_epsilon(epsilon)
        self.solver = solver

    @property
    def guarantee(self):
        return ptas_guarantee(self.epsilon)

    def __call__(self, instance, threshold):
        return ptas_dual_step(instance, threshold, self.epsilon, self.solver)


class EptasDual(PtasDual):

    name = 'eptas'

    @property
    def guarantee(self):
        return eptas_guarantee(self.epsilon)

    def __call__(self, instance, threshold):
        return eptas_dual_step(instance, threshold, self.epsilon, self.solver)
