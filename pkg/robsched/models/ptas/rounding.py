"""
Scaling, deviation rounding and the threshold set of the identical-machines scheme.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from robsched.models.common.constant import IDENTICAL, UNIFORM
from robsched.models.common.instance import Instance, InstanceError, scale
from robsched.models.common.value import to_value

MAX_EPSILON = Fraction(1, 5)


def check_epsilon(epsilon):
    """ Parse epsilon and check 0 < epsilon < 1, the range where the rounding grid exists. """
    try:
        epsilon = to_value(epsilon)
    except ValueError as e:
        raise ValueError(f"epsilon: {e}")
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return epsilon


def scale_to_threshold(instance, threshold):
    """ Divide all nominal times and deviations by T, so that the target makespan becomes 1. """
    threshold = to_value(threshold)
    if threshold <= 0:
        raise ValueError(f"Threshold must be positive, got {threshold}")
    factor = 1 / threshold
    gamma = instance.gamma
    if instance.kind == IDENTICAL:
        return Instance.identical([p * factor for p in instance.job_p_bar],
                                  [p * factor for p in instance.job_p_hat], instance.machine_count, gamma)
    if instance.kind == UNIFORM:
        return Instance.uniform([p * factor for p in instance.job_p_bar],
                                [p * factor for p in instance.job_p_hat], instance.speeds, gamma)
    return Instance.unrelated([[scale(p, factor) for p in row] for row in instance.p_bar_matrix],
                              [[scale(p, factor) for p in row] for row in instance.p_hat_matrix], gamma)


def grid_floor(value, base, ratio):
    """ Largest base * ratio^i (i >= 0) not above `value`; 0 when value < base. """
    if value < base:
        return Fraction(0)
    point = base
    while point * ratio <= value:
        point *= ratio
    return point


@dataclass(frozen=True)
class RoundedInstance:
    """ A scaled identical instance whose deviations were rounded down onto the grid
    {0} u {eps/gamma * (1+eps)^i}.
    """

    instance: Instance
    epsilon: Fraction
    p_hat: Tuple[Fraction, ...]

    @property
    def gamma(self):
        return self.instance.gamma

    @property
    def machine_count(self):
        return self.instance.machine_count

    @property
    def job_count(self):
        return self.instance.job_count

    @property
    def p_bar(self):
        return self.instance.job_p_bar

    def as_instance(self):
        """ The rounded instance as a robust Instance of its own. """
        return Instance.identical(self.p_bar, self.p_hat, self.machine_count, self.gamma)


def round_deviations(instance, epsilon):
    """ Round every deviation down to the grid; deviations below eps/gamma become 0. """
    if instance.kind != IDENTICAL:
        raise InstanceError(f"deviation rounding needs identical machines, got {instance.kind}")
    epsilon = check_epsilon(epsilon)
    if instance.gamma == 0:
        rounded = tuple(Fraction(0) for _ in instance.job_p_hat)
    else:
        base = epsilon / instance.gamma
        rounded = tuple(grid_floor(p, base, 1 + epsilon) for p in instance.job_p_hat)
    return RoundedInstance(instance, epsilon, rounded)


def threshold_set(epsilon, gamma):
    """ {0} u {eps/gamma * (1+eps)^i <= 1/gamma}, ascending. """
    epsilon = check_epsilon(epsilon)
    if isinstance(gamma, bool) or not isinstance(gamma, int) or gamma < 1:
        raise ValueError(f"The threshold set needs gamma >= 1, got {gamma!r}")
    values = [Fraction(0)]
    point = epsilon / gamma
    while point <= Fraction(1, gamma):
        values.append(point)
        point *= 1 + epsilon
    return tuple(values)
