"""
Seeded instance generators.

All randomness comes from `numpy.random.default_rng(seed)`, and every drawn number
is turned into an exact rational k / denominator, so a config always yields the
same instance and the same JSON bytes.
"""

from dataclasses import dataclass, asdict, replace
from fractions import Fraction
from typing import Tuple

import numpy as np

from robsched.models.common.instance import Instance
from robsched.models.common.value import FORBIDDEN
from robsched.models.hardness.cnf import random_formula
from robsched.models.hardness.gap import encode

IDENTICAL_UNIFORM_RANDOM = 'identical-uniform-random'
IDENTICAL_CORRELATED = 'identical-correlated'
UNRELATED_RANDOM = 'unrelated-random'
UNIFORM_SPEEDS = 'uniform-speeds'
SAT_GAP = 'sat-gap'
FAMILIES = (IDENTICAL_UNIFORM_RANDOM, IDENTICAL_CORRELATED, UNRELATED_RANDOM, UNIFORM_SPEEDS, SAT_GAP)


class GeneratorConfigError(ValueError):
    """ Exception indicating inconsistent generator settings. """

    def __init__(self, reason):
        self.reason = reason
        self.build_message()

    def build_message(self):
        self.message = f"Invalid generator config: {self.reason}"

    def __str__(self):
        return self.message


@dataclass(frozen=True)
class GeneratorConfig:
    """ Inclusive ranges for the instance dimensions and for the integer numerators
    of the processing times; every time is numerator / denominator.

    `variables` and `clauses` size the random formulas of the sat-gap family,
    `speeds` the integer machine speeds of the uniform family.
    """

    seed: int = 0
    family: str = IDENTICAL_UNIFORM_RANDOM
    jobs: Tuple[int, int] = (4, 8)
    machines: Tuple[int, int] = (2, 3)
    gamma: Tuple[int, int] = (0, 3)
    magnitude: Tuple[int, int] = (0, 10)
    denominator: int = 1
    speeds: Tuple[int, int] = (1, 4)
    forbidden_rate: float = 0.0
    variables: Tuple[int, int] = (3, 6)
    clauses: Tuple[int, int] = (1, 8)

    def __post_init__(self):
        for name in ('jobs', 'machines', 'gamma', 'magnitude', 'speeds', 'variables', 'clauses'):
            value = tuple(getattr(self, name))
            if len(value) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
                raise GeneratorConfigError(f"{name} must be a pair of integers, got {value!r}")
            if value[0] > value[1]:
                raise GeneratorConfigError(f"{name} range {value} is empty")
            object.__setattr__(self, name, value)
        if self.family not in FAMILIES:
            raise GeneratorConfigError(f"unknown family {self.family!r}, expected one of {', '.join(FAMILIES)}")
        if self.jobs[0] < 1 or self.machines[0] < 1 or self.variables[0] < 1:
            raise GeneratorConfigError("instances need at least one job, one machine and one variable")
        if self.gamma[0] < 0 or self.magnitude[0] < 0 or self.clauses[0] < 0:
            raise GeneratorConfigError("gamma, magnitudes and clause counts must be non-negative")
        if self.speeds[0] < 1:
            raise GeneratorConfigError("speeds must be positive")
        if self.denominator < 1:
            raise GeneratorConfigError("denominator must be positive")
        if not 0 <= self.forbidden_rate < 1:
            raise GeneratorConfigError("forbidden_rate must lie in [0, 1)")

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in data.items()})
        except TypeError as e:
            raise GeneratorConfigError(str(e))

    def to_dict(self):
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    @property
    def instance_id(self):
        return f"{self.family}-{self.seed}"


def _draw(rng, bounds):
    return int(rng.integers(bounds[0], bounds[1] + 1))


def _values(rng, config, size):
    numerators = rng.integers(config.magnitude[0], config.magnitude[1] + 1, size=size)
    return np.vectorize(lambda k: Fraction(int(k), config.denominator), otypes=[object])(numerators)


def generate(config):
    """ One instance of `config.family`, determined by `config.seed`. """
    rng = np.random.default_rng(config.seed)
    if config.family == SAT_GAP:
        formula = random_formula(rng, _draw(rng, config.variables), _draw(rng, config.clauses))
        return encode(formula).instance

    n, m, gamma = _draw(rng, config.jobs), _draw(rng, config.machines), _draw(rng, config.gamma)
    if config.family == IDENTICAL_UNIFORM_RANDOM:
        return Instance.identical(list(_values(rng, config, n)), list(_values(rng, config, n)), m, gamma)
    if config.family == IDENTICAL_CORRELATED:
        p_bar = _values(rng, config, n)
        # one deviation ratio in {1/4, 1/2, 3/4, 1} per instance
        ratio = Fraction(_draw(rng, (1, 4)), 4)
        return Instance.identical(list(p_bar), [p * ratio for p in p_bar], m, gamma)
    if config.family == UNIFORM_SPEEDS:
        speeds = [Fraction(_draw(rng, config.speeds)) for _ in range(m)]
        return Instance.uniform(list(_values(rng, config, n)), list(_values(rng, config, n)), speeds, gamma)

    p_bar = _values(rng, config, (m, n))
    p_hat = _values(rng, config, (m, n))
    forbidden = rng.random((m, n)) < config.forbidden_rate
    # every job keeps one allowed machine
    keep = rng.integers(0, m, size=n)
    forbidden[keep, np.arange(n)] = False
    p_bar[forbidden] = FORBIDDEN
    return Instance.unrelated(p_bar.tolist(), p_hat.tolist(), gamma)


def generate_many(config, count):
    """ `count` instances with seeds seed, seed + 1, ... as (instance id, config, instance). """
    batch = []
    for k in range(count):
        current = replace(config, seed=config.seed + k)
        batch.append((current.instance_id, current, generate(current)))
    return batch
