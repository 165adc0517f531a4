"""
Utilities for testing
"""

import os
import random
from fractions import Fraction

from robsched.models.common.instance import Instance, Schedule
from robsched.models.common.value import FORBIDDEN

# Global Variables
TEST_HOME = os.path.dirname(os.path.abspath(__file__))
TEST_DATA_DIR = os.path.join(TEST_HOME, 'data')

UNSAT_CNF = os.path.join(TEST_DATA_DIR, 'all_polarities.cnf')
EXAMPLE_INSTANCE = os.path.join(TEST_DATA_DIR, 'identical_small.json')

# seed shared by the randomised oracle tests
TEST_SEED = 20240601


def rational(rng, low=0, high=6, denominator=2):
    """ A random k / denominator with low <= k <= high. """
    return Fraction(rng.randint(low, high), denominator)


def random_identical(rng, jobs=(1, 6), machines=(1, 3), gamma=(0, 3), high=6, denominator=2):
    n = rng.randint(*jobs)
    m = rng.randint(*machines)
    p_bar = [rational(rng, high=high, denominator=denominator) for _ in range(n)]
    p_hat = [rational(rng, high=high, denominator=denominator) for _ in range(n)]
    return Instance.identical(p_bar, p_hat, m, rng.randint(*gamma))


def random_uniform(rng, jobs=(1, 6), machines=(1, 3), gamma=(0, 3), high=6):
    n = rng.randint(*jobs)
    m = rng.randint(*machines)
    speeds = [Fraction(rng.randint(1, 3)) for _ in range(m)]
    p_bar = [rational(rng, high=high) for _ in range(n)]
    p_hat = [rational(rng, high=high) for _ in range(n)]
    return Instance.uniform(p_bar, p_hat, speeds, rng.randint(*gamma))


def random_unrelated(rng, jobs=(1, 6), machines=(1, 3), gamma=(0, 3), high=6, forbidden_rate=0.2):
    n = rng.randint(*jobs)
    m = rng.randint(*machines)
    p_bar = [[rational(rng, high=high) for _ in range(n)] for _ in range(m)]
    p_hat = [[rational(rng, high=high) for _ in range(n)] for _ in range(m)]
    for j in range(n):
        keep = rng.randrange(m)
        for i in range(m):
            if i != keep and rng.random() < forbidden_rate:
                p_bar[i][j] = FORBIDDEN
    return Instance.unrelated(p_bar, p_hat, rng.randint(*gamma))


def random_instance(rng, **kwargs):
    """ An instance of a random machine environment. """
    builder = rng.choice([random_identical, random_uniform, random_unrelated])
    return builder(rng, **kwargs)


def random_schedule(rng, instance):
    """ A random valid schedule: every job on one of its allowed machines. """
    assignment = []
    for j in range(instance.job_count):
        allowed = [i for i in range(instance.machine_count) if instance.is_allowed(i, j)]
        assignment.append(rng.choice(allowed))
    return Schedule(assignment)


def seeded(offset=0):
    return random.Random(TEST_SEED + offset)
