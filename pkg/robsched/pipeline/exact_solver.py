"""
Solvers returning optimal schedules
"""

from robsched.models.exact.search import optimal_bruteforce, optimal_bnb
from robsched.pipeline._constants import *
from robsched.pipeline.solver import Solver, register_solver


@register_solver(name=EXACT)
class ExactSolver(Solver):
    """ Brute force over all m^n assignments. """

    def _set_up_model(self, config):
        self._limit = config.get('limit')

    def solve(self, instance):
        schedule, value = optimal_bruteforce(instance, limit=self._limit)
        return schedule, value, {}


@register_solver(name=BNB)
class BnbSolver(Solver):
    """ Branch and bound with machine symmetry pruning. """

    def solve(self, instance):
        schedule, value = optimal_bnb(instance)
        return schedule, value, {}
