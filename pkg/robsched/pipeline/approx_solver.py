"""
Solver wrapping a classical makespan subroutine in the dual approximation search
"""

import logging

from robsched.models.common.value import format_value
from robsched.models.reduction.dual import binary_search_solve
from robsched.models.reduction.subroutine import build_subroutine
from robsched.pipeline._constants import *
from robsched.pipeline.solver import Solver, register_solver

logger = logging.getLogger('robsched')


def search_details(result, **params):
    details = {'threshold': format_value(result.threshold), 'iterations': result.iterations,
               'guarantee': format_value(result.guarantee)}
    details.update(params)
    return details


@register_solver(name=APPROX3)
class Approx3Solver(Solver):
    """ (c + 1)(1 + delta)-approximation from a c-approximate classical subroutine. """

    def _set_up_model(self, config):
        self._delta = config.get('delta', '1/100')
        name = config.get('subroutine', 'exact')
        self._subroutine = build_subroutine(name, {'limit': config.get('limit')})
        logger.debug(f"approx3 uses the {name} subroutine with guarantee {self._subroutine.guarantee}")

    def solve(self, instance):
        result = binary_search_solve(instance, self._subroutine, self._delta)
        return result.schedule, result.value, search_details(result, delta=str(self._delta))
