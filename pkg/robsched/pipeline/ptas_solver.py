"""
Solvers for the approximation schemes on identical machines
"""

from robsched.models.ptas.dual import PtasDual, EptasDual
from robsched.models.reduction.dual import binary_search_solve
from robsched.pipeline._constants import *
from robsched.pipeline.approx_solver import search_details
from robsched.pipeline.solver import Solver, register_solver


@register_solver(name=PTAS)
class PtasSolver(Solver):

    DUAL_CLASS = PtasDual

    def _set_up_model(self, config):
        self._epsilon = config.get('epsilon', '1/5')
        self._delta = config.get('delta', '1/100')
        self._dual = self.DUAL_CLASS(self._epsilon)

    def solve(self, instance):
        result = binary_search_solve(instance, self._dual, self._delta)
        return result.schedule, result.value, search_details(result, epsilon=str(self._epsilon), delta=str(self._delta))


@register_solver(name=EPTAS)
class EptasSolver(PtasSolver):

    DUAL_CLASS = EptasDual
