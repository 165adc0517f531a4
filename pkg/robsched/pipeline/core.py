"""
Pipeline that runs a set of solvers on robust scheduling instances
"""

import logging

from robsched.models.common.utils import set_logging_level
from robsched.pipeline._constants import *
from robsched.pipeline.registry import NAME_TO_SOLVER_CLASS, SOLVER_NAMES
# importing the solver modules registers them
from robsched.pipeline.exact_solver import ExactSolver, BnbSolver
from robsched.pipeline.approx_solver import Approx3Solver
from robsched.pipeline.ptas_solver import PtasSolver, EptasSolver
from robsched.utils.helper_func import make_table

logger = logging.getLogger('robsched')

DEFAULT_SOLVER_CONFIG = {
    'approx3_delta': '1/100',
    'approx3_subroutine': 'exact',
    'ptas_epsilon': '1/5',
    'ptas_delta': '1/100',
    'eptas_epsilon': '1/5',
    'eptas_delta': '1/100',
}


class UnknownSolverException(Exception):
    """ Exception indicating a solver name that nothing registered """

    def __init__(self, names):
        self._names = names
        self.build_message()

    @property
    def names(self):
        return self._names

    def build_message(self):
        self.message = f"Unknown solver(s): {', '.join(self._names)}. Registered solvers: {', '.join(SOLVER_NAMES)}."

    def __str__(self):
        return self.message


def parse_solver_names(solvers):
    if isinstance(solvers, str):
        solvers = solvers.split(',')
    names = []
    for name in solvers:
        name = name.strip().lower()
        if name and name not in names:
            names.append(name)
    return names


class Pipeline:

    def __init__(self, solvers=BNB, logging_level='INFO', verbose=None, **kwargs):
        self.kwargs = kwargs

        # set global logging level
        set_logging_level(logging_level, verbose)
        self.logging_level = logging.getLevelName(logger.level)

        names = parse_solver_names(solvers)
        if not names:
            raise ValueError('No solver to load. Please name at least one solver.')
        unknown = [name for name in names if name not in NAME_TO_SOLVER_CLASS]
        if unknown:
            raise UnknownSolverException(unknown)

        self.config = dict(DEFAULT_SOLVER_CONFIG)
        self.config.update(kwargs)

        rows = [[name, ', '.join(f"{k}={v}" for k, v in sorted(self.filter_config(name, self.config).items())) or '-']
                for name in names]
        logger.info(f'Loading these solvers:\n{make_table(["Solver", "Options"], rows)}')

        self.solvers = {}
        for name in names:
            curr_solver_config = self.filter_config(name, self.config)
            logger.debug(f'Loading {name} with settings: {curr_solver_config}')
            self.solvers[name] = NAME_TO_SOLVER_CLASS[name](config=curr_solver_config, pipeline=self)

        logger.debug("Done loading solvers!")

    def filter_config(self, prefix, config_dict):
        filtered_dict = {}
        for key in config_dict.keys():
            if '_' not in key:
                continue
            k, v = key.split('_', 1)  # split ptas_epsilon to ptas+epsilon
            if k == prefix:
                filtered_dict[v] = config_dict[key]
        return filtered_dict

    @property
    def loaded_solvers(self):
        """
        Return all currently loaded solvers in registration order.
        :return: list of Solver instances
        """
        return [self.solvers[name] for name in SOLVER_NAMES if self.solvers.get(name)]

    def process(self, instance):
        """ Run every loaded solver; results keyed by solver name. """
        return {solver.NAME: solver.process(instance) for solver in self.loaded_solvers}

    def __call__(self, instance):
        return self.process(instance)
