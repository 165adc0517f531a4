"""
Base classes for solvers
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict

from robsched.models.common.objective import worst_case_makespan
from robsched.models.common.outcome import ContractViolation
from robsched.pipeline.registry import NAME_TO_SOLVER_CLASS, SOLVER_NAMES


@dataclass
class SolveResult:
    """ What a solver returned, with the value recomputed from the schedule. """

    solver: str
    schedule: Any
    value: Any
    wall_time: float
    details: Dict[str, Any] = field(default_factory=dict)


class Solver(ABC):
    """ Base class for all solvers """

    # name under which the solver is registered, set by register_solver
    NAME = None

    def __init__(self, config, pipeline=None):
        # overall config for the solver
        self._config = config
        # pipeline building this solver, None when used on its own
        self._pipeline = pipeline
        self._set_up_model(config)

    def _set_up_model(self, config):
        """ Read solver options from the config. Default is to need none. """
        pass

    @abstractmethod
    def solve(self, instance):
        """ Return (schedule, value, details) for a robust instance. """
        pass

    def process(self, instance):
        """ Solve `instance` and re-evaluate the returned schedule independently. """
        start = time.perf_counter()
        schedule, reported, details = self.solve(instance)
        wall_time = time.perf_counter() - start
        value = worst_case_makespan(instance, schedule)
        if reported is not None and reported != value:
            raise ContractViolation(self.NAME, f"reported value {reported} but the schedule evaluates to {value}")
        return SolveResult(self.NAME, schedule, value, wall_time, details)

    @property
    def config(self):
        """ Configurations for the solver """
        return self._config

    @property
    def pipeline(self):
        """ The pipeline that this solver belongs to """
        return self._pipeline


class SolverRegisterException(Exception):
    """ Exception indicating solver or subroutine registration failure """

    def __init__(self, solver_class, expected_parent):
        self._solver_class = solver_class
        self._expected_parent = expected_parent
        self.build_message()

    def build_message(self):
        self.message = f"Failed to register '{self._solver_class}'. It must be a subclass of '{self._expected_parent}'."

    def __str__(self):
        return self.message


def register_solver(name):
    def wrapper(Cls):
        if not isinstance(Cls, type) or not issubclass(Cls, Solver):
            raise SolverRegisterException(Cls, Solver)

        Cls.NAME = name
        NAME_TO_SOLVER_CLASS[name] = Cls
        if name not in SOLVER_NAMES:
            SOLVER_NAMES.append(name)
        return Cls
    return wrapper
