"""
Gap instances from 3-CNF formulas, with budget gamma = 1.

Every variable x_j gets two machines, j_f (index 2j) and j_t (index 2j + 1), and a
variable job of nominal time 1 that may run on those two only. Every clause gets a
job of nominal time 0 and deviation 1 that may run only on the machines of its
literals: j_t for x_j, j_f for not x_j. A machine with a variable job and a clause
job has worst-case load 2, so the optimum is 1 when the formula is satisfiable
and at least 2 otherwise.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Tuple

from robsched.models.common.instance import Instance, Schedule
from robsched.models.common.objective import worst_case_makespan
from robsched.models.common.value import FORBIDDEN
from robsched.models.exact.search import optimal_bnb
from robsched.models.hardness.cnf import CnfError
from robsched.models.hardness.dpll import sat_decide

logger = logging.getLogger('robsched')


class DecodeError(ValueError):
    """ Exception raised when a schedule of cost above 1 is decoded. """

    def __init__(self, value):
        self.value = value
        self.build_message()

    def build_message(self):
        self.message = f"Only schedules of cost <= 1 encode an assignment, this one costs {self.value}"

    def __str__(self):
        return self.message


def literal_machine(literal):
    """ The machine a clause job uses for `literal`: j_t for x_j, j_f for its negation. """
    return 2 * literal.variable + (1 if literal.positive else 0)


def machine_label(machine):
    """ "3_f" for machine 4, "3_t" for machine 5 (variables numbered from 1). """
    return f"{machine // 2 + 1}_{'t' if machine % 2 else 'f'}"


@dataclass(frozen=True)
class ReductionInstance:
    formula: Any
    instance: Instance
    labels: Tuple[str, ...]

    def variable_job(self, variable):
        return variable

    def clause_job(self, clause):
        return self.formula.variable_count + clause

    def clause_machines(self, clause):
        """ The machines clause job `clause` may run on, as a set. """
        return {literal_machine(lit) for lit in self.formula.clauses[clause]}


def encode(formula):
    """ The gamma = 1 instance on 2 n0 machines with n0 + m0 jobs. """
    n0 = formula.variable_count
    if n0 < 1:
        raise CnfError("the reduction needs at least one variable")
    m = 2 * n0
    p_bar = [[FORBIDDEN] * (n0 + formula.clause_count) for _ in range(m)]
    p_hat = [[FORBIDDEN] * (n0 + formula.clause_count) for _ in range(m)]
    for j in range(n0):
        for i in range(m):
            p_hat[i][j] = Fraction(0)
        p_bar[2 * j][j] = Fraction(1)
        p_bar[2 * j + 1][j] = Fraction(1)
    for k, clause in enumerate(formula.clauses):
        job = n0 + k
        for i in range(m):
            p_bar[i][job] = Fraction(0)
        for lit in clause:
            p_hat[literal_machine(lit)][job] = Fraction(1)
    instance = Instance.unrelated(p_bar, p_hat, gamma=1)
    return ReductionInstance(formula, instance, tuple(machine_label(i) for i in range(m)))


def decode(reduction, schedule):
    """ x_j is true iff variable job j runs on j_f; satisfying for any schedule of cost <= 1. """
    value = worst_case_makespan(reduction.instance, schedule)
    if value > 1:
        raise DecodeError(value)
    return tuple(schedule[reduction.variable_job(j)] == 2 * j for j in range(reduction.formula.variable_count))


def schedule_from_assignment(reduction, assignment):
    """ Variable job j on j_f when x_j is true, on j_t otherwise; every clause job on the
    machine of its first satisfied literal. Cost 1 for a satisfying assignment.
    """
    formula = reduction.formula
    if len(assignment) != formula.variable_count:
        raise CnfError(f"assignment has {len(assignment)} values for {formula.variable_count} variables")
    machines = [2 * j if value else 2 * j + 1 for j, value in enumerate(assignment)]
    for k, clause in enumerate(formula.clauses):
        satisfied = [lit for lit in clause if lit.satisfied_by(assignment)]
        if not satisfied:
            raise CnfError(f"clause {k} is not satisfied by the assignment")
        machines.append(literal_machine(satisfied[0]))
    return Schedule(machines)


@dataclass
class GapReport:
    satisfiable: bool
    optimum: Fraction
    schedule: Schedule
    assignment: Optional[Tuple[bool, ...]]

    @property
    def consistent(self):
        """ Satisfiable exactly when the optimum is 1, and at least 2 otherwise. """
        if self.satisfiable:
            return self.optimum == 1
        return self.optimum >= 2


def gap_check(formula, limit=None):
    """ Decide the formula, solve its gap instance exactly and decode an optimum of cost 1. """
    reduction = encode(formula)
    satisfiable = sat_decide(formula, limit=limit) is not None
    schedule, optimum = optimal_bnb(reduction.instance)
    assignment = decode(reduction, schedule) if optimum <= 1 else None
    report = GapReport(satisfiable, optimum, schedule, assignment)
    if not report.consistent:
        logger.error(f"Gap violated for {formula!r}: satisfiable={satisfiable}, optimum={optimum}")
    return report
