"""
A small DPLL procedure with unit propagation and pure literal elimination.
"""

import logging

from robsched.models.common.constant import DEFAULT_SAT_LIMIT
from robsched.models.common.outcome import SizeLimitExceeded

logger = logging.getLogger('robsched')


class DpllSolver:
    """ Clauses are lists of non-zero integers, DIMACS style. """

    def __init__(self, clauses, pure_literals=True):
        self.clauses = [list(clause) for clause in clauses]
        self.pure_literals = pure_literals
        self.decisions = 0

    @staticmethod
    def simplify(clauses, lit):
        """ Drop the clauses satisfied by `lit` and remove its negation from the others. """
        simplified = []
        for clause in clauses:
            if lit in clause:
                continue
            if -lit in clause:
                simplified.append([x for x in clause if x != -lit])
            else:
                simplified.append(clause)
        return simplified

    def _dpll(self, clauses, assignment):
        while True:
            if any(len(clause) == 0 for clause in clauses):
                return None
            if not clauses:
                return assignment
            unit = next((clause[0] for clause in clauses if len(clause) == 1), None)
            if unit is None and self.pure_literals:
                literals = {lit for clause in clauses for lit in clause}
                unit = next((lit for lit in sorted(literals, key=abs) if -lit not in literals), None)
            if unit is None:
                break
            clauses = self.simplify(clauses, unit)
            assignment = {**assignment, abs(unit): unit > 0}

        self.decisions += 1
        var = min(abs(lit) for clause in clauses for lit in clause)
        for lit in (var, -var):
            found = self._dpll(self.simplify(clauses, lit), {**assignment, var: lit > 0})
            if found is not None:
                return found
        return None

    def solve(self):
        """ A partial assignment {variable: bool} satisfying every clause, or None. """
        return self._dpll(self.clauses, {})


def sat_decide(formula, limit=None, pure_literals=True):
    """ A satisfying assignment (tuple of bools, one per variable) or None when unsatisfiable.

    Variables the search never had to fix are set to False.
    """
    limit = DEFAULT_SAT_LIMIT if limit is None else limit
    if formula.variable_count > limit:
        raise SizeLimitExceeded('SAT decision', formula.variable_count, limit)
    solver = DpllSolver([[lit.to_dimacs() for lit in clause] for clause in formula.clauses],
                        pure_literals=pure_literals)
    found = solver.solve()
    logger.debug(f"DPLL finished after {solver.decisions} decisions: {'sat' if found is not None else 'unsat'}")
    if found is None:
        return None
    assignment = tuple(found.get(v + 1, False) for v in range(formula.variable_count))
    assert formula.is_satisfied(assignment), "DPLL returned a non-satisfying assignment"
    return assignment
