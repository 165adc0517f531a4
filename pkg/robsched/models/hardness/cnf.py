"""
3-CNF formulas and DIMACS input/output.

Variables are 0-indexed internally; DIMACS numbers them from 1 and writes a
negated literal as a negative number.
"""

from typing import NamedTuple


class CnfError(ValueError):
    """ Exception indicating a malformed formula or DIMACS file. """

    def __init__(self, reason):
        self.reason = reason
        self.build_message()

    def build_message(self):
        self.message = f"Invalid CNF: {self.reason}"

    def __str__(self):
        return self.message


class Literal(NamedTuple):
    variable: int
    positive: bool = True

    @classmethod
    def from_dimacs(cls, number):
        if number == 0:
            raise CnfError("0 is not a literal")
        return cls(abs(number) - 1, number > 0)

    def to_dimacs(self):
        return self.variable + 1 if self.positive else -(self.variable + 1)

    def satisfied_by(self, assignment):
        return assignment[self.variable] == self.positive

    def __neg__(self):
        return Literal(self.variable, not self.positive)

    def __str__(self):
        return f"x{self.variable + 1}" if self.positive else f"~x{self.variable + 1}"


class CnfFormula:
    """ A conjunction of clauses with exactly three literals each. """

    def __init__(self, variable_count, clauses):
        if isinstance(variable_count, bool) or not isinstance(variable_count, int) or variable_count < 0:
            raise CnfError(f"variable count must be a non-negative integer, got {variable_count!r}")
        self._variable_count = variable_count
        self._clauses = tuple(self._check_clause(k, clause) for k, clause in enumerate(clauses))

    def _check_clause(self, index, clause):
        clause = tuple(lit if isinstance(lit, Literal) else Literal(*lit) for lit in clause)
        if len(clause) != 3:
            raise CnfError(f"clause {index} has {len(clause)} literals, expected 3")
        for lit in clause:
            if not 0 <= lit.variable < self._variable_count:
                raise CnfError(f"clause {index} uses variable {lit.variable} outside [0, {self._variable_count})")
        return clause

    @property
    def variable_count(self):
        return self._variable_count

    @property
    def clause_count(self):
        return len(self._clauses)

    @property
    def clauses(self):
        return self._clauses

    def is_satisfied(self, assignment):
        """ True when every clause has a literal made true by `assignment` (a sequence of bools). """
        if len(assignment) != self._variable_count:
            raise CnfError(f"assignment has {len(assignment)} values for {self._variable_count} variables")
        return all(any(lit.satisfied_by(assignment) for lit in clause) for clause in self._clauses)

    def to_dimacs(self):
        lines = [f"p cnf {self._variable_count} {len(self._clauses)}"]
        for clause in self._clauses:
            lines.append(' '.join(str(lit.to_dimacs()) for lit in clause) + ' 0')
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_dimacs(cls, text):
        """ Parse DIMACS CNF text: comment lines, a "p cnf V C" header, clauses ended by 0. """
        header = None
        clauses, current = [], []
        for line_number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith('c'):
                continue
            if line.startswith('%'):
                break
            if line.startswith('p'):
                fields = line.split()
                if header is not None or len(fields) != 4 or fields[1] != 'cnf':
                    raise CnfError(f"line {line_number}: bad problem line {line!r}")
                try:
                    header = (int(fields[2]), int(fields[3]))
                except ValueError:
                    raise CnfError(f"line {line_number}: bad problem line {line!r}")
                continue
            if header is None:
                raise CnfError(f"line {line_number}: clause before the problem line")
            for token in line.split():
                try:
                    number = int(token)
                except ValueError:
                    raise CnfError(f"line {line_number}: {token!r} is not an integer")
                if number == 0:
                    clauses.append(current)
                    current = []
                else:
                    if abs(number) > header[0]:
                        raise CnfError(f"line {line_number}: literal {number} exceeds {header[0]} variables")
                    current.append(Literal.from_dimacs(number))
        if header is None:
            raise CnfError("missing 'p cnf' problem line")
        if current:
            raise CnfError("last clause is not terminated by 0")
        if len(clauses) != header[1]:
            raise CnfError(f"problem line announces {header[1]} clauses, found {len(clauses)}")
        return cls(header[0], clauses)

    def save(self, path):
        with open(path, 'w') as fout:
            fout.write(self.to_dimacs())

    @classmethod
    def load(cls, path):
        with open(path) as fin:
            return cls.from_dimacs(fin.read())

    def __eq__(self, other):
        if not isinstance(other, CnfFormula):
            return NotImplemented
        return (self._variable_count, self._clauses) == (other._variable_count, other._clauses)

    def __hash__(self):
        return hash((self._variable_count, self._clauses))

    def __repr__(self):
        return f"<CnfFormula variables={self._variable_count};clauses={len(self._clauses)}>"

    def __str__(self):
        return ' & '.join('(' + ' | '.join(str(lit) for lit in clause) + ')' for clause in self._clauses) or 'true'


def random_formula(rng, variable_count, clause_count):
    """ Uniform random 3-CNF; `rng` is a numpy Generator.

    Variables of a clause are distinct when there are at least three of them.
    """
    clauses = []
    for _ in range(clause_count):
        variables = rng.choice(variable_count, size=3, replace=variable_count < 3)
        signs = rng.integers(0, 2, size=3)
        clauses.append(tuple(Literal(int(v), bool(s)) for v, s in zip(variables, signs)))
    return CnfFormula(variable_count, clauses)
