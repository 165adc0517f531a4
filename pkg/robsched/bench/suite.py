"""
Experiment harness: run solvers over generated instances, compare with the exact
optimum and write the records as CSV, JSON or gnuplot columns.
"""

import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Optional

import numpy as np
from tqdm import tqdm

from robsched.models.common.constant import DEFAULT_THREADS
from robsched.models.common.objective import worst_case_makespan
from robsched.models.common.value import format_value, decimal_string
from robsched.models.exact.search import optimal_bnb
from robsched.pipeline.core import Pipeline
from robsched.utils.helper_func import make_table

logger = logging.getLogger('robsched')

CSV_COLUMNS = ['instance_id', 'family', 'jobs', 'machines', 'gamma', 'solver', 'value', 'value_decimal',
               'optimum', 'optimum_decimal', 'ratio', 'wall_time', 'epsilon', 'delta', 'error']


@dataclass
class ExperimentRecord:
    instance_id: str
    family: str
    jobs: int
    machines: int
    gamma: int
    solver: str
    value: Optional[Fraction] = None
    optimum: Optional[Fraction] = None
    wall_time: float = 0.0
    epsilon: str = ''
    delta: str = ''
    error: str = ''

    @property
    def ratio(self):
        """ value / optimum; 1 when both are 0, None without an optimum or a value. """
        if self.value is None or self.optimum is None:
            return None
        if self.optimum == 0:
            return Fraction(1) if self.value == 0 else None
        return self.value / self.optimum

    def to_row(self):
        """ The CSV row: exact rationals as "num/den" next to their decimal rendering. """
        def exact(v):
            return '' if v is None else format_value(v)

        return {
            'instance_id': self.instance_id, 'family': self.family, 'jobs': self.jobs,
            'machines': self.machines, 'gamma': self.gamma, 'solver': self.solver,
            'value': exact(self.value), 'value_decimal': decimal_string(self.value),
            'optimum': exact(self.optimum), 'optimum_decimal': decimal_string(self.optimum),
            'ratio': decimal_string(self.ratio), 'wall_time': f"{self.wall_time:.6f}",
            'epsilon': self.epsilon, 'delta': self.delta, 'error': self.error,
        }

    def to_dict(self):
        data = asdict(self)
        data['value'] = None if self.value is None else format_value(self.value)
        data['optimum'] = None if self.optimum is None else format_value(self.optimum)
        data['ratio'] = None if self.ratio is None else format_value(self.ratio)
        return data


def _oracle(instance):
    try:
        return optimal_bnb(instance)[1]
    except Exception as e:
        logger.warning(f"Oracle failed: {e}")
        return None


def _run_one(pipeline, name, instance_id, family, instance, optimum):
    solver = pipeline.solvers[name]
    record = ExperimentRecord(instance_id, family, instance.job_count, instance.machine_count, instance.gamma,
                              name, optimum=optimum, epsilon=str(solver.config.get('epsilon', '')),
                              delta=str(solver.config.get('delta', '')))
    try:
        result = solver.process(instance)
    except Exception as e:
        logger.warning(f"{name} failed on {instance_id}: {type(e).__name__}: {e}")
        record.error = f"{type(e).__name__}: {e}"
        return record
    # never trust a solver's own value
    record.value = worst_case_makespan(instance, result.schedule)
    record.wall_time = result.wall_time
    return record


def run_suite(batch, solvers, oracle=True, threads=None, progress=True, **solver_options):
    """ Run every solver on every instance of `batch` ((id, config, instance) triples,
    as produced by `generate_many`).

    Failures are recorded in the `error` column and the suite goes on. Records come
    back sorted by (instance id, solver name), whatever the completion order.
    """
    pipeline = Pipeline(solvers=solvers, logging_level=logging.getLevelName(logger.getEffectiveLevel()), **solver_options)
    threads = DEFAULT_THREADS if threads is None else max(1, threads)

    optima = {}
    if oracle:
        for instance_id, _, instance in tqdm(batch, desc='oracle', disable=not progress):
            optima[instance_id] = _oracle(instance)

    tasks = [(name, instance_id, config.family, instance)
             for instance_id, config, instance in batch for name in pipeline.solvers]
    records = []
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = [executor.submit(_run_one, pipeline, name, instance_id, family, instance, optima.get(instance_id))
                   for name, instance_id, family, instance in tasks]
        for future in tqdm(as_completed(futures), total=len(futures), desc='solve', disable=not progress):
            records.append(future.result())

    records.sort(key=lambda r: (r.instance_id, r.solver))
    logger.info(f"Suite finished:\n{summarize(records)}")
    return records


def summarize(records):
    """ Per-solver table of runs, failures, ratio statistics and total time. """
    rows = []
    for name in sorted({r.solver for r in records}):
        mine = [r for r in records if r.solver == name]
        ratios = np.array([float(r.ratio) for r in mine if r.ratio is not None])
        errors = sum(1 for r in mine if r.error)
        rows.append([name, len(mine), errors,
                     f"{ratios.mean():.4f}" if ratios.size else '-',
                     f"{ratios.max():.4f}" if ratios.size else '-',
                     f"{sum(r.wall_time for r in mine):.3f}"])
    return make_table(['Solver', 'Runs', 'Errors', 'Mean ratio', 'Max ratio', 'Time (s)'], rows)


def write_csv(records, fout):
    writer = csv.DictWriter(fout, fieldnames=CSV_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for record in records:
        writer.writerow(record.to_row())


def read_csv(fin):
    return list(csv.DictReader(fin))


def write_json(records, fout):
    json.dump([r.to_dict() for r in records], fout, indent=2, sort_keys=True)
    fout.write('\n')


def gnuplot_columns(rows, column='ratio'):
    """ Whitespace separated columns, one line per instance and one column per solver.

    `rows` are CSV rows (dicts); missing entries are written as NaN.
    """
    solvers = sorted({row['solver'] for row in rows})
    instances = sorted({row['instance_id'] for row in rows})
    table = {(row['instance_id'], row['solver']): row.get(column) or 'NaN' for row in rows}
    lines = ['# index instance ' + ' '.join(solvers)]
    for k, instance_id in enumerate(instances):
        lines.append(' '.join([str(k), instance_id] + [table.get((instance_id, s), 'NaN') for s in solvers]))
    return '\n'.join(lines) + '\n'

