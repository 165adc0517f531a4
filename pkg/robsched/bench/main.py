"""
Command line entry point: evaluate, solve, generate, build gap instances, run
benchmark suites and export plot columns.
"""

import argparse
import json
import logging
import os
import sys

from robsched.bench.generate import FAMILIES, GeneratorConfig, GeneratorConfigError, generate, generate_many
from robsched.bench.suite import gnuplot_columns, read_csv, run_suite, write_csv, write_json
from robsched.models.common.instance import Instance, InstanceError, Schedule, ScheduleError, ScenarioError
from robsched.models.common.objective import machine_loads, worst_case_makespan
from robsched.models.common.outcome import SizeLimitExceeded
from robsched.models.common.utils import ensure_dir, load_config, set_logging_level
from robsched.models.common.value import decimal_string, format_value
from robsched.models.exact.scenarios import adversary_argmax
from robsched.models.hardness.cnf import CnfError, CnfFormula
from robsched.models.hardness.gap import encode, gap_check
from robsched.pipeline.core import Pipeline, UnknownSolverException
from robsched.pipeline.registry import SOLVER_NAMES

logger = logging.getLogger('robsched')

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_SIZE_LIMIT = 3


def _pair(text):
    """ "lo,hi" or a single "k" as an inclusive integer range. """
    parts = [int(x) for x in text.split(',')]
    if len(parts) == 1:
        return parts[0], parts[0]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return tuple(parts)


def _show(value):
    return f"{format_value(value)} ({decimal_string(value)})"


def do_evaluate(args):
    instance = Instance.load(args.instance)
    schedule = Schedule.load(args.schedule)
    value = worst_case_makespan(instance, schedule)
    print(f"worst-case makespan: {_show(value)}")
    for machine, load in enumerate(machine_loads(instance, schedule)):
        print(f"  machine {machine}: {_show(load)}")
    if args.scenario:
        scenario, scenario_value = adversary_argmax(instance, schedule)
        print(f"worst scenario: {sorted(scenario.deviating)} -> {_show(scenario_value)}")


def do_solve(args):
    instance = Instance.load(args.instance)
    options = {}
    if args.epsilon is not None:
        options[f'{args.algo}_epsilon'] = args.epsilon
    if args.delta is not None:
        options[f'{args.algo}_delta'] = args.delta
    if args.subroutine is not None:
        options['approx3_subroutine'] = args.subroutine
    pipeline = Pipeline(solvers=args.algo, logging_level=args.logging_level, **options)
    result = pipeline(instance)[args.algo]
    print(f"{args.algo}: {_show(result.value)} in {result.wall_time:.3f}s")
    for key, value in sorted(result.details.items()):
        print(f"  {key}: {value}")
    if args.output:
        with open(args.output, 'w') as fout:
            fout.write(result.schedule.to_json())
    else:
        sys.stdout.write(result.schedule.to_json())


def do_gen(args):
    config = GeneratorConfig(seed=args.seed, family=args.family, jobs=args.jobs, machines=args.machines,
                             gamma=args.gamma, magnitude=args.magnitude, denominator=args.denominator,
                             forbidden_rate=args.forbidden_rate)
    if args.count == 1 and not args.output_dir:
        sys.stdout.write(generate(config).to_json())
        return
    ensure_dir(args.output_dir or '.', verbose=False)
    for instance_id, _, instance in generate_many(config, args.count):
        path = os.path.join(args.output_dir or '.', f"{instance_id}.json")
        instance.save(path)
        logger.info(f"Wrote {path}")


def do_sat_gap(args):
    formula = CnfFormula.load(args.cnf)
    reduction = encode(formula)
    if args.output:
        reduction.instance.save(args.output)
        logger.info(f"Wrote gap instance with {reduction.instance.machine_count} machines to {args.output}")
    if args.check or not args.output:
        report = gap_check(formula)
        print(f"satisfiable: {report.satisfiable}")
        print(f"optimum: {_show(report.optimum)}")
        if report.assignment is not None:
            print("assignment: " + ' '.join(f"x{j + 1}={int(v)}" for j, v in enumerate(report.assignment)))
        print(f"gap consistent: {report.consistent}")


def _load_batch(config):
    generators = config.get('generators', [{}])
    default_count = config.get('count', 1)
    batch = []
    for k, data in enumerate(generators):
        data = dict(data)
        count = data.pop('count', default_count)
        for instance_id, gen_config, instance in generate_many(GeneratorConfig.from_dict(data), count):
            if len(generators) > 1:
                instance_id = f"g{k}-{instance_id}"
            batch.append((instance_id, gen_config, instance))
    return batch


def do_bench(args):
    config = load_config(args.config)
    batch = _load_batch(config)
    records = run_suite(batch, config.get('solvers', [SOLVER_NAMES[0]]), oracle=config.get('oracle', True),
                        threads=args.threads if args.threads is not None else config.get('threads'),
                        progress=not args.no_progress, **config.get('options', {}))
    if args.csv:
        ensure_dir(os.path.dirname(args.csv), verbose=False)
        with open(args.csv, 'w', newline='') as fout:
            write_csv(records, fout)
    if args.json:
        ensure_dir(os.path.dirname(args.json), verbose=False)
        with open(args.json, 'w') as fout:
            write_json(records, fout)
    if not args.csv and not args.json:
        write_csv(records, sys.stdout)


def do_plot(args):
    with open(args.csv, newline='') as fin:
        rows = read_csv(fin)
    text = gnuplot_columns(rows, column=args.column)
    if args.output:
        with open(args.output, 'w') as fout:
            fout.write(text)
    else:
        sys.stdout.write(text)


def parse_args(args=None):
    parser = argparse.ArgumentParser(prog='robsched', description='Robust makespan minimisation under budgeted uncertainty')
    parser.add_argument('--logging_level', type=str, default='INFO', help='Logging level of the robsched logger.')
    subparsers = parser.add_subparsers(dest='command')

    evaluate = subparsers.add_parser('evaluate', help='Worst-case makespan of a schedule.')
    evaluate.add_argument('--instance', required=True, help='Instance JSON file.')
    evaluate.add_argument('--schedule', required=True, help='Schedule JSON file.')
    evaluate.add_argument('--scenario', action='store_true', help='Also report a worst scenario by enumeration.')
    evaluate.set_defaults(func=do_evaluate)

    solve = subparsers.add_parser('solve', help='Solve an instance with one algorithm.')
    solve.add_argument('--instance', required=True, help='Instance JSON file.')
    solve.add_argument('--algo', choices=SOLVER_NAMES, default=SOLVER_NAMES[0])
    solve.add_argument('--epsilon', type=str, default=None, help='Accuracy of ptas/eptas, e.g. 1/5.')
    solve.add_argument('--delta', type=str, default=None, help='Search precision of approx3/ptas/eptas, e.g. 1/100.')
    solve.add_argument('--subroutine', choices=['exact', 'list'], default=None, help='Classical subroutine of approx3.')
    solve.add_argument('--output', type=str, default=None, help='Schedule JSON output (default: stdout).')
    solve.set_defaults(func=do_solve)

    gen = subparsers.add_parser('gen', help='Generate seeded instances.')
    gen.add_argument('--family', choices=FAMILIES, default=FAMILIES[0])
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--count', type=int, default=1)
    gen.add_argument('--jobs', type=_pair, default=(4, 8), help="Job count range 'lo,hi'.")
    gen.add_argument('--machines', type=_pair, default=(2, 3), help="Machine count range 'lo,hi'.")
    gen.add_argument('--gamma', type=_pair, default=(0, 3), help="Budget range 'lo,hi'.")
    gen.add_argument('--magnitude', type=_pair, default=(0, 10), help="Numerator range 'lo,hi'.")
    gen.add_argument('--denominator', type=int, default=1)
    gen.add_argument('--forbidden_rate', type=float, default=0.0)
    gen.add_argument('--output_dir', type=str, default=None)
    gen.set_defaults(func=do_gen)

    sat_gap = subparsers.add_parser('sat-gap', help='Gap instance of a DIMACS 3-CNF formula.')
    sat_gap.add_argument('--cnf', required=True, help='DIMACS CNF file with 3 literals per clause.')
    sat_gap.add_argument('--output', type=str, default=None, help='Write the gap instance JSON here.')
    sat_gap.add_argument('--check', action='store_true', help='Decide the formula and solve the instance exactly.')
    sat_gap.set_defaults(func=do_sat_gap)

    bench = subparsers.add_parser('bench', help='Run a benchmark suite described by a JSON config file.')
    bench.add_argument('--config', required=True)
    bench.add_argument('--csv', type=str, default=None)
    bench.add_argument('--json', type=str, default=None)
    bench.add_argument('--threads', type=int, default=None)
    bench.add_argument('--no_progress', action='store_true')
    bench.set_defaults(func=do_bench)

    plot = subparsers.add_parser('plot', help='Gnuplot columns from a suite CSV.')
    plot.add_argument('--csv', required=True)
    plot.add_argument('--column', choices=['ratio', 'value_decimal', 'optimum_decimal', 'wall_time'], default='ratio')
    plot.add_argument('--output', type=str, default=None)
    plot.set_defaults(func=do_plot)

    return parser, parser.parse_args(args=args)


def main(args=None):
    parser, args = parse_args(args=args)
    if getattr(args, 'func', None) is None:
        parser.print_help()
        return EXIT_INVALID_INPUT
    try:
        set_logging_level(args.logging_level)
        args.func(args)
    except SizeLimitExceeded as e:
        logger.error(str(e))
        return EXIT_SIZE_LIMIT
    except (InstanceError, ScheduleError, ScenarioError, CnfError, GeneratorConfigError,
            UnknownSolverException, ValueError, OSError, json.JSONDecodeError) as e:
        logger.error(str(e))
        return EXIT_INVALID_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
