"""
Tests of the instance generators, the experiment harness and the command line
"""

import io
import json
from fractions import Fraction

import pytest

from robsched.bench.generate import FAMILIES, SAT_GAP, UNRELATED_RANDOM, IDENTICAL_UNIFORM_RANDOM, IDENTICAL_CORRELATED, \
    GeneratorConfig, GeneratorConfigError, generate, generate_many
from robsched.bench.main import main, EXIT_OK, EXIT_INVALID_INPUT, EXIT_SIZE_LIMIT
from robsched.bench.suite import CSV_COLUMNS, ExperimentRecord, run_suite, summarize, write_csv, read_csv, \
    write_json, gnuplot_columns
from robsched.models.common.instance import Instance, Schedule
from robsched.models.common.objective import worst_case_makespan
from robsched.models.ptas.dual import eptas_guarantee
from robsched.pipeline.core import Pipeline
from tests import *

pytestmark = pytest.mark.bench


@pytest.mark.parametrize('family', FAMILIES)
def test_generate_deterministic(family):
    config = GeneratorConfig(seed=11, family=family, forbidden_rate=0.3, denominator=2)
    first, second = generate(config), generate(config)
    assert first.to_json() == second.to_json()
    assert first == second
    assert all(a.to_json() == b.to_json()
               for (_, _, a), (_, _, b) in zip(generate_many(config, 3), generate_many(config, 3)))


def test_generate_ranges():
    config = GeneratorConfig(seed=3, jobs=(5, 5), machines=(2, 2), gamma=(0, 0), magnitude=(1, 4), denominator=4)
    instance = generate(config)
    assert instance.job_count == 5 and instance.machine_count == 2 and instance.gamma == 0
    assert all(Fraction(1, 4) <= p <= 1 for p in instance.job_p_bar)


def test_generate_sat_gap():
    for _, _, instance in generate_many(GeneratorConfig(family=SAT_GAP, variables=(3, 5), clauses=(2, 6)), 5):
        assert instance.gamma == 1
        assert instance.machine_count % 2 == 0
        assert 3 <= instance.machine_count // 2 <= 5


def test_generate_unrelated_keeps_every_job_placeable():
    config = GeneratorConfig(family=UNRELATED_RANDOM, forbidden_rate=0.9, machines=(3, 4))
    for _, _, instance in generate_many(config, 10):
        for j in range(instance.job_count):
            assert any(instance.is_allowed(i, j) for i in range(instance.machine_count))


def test_generate_many_ids():
    batch = generate_many(GeneratorConfig(seed=5), 2)
    assert [instance_id for instance_id, _, _ in batch] == \
        [f'{IDENTICAL_UNIFORM_RANDOM}-5', f'{IDENTICAL_UNIFORM_RANDOM}-6']
    assert batch[1][1].seed == 6


@pytest.mark.parametrize('settings', [
    {'jobs': (3, 2)},
    {'jobs': (0, 2)},
    {'family': 'circular'},
    {'forbidden_rate': 1.0},
    {'denominator': 0},
    {'gamma': (1, 2, 3)},
])
def test_generator_config_errors(settings):
    with pytest.raises(GeneratorConfigError):
        GeneratorConfig(**settings)


def test_generator_config_dict():
    config = GeneratorConfig(seed=4, family=SAT_GAP, jobs=(1, 2))
    assert GeneratorConfig.from_dict(config.to_dict()) == config
    assert GeneratorConfig.from_dict({'jobs': [2, 3]}).jobs == (2, 3)
    with pytest.raises(GeneratorConfigError):
        GeneratorConfig.from_dict({'colour': 'red'})


def small_batch(count=6, seed=1):
    return generate_many(GeneratorConfig(seed=seed, jobs=(2, 5), machines=(1, 2), gamma=(0, 2)), count)


def test_run_suite():
    batch = small_batch()
    records = run_suite(batch, ['bnb', 'exact', 'approx3'], threads=2, progress=False)
    assert len(records) == 3 * len(batch)
    assert [(r.instance_id, r.solver) for r in records] == sorted((r.instance_id, r.solver) for r in records)
    for record in records:
        assert not record.error
        if record.solver in ('exact', 'bnb'):
            assert record.ratio == 1
        else:
            assert record.ratio <= Fraction(202, 100)
            assert record.delta == '1/100'
    assert 'approx3' in summarize(records)


def test_run_suite_repeatable():
    batch = small_batch(4, seed=9)

    def numeric_rows():
        buffer = io.StringIO()
        write_csv(run_suite(batch, 'bnb,approx3,ptas', threads=2, progress=False), buffer)
        buffer.seek(0)
        return [{k: v for k, v in row.items() if k != 'wall_time'} for row in read_csv(buffer)]

    first = numeric_rows()
    assert len(first) == 3 * len(batch)
    assert numeric_rows() == first


@pytest.mark.slow
def test_run_suite_schemes():
    batch = generate_many(GeneratorConfig(seed=21, jobs=(2, 5), machines=(1, 3), gamma=(1, 2)), 6) + \
        generate_many(GeneratorConfig(seed=21, family=IDENTICAL_CORRELATED, jobs=(2, 5), machines=(1, 3)), 6)
    records = run_suite(batch, 'ptas,eptas', threads=2, progress=False)
    instances = {instance_id: instance for instance_id, _, instance in batch}
    pipeline = Pipeline(solvers='ptas,eptas')
    delta = Fraction(1, 100)
    for record in records:
        assert not record.error
        assert record.epsilon == '1/5'
        if record.solver == 'ptas':
            assert record.ratio <= 2
        else:
            assert record.ratio <= eptas_guarantee(Fraction(1, 5)) * (1 + delta)
        instance = instances[record.instance_id]
        result = pipeline(instance)[record.solver]
        assert record.value == worst_case_makespan(instance, result.schedule)


def test_run_suite_records_failures():
    instance = Instance.unrelated([[1, 1, 1], [1, 1, 1]], [[1, 1, 1], [1, 1, 1]], 1)
    batch = [('broken', GeneratorConfig(family=UNRELATED_RANDOM), instance)]
    records = run_suite(batch, 'approx3', progress=False, approx3_subroutine='list')
    assert len(records) == 1
    assert 'InstanceError' in records[0].error
    assert records[0].value is None and records[0].ratio is None
    assert records[0].optimum == 3


def test_run_suite_without_oracle():
    records = run_suite(small_batch(2), 'bnb', oracle=False, progress=False)
    assert all(r.optimum is None and r.ratio is None and r.value is not None for r in records)


def test_csv_and_json():
    records = run_suite(small_batch(3), 'bnb,approx3', progress=False)
    buffer = io.StringIO()
    write_csv(records, buffer)
    buffer.seek(0)
    assert buffer.readline().strip().split(',') == CSV_COLUMNS
    buffer.seek(0)
    rows = read_csv(buffer)
    assert len(rows) == len(records)
    for row, record in zip(rows, records):
        assert Fraction(row['value']) == record.value
        assert Fraction(row['optimum']) == record.optimum
    buffer = io.StringIO()
    write_json(records, buffer)
    data = json.loads(buffer.getvalue())
    assert [d['solver'] for d in data] == [r.solver for r in records]


def test_record_ratio():
    record = ExperimentRecord('x', 'f', 1, 1, 0, 'bnb', value=Fraction(0), optimum=Fraction(0))
    assert record.ratio == 1
    record.value = Fraction(3)
    assert record.ratio is None
    record.optimum = Fraction(2)
    assert record.ratio == Fraction(3, 2)
    assert record.to_row()['ratio'] == '1.500000'


def test_gnuplot_columns():
    rows = [{'instance_id': 'a', 'solver': 'bnb', 'ratio': '1.000000'},
            {'instance_id': 'a', 'solver': 'ptas', 'ratio': '1.250000'},
            {'instance_id': 'b', 'solver': 'bnb', 'ratio': ''}]
    assert gnuplot_columns(rows) == '# index instance bnb ptas\n0 a 1.000000 1.250000\n1 b NaN NaN\n'


def write_schedule(path, assignment):
    path.write_text(Schedule(assignment).to_json())
    return str(path)


def test_cli_evaluate(tmp_path, capsys):
    schedule = write_schedule(tmp_path / 'schedule.json', [0, 1, 0])
    assert main(['evaluate', '--instance', EXAMPLE_INSTANCE, '--schedule', schedule, '--scenario']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'worst-case makespan: 9/2' in out
    assert 'worst scenario' in out
    broken = write_schedule(tmp_path / 'short.json', [0])
    assert main(['evaluate', '--instance', EXAMPLE_INSTANCE, '--schedule', broken]) == EXIT_INVALID_INPUT


def test_cli_solve(tmp_path):
    output = str(tmp_path / 'out.json')
    assert main(['solve', '--instance', EXAMPLE_INSTANCE, '--algo', 'bnb', '--output', output]) == EXIT_OK
    instance = Instance.load(EXAMPLE_INSTANCE)
    assert worst_case_makespan(instance, Schedule.load(output)) == Fraction(9, 2)
    assert main(['solve', '--instance', EXAMPLE_INSTANCE, '--algo', 'ptas', '--epsilon', '1/5',
                 '--output', output]) == EXIT_OK
    assert worst_case_makespan(instance, Schedule.load(output)) <= 2 * Fraction(9, 2)


def test_cli_invalid_input(tmp_path):
    bad = tmp_path / 'bad.json'
    bad.write_text('not json')
    assert main(['solve', '--instance', str(bad)]) == EXIT_INVALID_INPUT
    assert main(['solve', '--instance', str(tmp_path / 'missing.json')]) == EXIT_INVALID_INPUT
    assert main([]) == EXIT_INVALID_INPUT
    assert main(['--logging_level', 'loud', 'solve', '--instance', EXAMPLE_INSTANCE]) == EXIT_INVALID_INPUT


def test_cli_size_limit(tmp_path):
    path = str(tmp_path / 'big.json')
    Instance.identical([1] * 13, [0] * 13, 3, 0).save(path)
    assert main(['solve', '--instance', path, '--algo', 'exact']) == EXIT_SIZE_LIMIT


def test_cli_gen(tmp_path, capsys):
    assert main(['gen', '--seed', '2', '--jobs', '3,4']) == EXIT_OK
    instance = Instance.from_json(capsys.readouterr().out)
    assert 3 <= instance.job_count <= 4
    out_dir = tmp_path / 'instances'
    assert main(['gen', '--family', SAT_GAP, '--count', '2', '--output_dir', str(out_dir)]) == EXIT_OK
    assert sorted(p.name for p in out_dir.iterdir()) == [f'{SAT_GAP}-0.json', f'{SAT_GAP}-1.json']
    assert main(['gen', '--jobs', '5,2']) == EXIT_INVALID_INPUT


def test_cli_sat_gap(tmp_path, capsys):
    output = str(tmp_path / 'gap.json')
    assert main(['sat-gap', '--cnf', UNSAT_CNF, '--output', output, '--check']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'satisfiable: False' in out
    assert 'optimum: 2' in out
    assert Instance.load(output).machine_count == 6


def test_cli_bench_and_plot(tmp_path):
    config = {'generators': [{'seed': 1, 'jobs': [2, 4], 'machines': [1, 2]},
                             {'seed': 1, 'family': SAT_GAP, 'variables': [1, 3], 'clauses': [1, 3], 'count': 1}],
              'count': 2, 'solvers': ['bnb', 'approx3'], 'threads': 1}
    config_path = tmp_path / 'suite.json'
    config_path.write_text(json.dumps(config))
    csv_path = tmp_path / 'out' / 'suite.csv'
    assert main(['bench', '--config', str(config_path), '--csv', str(csv_path), '--no_progress']) == EXIT_OK
    with open(csv_path, newline='') as fin:
        rows = read_csv(fin)
    assert len(rows) == 3 * 2
    assert {row['instance_id'].split('-')[0] for row in rows} == {'g0', 'g1'}
    plot_path = tmp_path / 'ratio.dat'
    assert main(['plot', '--csv', str(csv_path), '--output', str(plot_path)]) == EXIT_OK
    lines = plot_path.read_text().splitlines()
    assert lines[0] == '# index instance approx3 bnb'
    assert len(lines) == 1 + 3
