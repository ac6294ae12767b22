import json

import pytest

from demkit import settings
from demkit.cli import build_parser, main
from demkit.commands import EXIT_FALSE, EXIT_FALSIFIED, EXIT_INPUT, EXIT_OK


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ============================================================================
# CRYSTAL
# ============================================================================

def test_crystal_summary(capsys):
    code, out, _ = run(capsys, 'crystal', '--type', 'A2', '--weight', '1,1')
    assert code == EXIT_OK
    assert out.strip() == '8 elements, hw (1,1)'


def test_crystal_rank_one(capsys):
    code, out, _ = run(capsys, 'crystal', '--type', 'A1', '--weight', '3')
    assert code == EXIT_OK
    assert out.startswith('4 elements')


@pytest.mark.parametrize('weight', ['1,x', '1', '1,-1'])
def test_crystal_bad_weight(capsys, weight):
    code, _, err = run(capsys, 'crystal', '--type', 'A2', '--weight', weight)
    assert code == EXIT_INPUT
    assert err.startswith('error:')


def test_crystal_without_tableau_model(capsys):
    code, _, err = run(capsys, 'crystal', '--type', 'G2', '--weight', '1,0')
    assert code == EXIT_INPUT
    assert 'error:' in err


def test_crystal_export_import_is_stable(capsys, tmp_path):
    first, second = tmp_path / 'g.json', tmp_path / 'h.json'
    assert run(capsys, 'crystal', '--type', 'A2', '--weight', '2,1', '--out', str(first))[0] == EXIT_OK
    code, out, _ = run(capsys, 'crystal', '--import', str(first), '--validate', '--out', str(second))
    assert code == EXIT_OK
    assert out.strip() == '15 elements, hw (2,1)'
    assert first.read_bytes() == second.read_bytes()


def test_crystal_import_rejects_broken_file(capsys, tmp_path):
    path = tmp_path / 'g.json'
    run(capsys, 'crystal', '--type', 'A2', '--weight', '1,0', '--out', str(path))
    path.write_text(path.read_text()[:-7])
    code, _, err = run(capsys, 'crystal', '--import', str(path), '--validate')
    assert code == EXIT_INPUT
    assert err.startswith('error:')


def test_crystal_import_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, 'crystal', '--import', str(tmp_path / 'absent.json'))
    assert code == EXIT_INPUT


def test_crystal_dot_export(capsys, tmp_path):
    path = tmp_path / 'g.dot'
    run(capsys, 'crystal', '--type', 'A2', '--weight', '1,0', '--out', str(path), '--format', 'dot')
    assert path.read_text().startswith('digraph')


# ============================================================================
# DEMAZURE / TENSOR / CHAR
# ============================================================================

def test_demazure_listing(capsys, tmp_path):
    path = tmp_path / 'x.json'
    code, out, _ = run(capsys, 'demazure', '--type', 'A2', '--weight', '1,1', '--w', 's1*s2', '--out', str(path))
    assert code == EXIT_OK
    assert out.splitlines()[0] == 'B_{s1*s2}(1,1): 5 elements'
    assert 'character: ' in out
    assert len(json.loads(path.read_text())['members']) == 5


def test_demazure_bad_word(capsys):
    code, _, _ = run(capsys, 'demazure', '--type', 'A2', '--weight', '1,1', '--w', 's3')
    assert code == EXIT_INPUT


def test_tensor_decomposition(capsys):
    code, out, _ = run(capsys, 'tensor', '--type', 'A2', '--lambda', '1,0', '--mu', '1,0')
    assert code == EXIT_OK
    assert out.splitlines()[0] == 'B(1,0) (x) B(1,0): 9 elements, 2 components'
    assert sorted(out.splitlines()[1:]) == ['  B(0,1)', '  B(2,0)']


def test_char_match(capsys):
    code, out, _ = run(capsys, 'char', '--type', 'A2', '--weight', '1,1', '--w', 's1*s2', '--all-words')
    assert code == EXIT_OK
    assert out.splitlines()[-1] == 'match'


# ============================================================================
# ANALYZE
# ============================================================================

def test_analyze_counterexample(capsys):
    code, out, _ = run(capsys, 'analyze', '--type', 'A2', '--lambda', '0,1', '--w', 's2', '--mu', '1,0', '--u', 's1')
    assert code == EXIT_FALSE
    assert 'extremal: false' in out
    assert 'kouno: false' in out
    assert 'broken hinges: 1' in out
    assert 'decomposition failed' in out


def test_analyze_full_right_factor(capsys, tmp_path):
    path = tmp_path / 'hinges.json'
    code, out, _ = run(
        capsys, 'analyze', '--type', 'A2', '--lambda', '1,1', '--w', 's1*s2',
        '--mu', '1,1', '--u', 's1*s2*s1', '--out', str(path),
    )
    assert code == EXIT_OK
    assert 'demazure_sum: true' in out
    assert 'labels: ' in out
    assert json.loads(path.read_text())['n_broken'] == 0


def test_analyze_tensor_square_dot(capsys, tmp_path):
    path = tmp_path / 'square.dot'
    code, out, _ = run(
        capsys, 'analyze', '--type', 'A2', '--lambda', '1,1', '--w', '12',
        '--mu', '1,1', '--u', '12', '--out', str(path), '--format', 'dot',
    )
    assert code == EXIT_FALSE
    assert 'broken hinges: 2' in out
    assert 'red' in path.read_text()


def test_analyze_requires_dominant_weights(capsys):
    code, _, _ = run(capsys, 'analyze', '--type', 'A2', '--lambda=-1,1', '--w', 'id', '--mu', '1,0', '--u', 'id')
    assert code == EXIT_INPUT


# ============================================================================
# SWEEP / EXPERIMENT
# ============================================================================

def test_sweep_rank_one(capsys, tmp_path):
    path = tmp_path / 'sweep.tsv'
    code, out, _ = run(capsys, 'sweep', '--type', 'A1', '--bound', '1', '--out', str(path))
    assert code == EXIT_OK
    assert out.strip() == '16 instances, 0 disagreements'
    lines = path.read_text().splitlines()
    assert lines[0].split('\t')[0] == 'lambda'
    assert len(lines) == 17


def test_sweep_trivial_grid(capsys, tmp_path):
    code, out, _ = run(capsys, 'sweep', '--type', 'A2', '--bound', '0', '--out', str(tmp_path / 's.tsv'))
    assert code == EXIT_OK
    assert out.strip() == '36 instances, 0 disagreements'


def test_sweep_default_output(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(settings, 'DEFAULT_OUTPUT_DIR', tmp_path)
    assert run(capsys, 'sweep', '--type', 'A1', '--bound', '0')[0] == EXIT_OK
    assert (tmp_path / 'sweep-A1.tsv').exists()


def test_sweep_high_rank_needs_budget(capsys):
    code, _, err = run(capsys, 'sweep', '--type', 'B4', '--bound', '1')
    assert code == EXIT_INPUT
    assert '--budget' in err


def test_experiment(capsys):
    code, out, _ = run(capsys, 'experiment')
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == 'before: 2 broken hinges, extremal false, demazure_sum false'
    assert sum(line.startswith('removed f_2 edge') for line in lines) == 2
    assert 'after: 0 broken hinges, extremal true, demazure_sum true' in lines


def test_experiment_single_edge(capsys):
    code, out, _ = run(capsys, 'experiment', '--remove', 'first')
    assert code == EXIT_FALSE
    assert 'after: 1 broken hinges, extremal false, demazure_sum false' in out


def test_experiment_skip_removal(capsys):
    code, out, _ = run(capsys, 'experiment', '--skip-removal')
    assert code == EXIT_OK
    assert len(out.splitlines()) == 1


# ============================================================================
# PARSER
# ============================================================================

def test_budget_before_or_after_subcommand():
    parser = build_parser()
    assert parser.parse_args(['--budget', '5', 'experiment']).budget == 5
    assert parser.parse_args(['experiment', '--budget', '7']).budget == 7
    assert getattr(parser.parse_args(['experiment']), 'budget', None) is None
    args = parser.parse_args(['--log-level', 'DEBUG', 'tensor', '--type', 'A2', '--lambda', '1,0', '--mu', '1,0'])
    assert args.log_level == 'DEBUG'


def test_budget_flag_limits_products(capsys):
    code, _, err = run(capsys, '--budget', '10', 'tensor', '--type', 'A2', '--lambda', '1,1', '--mu', '1,1')
    assert code == EXIT_INPUT
    assert 'budget' in err


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_FALSIFIED}) == 4


def test_budget_before_subcommand_lifts_rank_guard(capsys):
    code, _, err = run(capsys, '--budget', '100', 'sweep', '--type', 'B4', '--bound', '0')
    assert code == EXIT_INPUT
    assert '--budget' not in err
    assert settings.ELEMENT_BUDGET == 100


def test_handled_input_error_is_the_only_stderr_line(capsys):
    code, _, err = run(capsys, 'crystal', '--type', 'A2', '--weight', '2,-1')
    assert code == EXIT_INPUT
    assert err.splitlines() == ["error: weight (2, -1) is not dominant"]
