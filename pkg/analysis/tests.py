import io
from itertools import product

import pytest

from demkit.exceptions import BudgetExceeded, HypothesisViolation, InvalidInput, TheoremFalsified
from lie.cartan import build_cartan
from lie.weyl import enumerate_weyl_group, from_word, identity, longest_element, simple_reflection
from crystals.models import Subcrystal
from crystals.operations import eps, phi, remove_edge
from crystals.tableaux import highest_weight_crystal
from demazure.models import DemazureLabel
from demazure.subsets import decompose_demazure, demazure_subset
from analysis import classify, hinges
from analysis.classify import classify_demazure_product, component_census
from analysis.diagonal import (
    diagonal_component,
    diagonal_label,
    diagonal_theorem_check,
    lemma_diagonal_check,
    tensor_power_diagonal_check,
)
from analysis.experiments import edge_removal_experiment
from analysis.extremal import (
    enumerate_extremal_subsets,
    factor_closure_check,
    is_extremal,
    product_subset,
)
from analysis.hinges import (
    active_broken_hinges,
    find_hinges,
    hinge_criterion,
    hinge_report_to_dot,
    hinge_report_to_json,
)
from analysis.sweeps import dominant_weights, run_sweep, run_task, summary, sweep_grid, write_tsv

A1 = build_cartan('A', 1)
A2 = build_cartan('A', 2)

S1 = simple_reflection(A2, 1)
S2 = simple_reflection(A2, 2)
S1S2 = from_word(A2, (1, 2))
W0 = longest_element(A2)

SWEEP_A2_WEIGHTS = [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]


def assert_closed_string_data(product_):
    """eps/phi of every a (x) b agree with the closed formulas in the factors."""
    g1, g2 = product_.factors
    for ab in product_.elements:
        pair = product_.pair(ab)
        a, b = pair.left, pair.right
        for i in product_.cartan.indices:
            assert eps(product_, ab, i) == max(eps(g1, a, i), eps(g1, a, i) + eps(g2, b, i) - phi(g1, a, i))
            assert phi(product_, ab, i) == max(phi(g2, b, i), phi(g1, a, i) + phi(g2, b, i) - eps(g2, b, i))


def assert_sweep_ambients(c, weights):
    for lam, mu in product(weights, repeat=2):
        _, _, ambient = classify._ambient_product(c, tuple(lam), tuple(mu))
        assert_closed_string_data(ambient)


@pytest.fixture
def square(b_rho):
    """B_{s1 s2}(rho) (x) B_{s1 s2}(rho) inside B(rho) (x) B(rho)."""
    X = demazure_subset(b_rho, S1S2)
    ambient, S = product_subset(b_rho, X, b_rho, X)
    assert_closed_string_data(ambient)
    return X, ambient, S


def counterexample():
    gx, gy = highest_weight_crystal(A2, (0, 1)), highest_weight_crystal(A2, (1, 0))
    return gx, demazure_subset(gx, S2), gy, demazure_subset(gy, S1)


# ============================================================================
# EXTREMALITY
# ============================================================================

def test_full_crystal_is_extremal(b_rho):
    assert is_extremal(b_rho, set(b_rho.elements)).extremal


def test_extremal_but_not_demazure(b_rho, rho_elements):
    e = rho_elements
    triple = {e['b'], e['p'], e['q']}
    assert is_extremal(b_rho, triple).extremal
    assert not decompose_demazure(b_rho, Subcrystal(b_rho, frozenset(triple))).succeeded


def test_rank_one_prefix_is_not_extremal():
    g = highest_weight_crystal(A1, (1,))
    ambient, S = product_subset(g, {0, 1}, g, {0})
    report = is_extremal(ambient, S)
    assert not report.extremal
    (violation,) = report.violations
    assert violation.color == 1
    assert len(violation.string) == 3
    assert violation.pattern == (True, True, False)


def test_empty_subset_rejected(b_rho):
    with pytest.raises(InvalidInput):
        is_extremal(b_rho, set())


def test_product_subset_sizes():
    gx, X, gy, Y = counterexample()
    ambient, S = product_subset(gx, X, gy, Y)
    assert len(ambient) == 9
    assert len(S) == 4


def test_enumerate_extremal_subsets(b_rho, rho_elements):
    e = rho_elements
    found = [subset.members for subset in enumerate_extremal_subsets(b_rho)]
    assert frozenset({e['b']}) in found
    assert frozenset(b_rho.elements) in found
    assert frozenset({e['b'], e['p'], e['q']}) in found
    assert frozenset({e['b'], e['r']}) not in found
    for w in enumerate_weyl_group(A2):
        assert demazure_subset(b_rho, w).members in found


def test_demazure_subsets_are_extremal():
    for lam in SWEEP_A2_WEIGHTS:
        g = highest_weight_crystal(A2, lam)
        for w in enumerate_weyl_group(A2):
            assert is_extremal(g, demazure_subset(g, w)).extremal


# ============================================================================
# HINGES
# ============================================================================

def test_no_broken_hinges_against_full_factor(b_rho):
    g = highest_weight_crystal(A2, (1, 0))
    assert find_hinges(b_rho, {0}, g, set(g.elements)).hinge_free


def test_rank_one_hinge():
    g = highest_weight_crystal(A1, (1,))
    report = find_hinges(g, {0, 1}, g, {0})
    (hinge,) = report.hinges
    assert (hinge.left, hinge.right, hinge.color) == (1, 0, 1)
    assert hinge.broken
    assert hinge.witness == 3


def test_tensor_square_hinges(b_rho, rho_elements, square):
    e = rho_elements
    X, ambient, S = square
    report = find_hinges(b_rho, X, b_rho, X, product=ambient)
    assert len(report.hinges) == 7
    broken = {(h.left, h.right, h.color) for h in report.broken}
    assert broken == {(e['q'], e['p'], 2), (e['q'], e['s'], 2)}
    witnesses = {ambient.pair(h.witness) for h in report.broken}
    assert {(pair.left, pair.right) for pair in witnesses} == {(e['q'], e['t']), (e['q'], e['z'])}
    sources = {ambient.pair(ambient.e(h.element, 2)) for h in report.broken}
    assert {(pair.left, pair.right) for pair in sources} == {(e['b'], e['p']), (e['b'], e['s'])}


def test_hinge_flag_depends_only_on_the_witness(b_rho, square):
    X, ambient, _ = square
    report = find_hinges(b_rho, X, b_rho, X, product=ambient)
    for hinge in report.hinges:
        keep = {hinge.right, b_rho.f(hinge.right, hinge.color)}
        for dropped in X.members - keep:
            smaller = find_hinges(b_rho, X, b_rho, X.members - {dropped}, product=ambient)
            same = [h for h in smaller.hinges if h.element == hinge.element and h.color == hinge.color]
            assert [h.broken for h in same] == [hinge.broken]


def test_hinge_exports(b_rho, square):
    X, ambient, S = square
    report = find_hinges(b_rho, X, b_rho, X, product=ambient)
    assert '"n_broken":2' in hinge_report_to_json(report)
    assert 'red' in hinge_report_to_dot(ambient, S, report)


def test_hinge_criterion():
    gx, gy = highest_weight_crystal(A2, (1, 1)), highest_weight_crystal(A2, (1, 0))
    assert hinge_criterion(gx, {0}, gy, demazure_subset(gy, S1))
    assert hinge_criterion(gx, demazure_subset(gx, S1S2), gy, set(gy.elements))
    assert not hinge_criterion(*counterexample())


def test_hinge_criterion_rejects_non_extremal_factor():
    g = highest_weight_crystal(A1, (2,))
    with pytest.raises(HypothesisViolation):
        hinge_criterion(g, {0, 1}, g, {0})


def test_extremal_singleton_times_non_demazure_triple(b_rho, rho_elements):
    e = rho_elements
    trivial = highest_weight_crystal(A2, (0, 0))
    triple = {e['b'], e['p'], e['q']}
    assert hinge_criterion(trivial, {0}, b_rho, triple)
    ambient, S = product_subset(trivial, {0}, b_rho, triple)
    assert not decompose_demazure(ambient, S).succeeded


def test_hinge_criterion_beyond_demazure_factors(b_rho):
    small = highest_weight_crystal(A2, (1, 0))
    candidates = [(g, subset) for g in (small, b_rho) for subset in enumerate_extremal_subsets(g)]
    for (gx, X), (gy, Y) in product(candidates, repeat=2):
        # raises TheoremFalsified on disagreement
        hinge_criterion(gx, X, gy, Y)


# ============================================================================
# FOUR VERDICTS
# ============================================================================

def test_classify_counterexample():
    verdict = classify_demazure_product((0, 1), S2, (1, 0), S1)
    assert verdict.verdicts == (False, False, False, False)
    assert verdict.n_broken_hinges == 1
    assert verdict.labels is None


def test_classify_tensor_square():
    verdict = classify_demazure_product((1, 1), S1S2, (1, 1), S1S2)
    assert verdict.verdicts == (False, False, False, False)
    assert verdict.n_broken_hinges == 2


def test_classify_with_full_right_factor():
    for lam, mu in [((1, 1), (1, 1)), ((0, 1), (1, 0)), ((2, 0), (0, 2))]:
        for w in enumerate_weyl_group(A2):
            verdict = classify_demazure_product(lam, w, mu, W0)
            assert verdict.agree and verdict.demazure_sum


def test_classify_with_identity_left_factor():
    verdict = classify_demazure_product((1, 1), identity(A2), (1, 0), S1)
    assert verdict.verdicts == (True, True, True, True)
    assert verdict.labels


def test_classify_rejects_non_dominant():
    with pytest.raises(InvalidInput):
        classify_demazure_product((1, -1), S1, (1, 0), S1)


def test_classify_with_given_ambients():
    gx, X, gy, Y = counterexample()
    verdict = classify_demazure_product((0, 1), S2, (1, 0), S1, ambients=(gx, gy))
    assert not verdict.demazure_sum


def test_tensor_square_components(square):
    _, ambient, S = square
    assert len(S) == 25 and len(ambient) == 64
    census = component_census(ambient, S)
    assert sorted(entry.size for entry in census) == [3, 4, 6, 12]
    recognized = {entry.label for entry in census if entry.label is not None}
    assert recognized == {DemazureLabel.of((2, 2), S1S2), DemazureLabel.of((3, 0), S1)}
    assert sorted(entry.extremal for entry in census) == [False, False, True, True]


# ============================================================================
# DIAGONAL COMPONENT
# ============================================================================

def test_diagonal_component_sizes(b_rho):
    g = highest_weight_crystal(A1, (1,))
    assert len(diagonal_component(g, g)) == 3
    assert len(diagonal_component(b_rho, b_rho)) == 27


def test_diagonal_theorem():
    assert diagonal_label((1, 1), (1, 1), S1S2, S1S2) == DemazureLabel.of((2, 2), S1S2)
    assert diagonal_theorem_check((1, 1), (1, 1), S1S2, S1S2)
    assert diagonal_label((1, 1), (1, 1), identity(A2), identity(A2)) == DemazureLabel.of((2, 2), identity(A2))
    assert diagonal_label((1, 1), (1, 0), W0, W0) == DemazureLabel.of((2, 1), W0)
    assert diagonal_theorem_check((1, 1), (2, 1), S1, S1S2)


def test_diagonal_hypotheses():
    with pytest.raises(HypothesisViolation):
        diagonal_theorem_check((1, 0), (0, 1), S1, S1)
    with pytest.raises(HypothesisViolation):
        diagonal_theorem_check((1, 1), (1, 1), S1, S2)


def test_diagonal_lemma(b_rho):
    assert lemma_diagonal_check(b_rho, b_rho)
    assert lemma_diagonal_check(highest_weight_crystal(A2, (2, 1)), highest_weight_crystal(A2, (1, 1)))


@pytest.mark.parametrize('m', [1, 2, 3])
def test_tensor_power_diagonal(m):
    assert tensor_power_diagonal_check((1, 1), S1S2, m)


def test_tensor_power_guards():
    with pytest.raises(InvalidInput):
        tensor_power_diagonal_check((1, 1), S1S2, 0)
    with pytest.raises(BudgetExceeded):
        tensor_power_diagonal_check((1, 1), S1S2, 3, budget=100)


# ============================================================================
# FACTOR CLOSURE
# ============================================================================

def test_factor_closure_demazure_times_full():
    gx, gy = highest_weight_crystal(A2, (1, 1)), highest_weight_crystal(A2, (1, 0))
    report = factor_closure_check(gx, demazure_subset(gx, S1S2), gy, set(gy.elements))
    assert report.x_e_closed and report.y_e_closed and report.x_extremal


def test_factor_closure_with_non_extremal_right_factor():
    gx, gy = highest_weight_crystal(A2, (2, 2)), highest_weight_crystal(A2, (2, 0))
    report = factor_closure_check(gx, {0}, gy, {0, gy.f(0, 1)})
    assert report.x_e_closed
    assert report.y_e_closed
    assert report.x_extremal
    assert not report.y_extremal


def test_factor_closure_needs_extremal_product():
    with pytest.raises(HypothesisViolation):
        factor_closure_check(*counterexample())


# ============================================================================
# SWEEPS
# ============================================================================

def test_rank_one_sweep():
    rows = run_sweep(A1, dominant_weights(A1, 3), jobs=1)
    assert_sweep_ambients(A1, dominant_weights(A1, 3))
    assert len(rows) == 64
    assert summary(rows) == '64 instances, 0 disagreements'
    for row in rows:
        if row.w == 's1' and row.u == 'id' and row.lam != '0' and row.mu != '0':
            assert not (row.extremal or row.kouno or row.demazure_sum or row.broken_hinge_free)


def test_rank_two_sweep():
    rows = run_sweep(A2, SWEEP_A2_WEIGHTS, jobs=1)
    assert_sweep_ambients(A2, SWEEP_A2_WEIGHTS)
    assert len(rows) == 900
    assert not any(row.disagreement for row in rows)


def test_trivial_grid_is_all_true():
    rows = run_sweep(A2, dominant_weights(A2, 0), jobs=1)
    assert_sweep_ambients(A2, dominant_weights(A2, 0))
    assert len(rows) == 36
    assert all(row.extremal and row.kouno and row.demazure_sum for row in rows)


def test_parallel_sweep_keeps_grid_order():
    weights = dominant_weights(A1, 2)
    assert run_sweep(A1, weights, jobs=2) == run_sweep(A1, weights, jobs=1)


def test_sweep_tsv():
    rows = run_sweep(A1, [(1,)], jobs=1)
    handle = io.StringIO()
    write_tsv(rows, handle)
    lines = handle.getvalue().splitlines()
    assert lines[0] == 'lambda\tmu\tw\tu\tn_broken_hinges\textremal\tkouno\tdemazure_sum\tlabels'
    assert len(lines) == 5
    assert 's1\tid\t1\tfalse\tfalse\tfalse\t-' in handle.getvalue()


def test_sweep_grid_order():
    tasks = sweep_grid(A1, [(0,), (1,)])
    assert [task[1] for task in tasks[:4]] == [(0,)] * 4
    assert tasks[0][2] == () and tasks[1][4] == (1,)


@pytest.fixture
def fresh_verdict_cache():
    classify._cached_verdicts.cache_clear()
    yield
    classify._cached_verdicts.cache_clear()


def test_sweep_records_falsification_without_verdict(monkeypatch, fresh_verdict_cache):
    def mismatch(*args):
        raise TheoremFalsified('hinge action mismatch', record={'element': 0})

    monkeypatch.setattr(hinges, '_check_hinge_action', mismatch)
    row = run_task(sweep_grid(A1, [(1,)])[2])
    assert row.disagreement
    assert (row.lam, row.mu, row.w, row.u) == ('1', '1', 's1', 'id')
    assert row.as_tsv()[4:] == ['-'] * 5
    assert summary([row]) == '1 instances, 1 disagreements'


# ============================================================================
# EDGE REMOVAL
# ============================================================================

def test_edge_removal_both():
    report = edge_removal_experiment('both')
    assert report.before_broken == 2
    assert not report.before_extremal
    assert not report.before_decomposable
    assert [i for i, _, _ in report.removed] == [2, 2]
    assert report.after_active_broken == 0
    assert report.after_extremal
    assert report.after_decomposable
    assert report.after_valid
    assert report.succeeded
    assert sorted(report.after_labels, key=DemazureLabel.sort_key) == sorted([
        DemazureLabel.of((2, 2), S1S2),
        DemazureLabel.of((3, 0), S1),
        DemazureLabel.of((0, 3), identity(A2)),
        DemazureLabel.of((1, 1), S1),
        DemazureLabel.of((1, 1), S1S2),
        DemazureLabel.of((0, 0), identity(A2)),
    ], key=DemazureLabel.sort_key)


@pytest.mark.parametrize('which', ['first', 'second'])
def test_edge_removal_single_edge(which):
    report = edge_removal_experiment(which)
    assert len(report.removed) == 1
    assert report.after_active_broken == 1
    assert not report.after_extremal
    assert not report.succeeded


def test_edge_removal_skipped():
    report = edge_removal_experiment('none')
    assert not report.performed
    assert report.before_broken == 2
    assert report.after_extremal is None


def test_edge_removal_rejects_unknown_choice():
    with pytest.raises(InvalidInput):
        edge_removal_experiment('all')


def test_active_broken_hinges_after_removal(b_rho, square):
    X, ambient, _ = square
    report = find_hinges(b_rho, X, b_rho, X, product=ambient)
    first = report.broken[0]
    modified = remove_edge(ambient, ambient.e(first.element, first.color), first.color)
    assert active_broken_hinges(modified, report) == report.broken[1:]
