from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demkit.exceptions import CartanMismatch, InvalidInput
from lie.cartan import build_cartan
from lie.weyl import (
    bruhat_leq,
    enumerate_weyl_group,
    from_word,
    identity,
    left_descents,
    length,
    longest_element,
    max_coset_rep,
    min_coset_rep,
    multiply,
    simple_reflection,
)
from crystals.models import Subcrystal
from crystals.operations import closure_E_all, closure_Fi, tensor
from crystals.tableaux import highest_weight_crystal
from demazure.characters import apply_word, character, demazure_character_check, demazure_operator
from demazure.models import DemazureLabel, LaurentPolynomial, RecognitionFailure
from demazure.subsets import (
    decompose_demazure,
    demazure_subset,
    highest_weight_top,
    minimal_expansion_word,
    recognize_demazure,
    reduced_word_independence_check,
)

A1 = build_cartan('A', 1)
A2 = build_cartan('A', 2)
A3 = build_cartan('A', 3)

# dominant A2 weights with coordinate sum at most 3
SMALL_A2_WEIGHTS = [lam for lam in product(range(4), repeat=2) if 0 < sum(lam) <= 3]
SWEEP_A2_WEIGHTS = [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]


def x(*exponent):
    return LaurentPolynomial.monomial(exponent)


# ============================================================================
# LABELS AND POLYNOMIALS
# ============================================================================

def test_label_is_canonical():
    s2 = simple_reflection(A2, 2)
    label = DemazureLabel.of((1, 0), s2)
    assert label.weyl == identity(A2)
    assert str(DemazureLabel.of((1, 1), from_word(A2, (1, 2)))) == 'B_{s1*s2}(1,1)'


def test_polynomial_canonical_form():
    assert LaurentPolynomial({(1, 1): 0}) == LaurentPolynomial()
    assert not LaurentPolynomial({(1, 1): 0})
    assert len(x(1, 1) + x(1, 1)) == 1
    assert (x(1, 1) - x(1, 1)).terms == {}


def test_polynomial_text():
    assert str(x(1, 1) + x(-1, 2)) == 'x^(1,1) + x^(-1,2)'
    assert str(LaurentPolynomial({(0,): -1})) == '-x^(0)'
    assert str(2 * x(1, 0) - x(0, 1)) == '2x^(1,0) - x^(0,1)'
    assert str(LaurentPolynomial()) == '0'


# ============================================================================
# DEMAZURE SUBSETS
# ============================================================================

def test_demazure_subset_examples(b_rho, rho_elements):
    e = rho_elements
    assert demazure_subset(b_rho, identity(A2)).members == {e['b']}
    assert demazure_subset(b_rho, longest_element(A2)).members == frozenset(b_rho.elements)
    assert demazure_subset(b_rho, from_word(A2, (1, 2))).members == {e['b'], e['p'], e['q'], e['r'], e['s']}


def test_demazure_subset_needs_connected_ambient(b_rho):
    with pytest.raises(InvalidInput):
        demazure_subset(tensor(b_rho, b_rho), identity(A2))
    with pytest.raises(CartanMismatch):
        demazure_subset(b_rho, identity(A3))


def test_reduced_word_independence():
    assert reduced_word_independence_check(highest_weight_crystal(A2, (1, 1)), longest_element(A2))
    assert reduced_word_independence_check(highest_weight_crystal(A3, (0, 1, 0)), from_word(A3, (1, 3)))
    for c, lam in ((A2, (1, 1)), (A2, (2, 1)), (A3, (0, 1, 0)), (A3, (1, 0, 1))):
        g = highest_weight_crystal(c, lam)
        for w in enumerate_weyl_group(c):
            assert reduced_word_independence_check(g, w)


def test_minimal_expansion_words(rho_elements):
    assert minimal_expansion_word(highest_weight_crystal(A1, (1,)), 1).letters == (1,)
    g = highest_weight_crystal(A2, (1, 1))
    assert minimal_expansion_word(g, rho_elements['b']).letters == ()
    assert minimal_expansion_word(g, rho_elements['s']).letters == (1, 2)
    with pytest.raises(InvalidInput):
        minimal_expansion_word(g, 99)


def test_minimal_expansion_words_are_reduced():
    for lam in ((1, 1), (2, 1)):
        g = highest_weight_crystal(A2, lam)
        for b in g.elements:
            word = minimal_expansion_word(g, b)
            assert length(from_word(A2, word.letters)) == len(word)
            assert b in demazure_subset(g, from_word(A2, word.letters))


def test_containment_matches_coset_bruhat_order():
    for lam in ((1, 0), (0, 1), (1, 1)):
        g = highest_weight_crystal(A2, lam)
        group = enumerate_weyl_group(A2)
        subsets = {w: demazure_subset(g, w).members for w in group}
        for v, w in product(group, repeat=2):
            contained = subsets[v] <= subsets[w]
            assert contained == bruhat_leq(min_coset_rep(v, lam), w)
            assert contained == bruhat_leq(v, max_coset_rep(w, lam))


def test_demazure_subsets_are_e_closed():
    for lam in SMALL_A2_WEIGHTS:
        g = highest_weight_crystal(A2, lam)
        for w in enumerate_weyl_group(A2):
            subset = demazure_subset(g, w)
            assert closure_E_all(g, subset).members == subset.members


def test_demazure_subsets_grow_one_reflection_at_a_time():
    for lam in SWEEP_A2_WEIGHTS:
        g = highest_weight_crystal(A2, lam)
        for w in enumerate_weyl_group(A2):
            for i in A2.indices:
                if i in left_descents(w):
                    continue
                bigger = multiply(simple_reflection(A2, i), w)
                assert demazure_subset(g, bigger).members == closure_Fi(g, demazure_subset(g, w), i).members


# ============================================================================
# RECOGNITION AND DECOMPOSITION
# ============================================================================

def test_recognize_examples(b_rho, rho_elements):
    e = rho_elements
    assert recognize_demazure(b_rho, {e['b']}) == DemazureLabel.of((1, 1), identity(A2))
    failure = recognize_demazure(b_rho, {e['b'], e['p'], e['q']})
    assert isinstance(failure, RecognitionFailure)
    assert not failure
    five = {e['b'], e['p'], e['q'], e['r'], e['s']}
    assert recognize_demazure(b_rho, five) == DemazureLabel.of((1, 1), from_word(A2, (1, 2)))


def test_recognize_without_top(b_rho, rho_elements):
    assert not recognize_demazure(b_rho, {rho_elements['p']})


def test_recognition_round_trip():
    for lam in SWEEP_A2_WEIGHTS:
        g = highest_weight_crystal(A2, lam)
        for w in enumerate_weyl_group(A2):
            assert recognize_demazure(g, demazure_subset(g, w)) == DemazureLabel.of(lam, w)


def test_decompose_full_product():
    g = highest_weight_crystal(A2, (1, 0))
    product_ = tensor(g, g)
    decomposition = decompose_demazure(product_, Subcrystal(product_, frozenset(product_.elements)))
    assert decomposition.succeeded
    w0 = longest_element(A2)
    assert set(decomposition.labels) == {DemazureLabel.of((2, 0), w0), DemazureLabel.of((0, 1), w0)}


def test_decompose_counterexample_fails():
    gx, gy = highest_weight_crystal(A2, (0, 1)), highest_weight_crystal(A2, (1, 0))
    X = demazure_subset(gx, simple_reflection(A2, 2))
    Y = demazure_subset(gy, simple_reflection(A2, 1))
    product_ = tensor(gx, gy)
    members = frozenset(product_.index_of(a, b) for a in X.members for b in Y.members)
    decomposition = decompose_demazure(product_, Subcrystal(product_, members))
    assert not decomposition.succeeded
    assert decomposition.labels is None
    assert decomposition.failure is not None


def test_decompose_highest_weight_singletons():
    lam, mu = (2, 2), (2, 0)
    gx, gy = highest_weight_crystal(A2, lam), highest_weight_crystal(A2, mu)
    top_y, _ = highest_weight_top(gy)
    product_ = tensor(gx, gy)
    members = frozenset({product_.index_of(0, top_y), product_.index_of(0, gy.f(top_y, 1))})
    decomposition = decompose_demazure(product_, Subcrystal(product_, members))
    assert decomposition.succeeded
    assert set(decomposition.labels) == {
        DemazureLabel.of((4, 2), identity(A2)),
        DemazureLabel.of((2, 3), identity(A2)),
    }


# ============================================================================
# CHARACTERS
# ============================================================================

def test_character_examples(b_rho):
    assert character(b_rho, {0}) == x(1, 1)
    assert character(highest_weight_crystal(A1, (1,)), {0, 1}) == x(1) + x(-1)
    assert character(highest_weight_crystal(A2, (1, 0)), {0, 1, 2}) == x(1, 0) + x(-1, 1) + x(0, -1)


def test_demazure_operator_rules():
    assert demazure_operator(A1, 1, x(1)) == x(1) + x(-1)
    assert demazure_operator(A2, 1, x(-1, 0)) == LaurentPolynomial()
    assert demazure_operator(A1, 1, x(-2)) == -x(0)
    assert demazure_operator(A1, 1, x(-3)) == -(x(-1) + x(1))


def test_operator_matches_five_element_character(b_rho):
    expected = character(b_rho, demazure_subset(b_rho, from_word(A2, (1, 2))))
    computed = apply_word(A2, (1, 2), x(1, 1))
    assert computed == expected
    assert len(computed) == 5


def test_operator_word_on_two_rho():
    assert len(apply_word(A2, (1, 2), x(2, 2))) == 12


def test_character_check_a2():
    for lam in SWEEP_A2_WEIGHTS:
        g = highest_weight_crystal(A2, lam)
        for w in enumerate_weyl_group(A2):
            assert demazure_character_check(g, w, all_words=True)


@pytest.mark.parametrize('lam', [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)])
def test_character_check_a3(lam):
    g = highest_weight_crystal(A3, lam)
    for w in enumerate_weyl_group(A3):
        assert demazure_character_check(g, w, all_words=True)


POLYNOMIALS = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(-4, 4),
    max_size=10,
).map(LaurentPolynomial)


@settings(max_examples=80, deadline=None)
@given(POLYNOMIALS, st.sampled_from([1, 2]))
def test_demazure_operator_is_idempotent(f, i):
    once = demazure_operator(A2, i, f)
    assert demazure_operator(A2, i, once) == once


@settings(max_examples=80, deadline=None)
@given(POLYNOMIALS)
def test_demazure_operators_satisfy_braid_relation(f):
    assert apply_word(A2, (1, 2, 1), f) == apply_word(A2, (2, 1, 2), f)
