from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demkit.exceptions import CartanMismatch, InvalidInput
from lie.cartan import (
    build_cartan,
    is_dominant,
    pairing,
    parse_cartan_type,
    simple_reflection_on_weight,
    simple_root_in_weight_coords,
    symmetrizer,
)
from lie.models import ReducedWord
from lie.weyl import (
    act,
    bruhat_leq,
    enumerate_reduced_words,
    enumerate_weyl_group,
    format_word,
    from_word,
    identity,
    inverse,
    kouno_criterion,
    left_descents,
    length,
    longest_element,
    max_coset_rep,
    min_coset_rep,
    multiply,
    parabolic_membership,
    parse_word,
    reduce_word,
    right_descents,
    simple_reflection,
    stabilizer_generators,
)

A2 = build_cartan('A', 2)
A3 = build_cartan('A', 3)

POSITIVE_ROOT_COUNTS = {
    ('A', 1): 1, ('A', 2): 3, ('A', 3): 6, ('B', 2): 4, ('B', 3): 9, ('C', 3): 9,
    ('D', 4): 12, ('G', 2): 6, ('F', 4): 24, ('E', 6): 36, ('E', 7): 63, ('E', 8): 120,
}


def words(c, max_size=6):
    return st.lists(st.sampled_from(list(c.indices)), max_size=max_size)


# ============================================================================
# CARTAN DATA
# ============================================================================

@pytest.mark.parametrize('letter,rank', sorted(POSITIVE_ROOT_COUNTS))
def test_positive_root_counts(letter, rank):
    c = build_cartan(letter, rank)
    assert len(c.positive_roots) == POSITIVE_ROOT_COUNTS[(letter, rank)]


@pytest.mark.parametrize('letter,rank', sorted(POSITIVE_ROOT_COUNTS))
def test_cartan_matrix_shape(letter, rank):
    a = build_cartan(letter, rank).cartan_matrix
    for i, j in product(range(rank), repeat=2):
        if i == j:
            assert a[i][j] == 2
        else:
            assert a[i][j] <= 0
            assert (a[i][j] == 0) == (a[j][i] == 0)


def test_a2_cartan_matrix():
    assert A2.cartan_matrix == ((2, -1), (-1, 2))
    assert str(A2) == 'A2'


@pytest.mark.parametrize('text', ['A0', 'E5', 'H3', 'D3', 'B1', 'G3', 'A', 'banana'])
def test_rejects_non_finite_types(text):
    with pytest.raises(InvalidInput):
        parse_cartan_type(text)


def test_parse_cartan_type_variants():
    assert parse_cartan_type('a2') == A2
    assert parse_cartan_type('E_8').rank == 8


def test_pairing_reads_coordinates():
    assert pairing(A2, 1, (1, 1)) == 1
    assert pairing(A2, 2, (2, 0)) == 0
    assert pairing(build_cartan('G', 2), 1, (3, 0)) == 3


def test_pairing_index_out_of_range():
    with pytest.raises(InvalidInput):
        pairing(A2, 3, (1, 1))
    with pytest.raises(InvalidInput):
        pairing(A2, 0, (1, 1))


def test_simple_roots_in_weight_coordinates():
    assert simple_root_in_weight_coords(A2, 1) == (2, -1)
    assert simple_root_in_weight_coords(build_cartan('A', 1), 1) == (2,)
    assert simple_root_in_weight_coords(build_cartan('G', 2), 2) == (-3, 2)


def test_simple_reflection_on_weight():
    assert simple_reflection_on_weight(build_cartan('A', 1), 1, (1,)) == (-1,)
    assert simple_reflection_on_weight(A2, 1, (1, 1)) == (-1, 2)
    assert simple_reflection_on_weight(A2, 2, (1, 0)) == (1, 0)


@given(st.tuples(*[st.integers(-5, 5)] * 3), st.integers(1, 3))
def test_simple_reflection_is_an_involution(lam, i):
    once = simple_reflection_on_weight(A3, i, lam)
    assert simple_reflection_on_weight(A3, i, once) == lam


def test_dominance():
    assert is_dominant(A2, (0, 3))
    assert not is_dominant(A2, (1, -1))


def test_symmetrizer_g2():
    assert symmetrizer(build_cartan('G', 2)) == (Fraction(1), Fraction(3))


def test_weight_length_checked():
    with pytest.raises(InvalidInput):
        A2.check_weight((1, 1, 1))


# ============================================================================
# WEYL GROUP
# ============================================================================

@pytest.mark.parametrize('letter,rank,order', [
    ('A', 1, 2), ('A', 2, 6), ('A', 3, 24), ('B', 2, 8), ('G', 2, 12), ('B', 3, 48),
])
def test_weyl_group_orders(letter, rank, order):
    assert len(enumerate_weyl_group(build_cartan(letter, rank))) == order


@pytest.mark.parametrize('letter,rank', [('A', 2), ('B', 3), ('G', 2), ('D', 4)])
def test_longest_element_length(letter, rank):
    c = build_cartan(letter, rank)
    assert length(longest_element(c)) == len(c.positive_roots)


def test_braid_relation_a2():
    assert from_word(A2, (1, 2, 1)) == from_word(A2, (2, 1, 2)) == longest_element(A2)


def test_simple_reflections_square_to_identity():
    for c in (A2, build_cartan('G', 2), build_cartan('B', 3)):
        for i in c.indices:
            s = simple_reflection(c, i)
            assert multiply(s, s) == identity(c)
            assert length(s) == 1


def test_descents():
    w = from_word(A2, (1, 2))
    assert right_descents(w) == {2}
    assert left_descents(w) == {1}
    assert inverse(w) == from_word(A2, (2, 1))


def test_reduce_word_round_trip():
    for c in (A2, A3, build_cartan('B', 2)):
        for w in enumerate_weyl_group(c):
            word = reduce_word(w)
            assert len(word) == length(w)
            assert from_word(c, word.letters) == w


def test_enumerate_reduced_words():
    assert [word.letters for word in enumerate_reduced_words(longest_element(A2))] == [(1, 2, 1), (2, 1, 2)]
    assert [word.letters for word in enumerate_reduced_words(from_word(A3, (1, 3)))] == [(1, 3), (3, 1)]
    assert [word.letters for word in enumerate_reduced_words(identity(A2))] == [()]


def test_action_on_weights():
    assert act(simple_reflection(A2, 1), (1, 1)) == (-1, 2)
    assert act(longest_element(A2), (1, 1)) == (-1, -1)


def test_multiply_rejects_mixed_types():
    with pytest.raises(CartanMismatch):
        multiply(identity(A2), identity(A3))


def _subword_products(c, w):
    letters = reduce_word(w).letters
    result = set()
    for mask in range(1 << len(letters)):
        result.add(from_word(c, [letter for k, letter in enumerate(letters) if mask >> k & 1]))
    return result


def test_bruhat_order_matches_subword_property():
    group = enumerate_weyl_group(A3)
    for w in group:
        below = _subword_products(A3, w)
        for u in group:
            assert bruhat_leq(u, w) == (u in below)


def test_bruhat_small_cases():
    s1s2, s2s1 = from_word(A2, (1, 2)), from_word(A2, (2, 1))
    assert bruhat_leq(identity(A2), s1s2)
    assert bruhat_leq(simple_reflection(A2, 1), s2s1)
    assert not bruhat_leq(s1s2, s2s1)
    assert not bruhat_leq(s2s1, s1s2)


def test_stabilizers_and_cosets():
    s1, s2 = simple_reflection(A2, 1), simple_reflection(A2, 2)
    assert stabilizer_generators(A2, (1, 0)) == {2}
    assert min_coset_rep(s2, (1, 0)) == identity(A2)
    assert max_coset_rep(identity(A2), (1, 0)) == s2
    assert min_coset_rep(from_word(A2, (1, 2)), (1, 0)) == s1
    assert min_coset_rep(longest_element(A2), (0, 0)) == identity(A2)
    with pytest.raises(InvalidInput):
        stabilizer_generators(A2, (1, -1))


def test_coset_representatives_bracket_the_coset():
    for lam in [(1, 0), (0, 1), (1, 1), (0, 0)]:
        for w in enumerate_weyl_group(A2):
            low, high = min_coset_rep(w, lam), max_coset_rep(w, lam)
            assert act(low, lam) == act(w, lam) == act(high, lam)
            assert length(low) <= length(w) <= length(high)


def test_parabolic_membership():
    assert parabolic_membership(simple_reflection(A2, 1), {1})
    assert not parabolic_membership(simple_reflection(A2, 2), {1})
    assert parabolic_membership(identity(A2), set())


def test_kouno_counterexample():
    s1, s2 = simple_reflection(A2, 1), simple_reflection(A2, 2)
    assert not kouno_criterion((0, 1), s2, (1, 0), s1)


def test_kouno_trivial_cases():
    for w in enumerate_weyl_group(A2):
        assert kouno_criterion((1, 1), w, (1, 1), longest_element(A2))
        assert kouno_criterion((1, 1), identity(A2), (1, 0), w)


@settings(max_examples=60, deadline=None)
@given(words(A2), words(A2), words(A2), words(A2))
def test_kouno_depends_only_on_cosets(w_word, u_word, x_word, y_word):
    lam, mu = (0, 1), (1, 0)
    w, u = from_word(A2, w_word), from_word(A2, u_word)
    # stabilizer of (0,1) is <s1>, of (1,0) is <s2>
    x = from_word(A2, [1] * len(x_word))
    y = from_word(A2, [2] * len(y_word))
    assert kouno_criterion(lam, w, mu, u) == kouno_criterion(lam, multiply(w, x), mu, multiply(u, y))


def test_parse_word_forms():
    s1s2 = from_word(A2, (1, 2))
    assert parse_word(A2, 's1*s2') == s1s2
    assert parse_word(A2, 's1s2') == s1s2
    assert parse_word(A2, '12') == s1s2
    assert parse_word(A2, 'id') == identity(A2)
    assert parse_word(A2, 'w0') == longest_element(A2)


@pytest.mark.parametrize('text', ['x', 's4', '13', 's1*t2', '1a'])
def test_parse_word_rejects(text):
    with pytest.raises(InvalidInput):
        parse_word(A2, text)


def test_digit_words_rejected_at_high_rank():
    with pytest.raises(InvalidInput):
        parse_word(build_cartan('A', 10), '12')
    assert parse_word(build_cartan('A', 10), 's10*s1') == from_word(build_cartan('A', 10), (10, 1))


def test_word_formatting():
    assert format_word(ReducedWord(())) == 'id'
    assert str(from_word(A2, (1, 2))) == 's1*s2'
