import json
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demkit.exceptions import BudgetExceeded, CartanMismatch, InvalidInput
from lie.cartan import build_cartan
from crystals.models import CrystalGraph, Subcrystal
from crystals.operations import (
    canonical_component_iso,
    check_budget,
    closure_E,
    closure_E_all,
    closure_Ei,
    closure_F,
    closure_F_all,
    closure_Fi,
    component_of,
    component_split,
    direct_sum,
    eps,
    highest_weight_elements,
    i_strings,
    is_e_closed,
    phi,
    remove_edge,
    restrict,
    string_through,
    tensor,
    tensor_power,
    validate,
)
from crystals.serializers import (
    crystal_from_json,
    crystal_to_dot,
    crystal_to_json,
    subset_from_json,
    subset_to_json,
)
from crystals.tableaux import (
    dimension_oracle,
    e_tableau,
    f_tableau,
    format_tableau,
    highest_weight_crystal,
    semistandard_tableaux,
    shape_of,
)

A1 = build_cartan('A', 1)
A2 = build_cartan('A', 2)
A3 = build_cartan('A', 3)

RHO_WEIGHTS = {
    'b': (1, 1), 'p': (-1, 2), 'q': (2, -1), 'r': (0, 0),
    's': (-2, 1), 't': (0, 0), 'u': (1, -2), 'z': (-1, -1),
}

# name: (eps_1, phi_1, eps_2, phi_2)
RHO_STRING_DATA = {
    'b': (0, 1, 0, 1), 'p': (1, 0, 0, 2), 'q': (0, 2, 1, 0), 'r': (1, 1, 0, 0),
    's': (2, 0, 0, 1), 't': (0, 0, 1, 1), 'u': (0, 1, 2, 0), 'z': (1, 0, 1, 0),
}

SPIN_B2 = json.dumps({
    'cartan': 'B2',
    'elements': [{'id': 0, 'wt': [0, 1]}, {'id': 1, 'wt': [1, -1]}, {'id': 2, 'wt': [-1, 1]}, {'id': 3, 'wt': [0, -1]}],
    'edges': [{'i': 2, 'from': 0, 'to': 1}, {'i': 1, 'from': 1, 'to': 2}, {'i': 2, 'from': 2, 'to': 3}],
})


def closed_eps(g1, g2, a, b, i):
    return max(eps(g1, a, i), eps(g1, a, i) + eps(g2, b, i) - phi(g1, a, i))


def closed_phi(g1, g2, a, b, i):
    return max(phi(g2, b, i), phi(g1, a, i) + phi(g2, b, i) - eps(g2, b, i))


# ============================================================================
# TABLEAUX
# ============================================================================

def test_shapes():
    assert shape_of((1, 1)) == (2, 1)
    assert shape_of((0, 1)) == (1, 1)
    assert shape_of((2, 0)) == (2,)
    assert shape_of((0, 0)) == ()


def test_semistandard_count():
    assert len(semistandard_tableaux((2, 1), 3)) == 8
    assert semistandard_tableaux((), 3) == [()]


def test_signature_rule():
    top = ((1, 1), (2,))
    assert e_tableau(top, 1) is None and e_tableau(top, 2) is None
    assert f_tableau(top, 1) == ((1, 2), (2,))
    assert f_tableau(top, 2) == ((1, 1), (3,))
    assert format_tableau(top) == '[[1,1],[2]]'


def test_column_crystal_omega_2():
    g = highest_weight_crystal(A2, (0, 1))
    assert [format_tableau(t) for t in g.labels] == ['[[1],[2]]', '[[1],[3]]', '[[2],[3]]']
    assert list(g.weights) == [(0, 1), (1, -1), (-1, 0)]
    assert g.f(0, 2) == 1 and g.f(1, 1) == 2
    assert g.f(0, 1) is None


def test_rho_weights_and_strings(b_rho, rho_elements):
    g = b_rho
    assert len(g) == 8
    for name, b in rho_elements.items():
        assert g.wt(b) == RHO_WEIGHTS[name]
        assert (eps(g, b, 1), phi(g, b, 1), eps(g, b, 2), phi(g, b, 2)) == RHO_STRING_DATA[name]


def test_rho_i_strings(b_rho, rho_elements):
    e = rho_elements
    ones = sorted(tuple(s) for s in i_strings(b_rho, 1))
    assert ones == sorted([(e['b'], e['p']), (e['q'], e['r'], e['s']), (e['u'], e['z']), (e['t'],)])
    twos = sorted(tuple(s) for s in i_strings(b_rho, 2))
    assert twos == sorted([(e['b'], e['q']), (e['p'], e['t'], e['u']), (e['s'], e['z']), (e['r'],)])
    assert string_through(b_rho, e['r'], 1) == [e['q'], e['r'], e['s']]


def test_non_type_a_has_no_tableau_model():
    with pytest.raises(InvalidInput):
        highest_weight_crystal(build_cartan('B', 2), (1, 0))


def test_non_dominant_weight_rejected():
    with pytest.raises(InvalidInput):
        highest_weight_crystal(A2, (1, -1))


@pytest.mark.parametrize('lam,dim', [
    ((1, 1), 8), ((2, 0), 6), ((2, 2), 27), ((3, 3), 64), ((4, 2), 60), ((2, 3), 42), ((0, 0), 1),
])
def test_dimension_oracle_a2(lam, dim):
    assert dimension_oracle(A2, lam) == dim
    assert len(highest_weight_crystal(A2, lam)) == dim


@pytest.mark.parametrize('letter,rank,lam,dim', [
    ('B', 2, (1, 0), 5), ('B', 2, (0, 1), 4), ('G', 2, (1, 0), 7), ('G', 2, (0, 1), 14),
    ('F', 4, (0, 0, 0, 1), 26), ('F', 4, (1, 0, 0, 0), 52), ('E', 8, (0, 0, 0, 0, 0, 0, 0, 1), 248),
])
def test_dimension_oracle_other_types(letter, rank, lam, dim):
    assert dimension_oracle(build_cartan(letter, rank), lam) == dim


def test_tableau_sizes_match_weyl_dimension():
    for c, bound in ((A1, 4), (A2, 2), (A3, 1)):
        for lam in product(range(bound + 1), repeat=c.rank):
            assert len(highest_weight_crystal(c, lam)) == dimension_oracle(c, lam)


# ============================================================================
# VALIDATION
# ============================================================================

def test_tableaux_crystals_validate():
    for c, bound in ((A1, 3), (A2, 2), (A3, 1)):
        for lam in product(range(bound + 1), repeat=c.rank):
            report = validate(highest_weight_crystal(c, lam))
            assert report.passed, [str(v) for v in report.violations]


def test_spin_b2_validates_by_dimension():
    g = crystal_from_json(SPIN_B2)
    assert validate(g).passed


def test_wrong_weight_is_c2():
    g = highest_weight_crystal(A2, (1, 0))
    broken = CrystalGraph(A2, [(1, 0), (0, 0), (0, -1)], g.f_edges)
    report = validate(broken)
    assert not report.passed
    assert 'C2' in {v.axiom for v in report.violations}


def test_non_injective_edge_is_c3():
    g = CrystalGraph(A1, [(1,), (-1,), (1,)], {1: {0: 1, 2: 1}})
    assert 'C3' in {v.axiom for v in validate(g).violations}


def test_cycle_is_c4():
    g = CrystalGraph(A1, [(1,), (-1,)], {1: {0: 1, 1: 0}})
    assert 'C4' in {v.axiom for v in validate(g).violations}
    with pytest.raises(InvalidInput):
        eps(g, 0, 1)


def test_removed_edge_breaks_c1_only(b_rho):
    modified = remove_edge(b_rho, 0, 1)
    assert modified.provenance == 'modified'
    assert validate(modified).passed
    assert validate(modified).relaxed
    strict = validate(modified, relaxed=False)
    assert {v.axiom for v in strict.violations} == {'C1'}


def test_remove_missing_edge(b_rho, rho_elements):
    with pytest.raises(InvalidInput):
        remove_edge(b_rho, rho_elements['z'], 1)


# ============================================================================
# TENSOR PRODUCTS AND SUMS
# ============================================================================

def test_tensor_square_of_omega_1():
    g = highest_weight_crystal(A2, (1, 0))
    product_ = tensor(g, g)
    assert len(product_) == 9
    assert sorted(len(c) for c in component_split(product_)) == [3, 6]
    assert len(component_of(product_, 0)) == 6
    assert len(component_of(product_, product_.index_of(0, g.f(0, 1)))) == 3
    assert sorted(wt for _, wt in highest_weight_elements(product_)) == [(0, 1), (2, 0)]
    assert validate(product_).passed


def test_tensor_square_of_rho_highest_weights(b_rho, rho_elements):
    product_ = tensor(b_rho, b_rho)
    assert len(product_) == 64
    tops = highest_weight_elements(product_)
    assert sorted(wt for _, wt in tops) == [(0, 0), (0, 3), (1, 1), (1, 1), (2, 2), (3, 0)]
    pairs = [product_.pair(b) for b, _ in tops]
    assert {pair.left for pair in pairs} == {rho_elements['b']}
    e = rho_elements
    assert {pair.right for pair in pairs} == {e['b'], e['p'], e['q'], e['r'], e['t'], e['z']}
    assert validate(product_).passed


@pytest.mark.parametrize('lam,mu', [((1, 1), (1, 1)), ((1, 0), (0, 1)), ((2, 0), (1, 1))])
def test_tensor_string_data_matches_closed_formulas(lam, mu):
    g1, g2 = highest_weight_crystal(A2, lam), highest_weight_crystal(A2, mu)
    product_ = tensor(g1, g2)
    for ab in product_.elements:
        pair = product_.pair(ab)
        for i in A2.indices:
            assert eps(product_, ab, i) == closed_eps(g1, g2, pair.left, pair.right, i)
            assert phi(product_, ab, i) == closed_phi(g1, g2, pair.left, pair.right, i)


def test_tensor_is_associative_on_indices():
    g1 = highest_weight_crystal(A2, (1, 0))
    g2 = highest_weight_crystal(A2, (0, 1))
    left = tensor(tensor(g1, g2), g1)
    right = tensor(g1, tensor(g2, g1))
    assert left.weights == right.weights
    assert left.edges() == right.edges()


def test_tensor_power_and_budget(b_rho):
    assert len(tensor_power(b_rho, 2)) == 64
    with pytest.raises(BudgetExceeded):
        tensor(b_rho, b_rho, budget=10)
    with pytest.raises(BudgetExceeded):
        check_budget(11, budget=10)
    with pytest.raises(InvalidInput):
        tensor_power(b_rho, 0)


def test_tensor_rejects_mixed_types(b_rho):
    with pytest.raises(CartanMismatch):
        tensor(b_rho, highest_weight_crystal(A1, (1,)))


def test_direct_sum_and_restrict():
    g1 = highest_weight_crystal(A2, (1, 0))
    g2 = highest_weight_crystal(A2, (0, 1))
    total = direct_sum([g1, g2])
    assert len(total) == 6 and total.provenance == 'sum'
    assert validate(total).passed
    components = component_split(total)
    assert [len(c) for c in components] == [3, 3]
    piece, index = restrict(total, components[1])
    assert piece.provenance == 'component'
    assert index == {3: 0, 4: 1, 5: 2}
    assert validate(piece).passed


def test_canonical_iso_of_product_component():
    g = highest_weight_crystal(A2, (1, 0))
    product_ = tensor(g, g)
    top = product_.index_of(0, 0)
    component = next(c for c in component_split(product_) if top in c)
    iso = canonical_component_iso(product_, component, highest_weight_crystal(A2, (2, 0)))
    assert iso.ok
    assert iso.mapping[top] == 0
    assert len(iso.image(component.members)) == 6


def test_canonical_iso_reports_mismatch(b_rho):
    component = component_split(b_rho)[0]
    iso = canonical_component_iso(b_rho, component, highest_weight_crystal(A2, (2, 0)))
    assert not iso
    assert iso.failure is not None


# ============================================================================
# CLOSURES
# ============================================================================

def test_closures(b_rho, rho_elements):
    e = rho_elements
    assert closure_Fi(b_rho, {e['b']}, 1).members == {e['b'], e['p']}
    assert closure_Ei(b_rho, {e['s']}, 1).members == {e['q'], e['r'], e['s']}
    assert closure_F(b_rho, {e['b']}, (1, 2)).members == {e['b'], e['p'], e['q'], e['r'], e['s']}
    assert closure_F(b_rho, {e['b']}, (2, 1)).members == {e['b'], e['p'], e['q'], e['t'], e['u']}
    assert closure_E(b_rho, {e['z']}, (1, 2)).members == {e['q'], e['r'], e['s'], e['u'], e['z']}
    assert closure_E_all(b_rho, {e['z']}).members == frozenset(b_rho.elements)
    assert closure_F_all(b_rho, {e['b']}).members == frozenset(b_rho.elements)
    assert is_e_closed(b_rho, {e['b'], e['p']})
    assert not is_e_closed(b_rho, {e['p']})


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(0, 7), min_size=1))
def test_closures_are_idempotent(members):
    g = highest_weight_crystal(A2, (1, 1))
    once = closure_E_all(g, members)
    assert closure_E_all(g, once).members == once.members
    assert set(members) <= once.members


# ============================================================================
# SERIALIZATION
# ============================================================================

def test_canonical_json_text():
    g = highest_weight_crystal(A1, (1,))
    assert crystal_to_json(g) == (
        '{"cartan":"A1","edges":[{"from":0,"i":1,"to":1}],'
        '"elements":[{"id":0,"wt":[1]},{"id":1,"wt":[-1]}],"provenance":"tableaux"}'
    )


def test_json_round_trip_is_byte_identical(b_rho):
    text = crystal_to_json(tensor(b_rho, highest_weight_crystal(A2, (1, 0))))
    again = crystal_from_json(text)
    assert again.provenance == 'tensor'
    assert crystal_to_json(again) == text


def test_modified_crystal_keeps_relaxed_validation(b_rho):
    again = crystal_from_json(crystal_to_json(remove_edge(b_rho, 0, 1)))
    assert again.provenance == 'modified'
    assert validate(again).passed


@pytest.mark.parametrize('text', [
    'not json',
    '{"cartan":"A2"}',
    '{"cartan":"A2","elements":[{"id":1,"wt":[0,0]}]}',
    '{"cartan":"A9x","elements":[]}',
    '{"cartan":"A1","elements":[{"id":0,"wt":[1]},{"id":1,"wt":[-1]}],'
    '"edges":[{"i":1,"from":0,"to":1},{"i":1,"from":0,"to":0}]}',
    '{"cartan":"A1","elements":[],"provenance":"magic"}',
])
def test_malformed_json_rejected(text):
    with pytest.raises(InvalidInput):
        crystal_from_json(text)


def test_subset_json(b_rho):
    subset = Subcrystal(b_rho, frozenset({0, 1}))
    assert subset_from_json(subset_to_json(subset), b_rho) == subset
    with pytest.raises(InvalidInput):
        subset_from_json(subset_to_json(subset), highest_weight_crystal(A2, (2, 0)))


def test_dot_export(b_rho):
    text = crystal_to_dot(b_rho, Subcrystal(b_rho, frozenset({0})), highlight_nodes=[1])
    assert 'digraph crystal' in text
    assert '0:(1,1)' in text
    assert 'lightblue' in text
    assert 'red' in text
