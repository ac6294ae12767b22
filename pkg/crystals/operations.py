"""
Crystal Operations Module

Axiom validation, string data, direct sums, Kashiwara tensor products,
highest-weight elements, connected components, the canonical
highest-weight-anchored isomorphism, E/F closures of subsets and edge removal.

Key Concepts:
- Tensor rule (Kashiwara convention):
      f_i(b1 (x) b2) = f_i(b1) (x) b2   if eps_i(b2) < phi_i(b1)
                     = b1 (x) f_i(b2)   otherwise
  e_i is its inverse, so only f edges are built.
- Products are indexed row-major: b1 (x) b2 -> b1 * |B2| + b2.
- Closures: F_word(X) saturates i-strings downward along the word, applying
  the rightmost letter first; E/F "all" closures run to a fixed point.
"""

import logging
from collections import deque

import networkx as nx

from demkit import settings
from demkit.exceptions import BudgetExceeded, CartanMismatch, InvalidInput
from lie.cartan import is_dominant, simple_root_in_weight_coords
from crystals.models import (
    ComponentIsomorphism,
    CrystalGraph,
    IsoFailure,
    Subcrystal,
    ValidationReport,
    Violation,
)

logger = logging.getLogger(__name__)


# ============================================================================
# STRING DATA
# ============================================================================

def _string_entry(g, b, i):
    eps, phi, cyclic = g.string_tables[i]
    if b in cyclic:
        raise InvalidInput(f'element {b} lies on an infinite {i}-string')
    return eps[b], phi[b]


def eps(g, b, i):
    """eps_i(b): length of the e_i-chain above b."""
    return _string_entry(g, b, i)[0]


def phi(g, b, i):
    """phi_i(b): length of the f_i-chain below b."""
    return _string_entry(g, b, i)[1]


def string_through(g, b, i):
    """The full i-string containing b, top first."""
    top = b
    while g.e(top, i) is not None:
        top = g.e(top, i)
    chain = [top]
    while g.f(chain[-1], i) is not None:
        chain.append(g.f(chain[-1], i))
    return chain


def i_strings(g, i):
    """All i-strings of g, each listed top first, ordered by their top element."""
    eps_table, phi_table, _ = g.string_tables[i]
    strings = []
    for top in g.elements:
        if top in eps_table and eps_table[top] == 0:
            chain = [top]
            for _ in range(phi_table[top]):
                chain.append(g.f(chain[-1], i))
            strings.append(chain)
    return strings


# ============================================================================
# VALIDATION
# ============================================================================

def validate(g, relaxed=None):
    """
    Check the crystal axioms and normality.

    (C1)-(C4) are checked for every element and color. Unless the crystal is
    relaxed (provenance 'modified' by default), every connected component must
    have exactly one highest-weight element, of dominant weight nu, and be
    isomorphic to B(nu).

    Returns:
        ValidationReport: never raises on bad data.
    """
    if relaxed is None:
        relaxed = g.provenance == 'modified'
    report = ValidationReport(relaxed=relaxed)
    violations = report.violations
    c = g.cartan
    n = len(g)

    for b, wt in enumerate(g.weights):
        if len(wt) != c.rank:
            violations.append(Violation('FORMAT', b, None, f'weight {wt} has wrong length'))
    if violations:
        return report

    for i in c.indices:
        alpha = simple_root_in_weight_coords(c, i)
        targets = {}
        for b, t in g.f_edges[i].items():
            if not (0 <= b < n and 0 <= t < n):
                violations.append(Violation('FORMAT', b, i, f'edge {b}->{t} leaves the element range'))
                continue
            if t in targets:
                violations.append(Violation('C3', t, i, f'f_{i} is not injective: {targets[t]} and {b} both map here'))
            targets[t] = b
            expected = tuple(x - a for x, a in zip(g.wt(b), alpha))
            if g.wt(t) != expected:
                violations.append(Violation('C2', b, i, f'wt(f_{i}(b)) = {g.wt(t)}, expected {expected}'))
    if any(v.axiom in ('FORMAT', 'C3') for v in violations):
        return report

    for i in c.indices:
        eps_table, phi_table, cyclic = g.string_tables[i]
        for b in sorted(cyclic):
            violations.append(Violation('C4', b, i, f'{i}-string through {b} is infinite'))
        if relaxed:
            continue
        for b in g.elements:
            if b in cyclic:
                continue
            if phi_table[b] - eps_table[b] != g.wt(b)[i - 1]:
                violations.append(Violation(
                    'C1', b, i,
                    f'phi - eps = {phi_table[b] - eps_table[b]}, <alpha_{i}^vee, wt> = {g.wt(b)[i - 1]}',
                ))
    if violations or relaxed:
        return report

    for component in component_split(g):
        tops = highest_weight_elements(g, component)
        if len(tops) != 1:
            violations.append(Violation(
                'HW', min(component.members), None,
                f'component has {len(tops)} highest-weight elements',
            ))
            continue
        top, nu = tops[0]
        if not is_dominant(c, nu):
            violations.append(Violation('HW', top, None, f'highest weight {nu} is not dominant'))
            continue
        failure = _check_against_model(g, component, nu)
        if failure is not None:
            violations.append(Violation('ISO', failure.element, failure.color, failure.detail))
    return report


def _check_against_model(g, component, nu):
    """Compare a component with B(nu): full isomorphism in type A, dimension count otherwise."""
    from crystals.tableaux import dimension_oracle, highest_weight_crystal

    if g.cartan.type_letter == 'A':
        result = canonical_component_iso(g, component, highest_weight_crystal(g.cartan, nu))
        return result.failure
    expected = dimension_oracle(g.cartan, nu)
    if len(component) != expected:
        return IsoFailure(min(component.members), None, f'{len(component)} elements, dim B({nu}) = {expected}')
    logger.debug(f'{g.cartan}: no model for B({nu}); dimension check only')
    return None


# ============================================================================
# CONSTRUCTIONS
# ============================================================================

def check_budget(size, budget=None):
    budget = settings.ELEMENT_BUDGET if budget is None else budget
    if size > budget:
        logger.warning(f'refusing to build {size} elements (budget {budget})')
        raise BudgetExceeded(size, budget)


def tensor(g1, g2, budget=None):
    """
    Kashiwara tensor product g1 (x) g2.

    Raises:
        CartanMismatch: factors over different Cartan data.
        BudgetExceeded: |g1| * |g2| above the element budget.
    """
    if g1.cartan != g2.cartan:
        raise CartanMismatch(f'cannot tensor {g1.cartan} with {g2.cartan}')
    n1, n2 = len(g1), len(g2)
    check_budget(n1 * n2, budget)

    weights = [
        tuple(x + y for x, y in zip(g1.wt(a), g2.wt(b)))
        for a in range(n1) for b in range(n2)
    ]
    f_edges = {}
    for i in g1.cartan.indices:
        _, phi1, _ = g1.string_tables[i]
        eps2, _, _ = g2.string_tables[i]
        edges = {}
        for a in range(n1):
            for b in range(n2):
                if eps2[b] < phi1[a]:
                    edges[a * n2 + b] = g1.f(a, i) * n2 + b
                else:
                    fb = g2.f(b, i)
                    if fb is not None:
                        edges[a * n2 + b] = a * n2 + fb
        f_edges[i] = edges
    logger.info(f'tensor product {n1} x {n2} = {n1 * n2} elements')
    return CrystalGraph(g1.cartan, weights, f_edges, provenance='tensor', factors=(g1, g2))


def tensor_power(g, m, budget=None):
    """g^{(x) m}, bracketed from the left: ((g (x) g) (x) g) ..."""
    if m < 1:
        raise InvalidInput(f'tensor power needs m >= 1, got {m}')
    check_budget(len(g) ** m, budget)
    result = g
    for _ in range(m - 1):
        result = tensor(result, g, budget)
    return result


def direct_sum(gs):
    """Disjoint union with element indices offset in order."""
    gs = list(gs)
    if not gs:
        raise InvalidInput('direct sum of no crystals')
    c = gs[0].cartan
    weights, labels = [], []
    f_edges = {i: {} for i in c.indices}
    offset = 0
    for g in gs:
        if g.cartan != c:
            raise CartanMismatch(f'cannot sum {c} with {g.cartan}')
        weights.extend(g.weights)
        labels.extend(g.labels or [None] * len(g))
        for i, b, t in g.edges():
            f_edges[i][b + offset] = t + offset
        offset += len(g)
    provenance = 'modified' if any(g.provenance == 'modified' for g in gs) else 'sum'
    return CrystalGraph(c, weights, f_edges, provenance=provenance, labels=labels)


def restrict(g, component):
    """
    A connected component as a standalone crystal.

    Returns:
        (CrystalGraph, dict): the restriction and the map ambient index -> new index.
    """
    members = component.sorted_members
    index = {b: k for k, b in enumerate(members)}
    f_edges = {
        i: {index[b]: index[t] for b, t in g.f_edges[i].items() if b in index and t in index}
        for i in g.cartan.indices
    }
    labels = [g.labels[b] for b in members] if g.labels is not None else None
    restricted = CrystalGraph(
        g.cartan, [g.wt(b) for b in members], f_edges, provenance='component', labels=labels
    )
    return restricted, index


def remove_edge(g, b, i):
    """Copy of g without the f_i edge out of b (provenance 'modified')."""
    i = g.cartan.check_index(i)
    if g.f(b, i) is None:
        raise InvalidInput(f'no f_{i} edge out of element {b}')
    f_edges = {color: dict(edges) for color, edges in g.f_edges.items()}
    target = f_edges[i].pop(b)
    logger.info(f'removed f_{i} edge {b} -> {target}')
    return CrystalGraph(
        g.cartan, g.weights, f_edges, provenance='modified', labels=g.labels, factors=g.factors
    )


# ============================================================================
# HIGHEST WEIGHTS AND COMPONENTS
# ============================================================================

def is_highest_weight(g, b):
    return all(g.e(b, i) is None for i in g.cartan.indices)


def highest_weight_elements(g, within=None):
    """[(b, wt(b))] for every b with all e_i undefined, optionally inside a subset."""
    candidates = g.elements if within is None else sorted(within.members)
    return [(b, g.wt(b)) for b in candidates if is_highest_weight(g, b)]


def component_of(g, b):
    return Subcrystal(g, frozenset(nx.node_connected_component(g.undirected, b)))


def component_split(g):
    """Connected components, ordered by their smallest element."""
    components = [frozenset(c) for c in nx.connected_components(g.undirected)]
    return [Subcrystal(g, c) for c in sorted(components, key=min)]


def canonical_component_iso(g, component, target):
    """
    Match a component against target = B(nu) by parallel breadth-first traversal
    from the highest-weight elements along f_i edges.

    Returns:
        ComponentIsomorphism: the bijection (component element -> target
        element), or the first structural mismatch.
    """
    tops = highest_weight_elements(g, component)
    target_tops = highest_weight_elements(target)
    if len(tops) != 1:
        return ComponentIsomorphism(failure=IsoFailure(None, None, f'{len(tops)} highest-weight elements in component'))
    if len(target_tops) != 1:
        return ComponentIsomorphism(failure=IsoFailure(None, None, 'target has no unique highest-weight element'))
    (top, nu), (target_top, target_nu) = tops[0], target_tops[0]
    if nu != target_nu:
        return ComponentIsomorphism(failure=IsoFailure(top, None, f'highest weights {nu} and {target_nu} differ'))

    mapping = {top: target_top}
    used = {target_top}
    queue = deque([top])
    while queue:
        x = queue.popleft()
        y = mapping[x]
        for i in g.cartan.indices:
            fx, fy = g.f(x, i), target.f(y, i)
            if (fx is None) != (fy is None):
                return ComponentIsomorphism(failure=IsoFailure(x, i, 'f edge present on one side only'))
            if fx is None:
                continue
            if fx in mapping:
                if mapping[fx] != fy:
                    return ComponentIsomorphism(failure=IsoFailure(fx, i, 'two paths disagree'))
                continue
            if fy in used or g.wt(fx) != target.wt(fy):
                return ComponentIsomorphism(failure=IsoFailure(fx, i, 'image already used or weight differs'))
            mapping[fx] = fy
            used.add(fy)
            queue.append(fx)
    if len(mapping) != len(component) or len(mapping) != len(target):
        return ComponentIsomorphism(failure=IsoFailure(
            top, None, f'size mismatch: reached {len(mapping)} of {len(component)}, target has {len(target)}'
        ))
    return ComponentIsomorphism(mapping=mapping)


# ============================================================================
# CLOSURES (the monoids E and F acting on subsets)
# ============================================================================

def _members(g, X):
    if isinstance(X, Subcrystal):
        return set(X.members)
    return set(X)


def closure_Fi(g, X, i):
    """{f_i^m(x) : x in X, 0 <= m <= phi_i(x)}."""
    result = _members(g, X)
    for x in list(result):
        nxt = g.f(x, i)
        while nxt is not None and nxt not in result:
            result.add(nxt)
            nxt = g.f(nxt, i)
    return Subcrystal(g, frozenset(result))


def closure_Ei(g, X, i):
    """{e_i^m(x) : x in X, 0 <= m <= eps_i(x)}."""
    result = _members(g, X)
    for x in list(result):
        nxt = g.e(x, i)
        while nxt is not None and nxt not in result:
            result.add(nxt)
            nxt = g.e(nxt, i)
    return Subcrystal(g, frozenset(result))


def closure_F(g, X, word):
    """F_word(X): saturate along the word, rightmost letter first."""
    result = Subcrystal(g, frozenset(_members(g, X)))
    for i in reversed(tuple(word)):
        result = closure_Fi(g, result, i)
    return result


def closure_E(g, X, word):
    result = Subcrystal(g, frozenset(_members(g, X)))
    for i in reversed(tuple(word)):
        result = closure_Ei(g, result, i)
    return result


def _fixed_point(g, X, step):
    current = Subcrystal(g, frozenset(_members(g, X)))
    while True:
        grown = current
        for i in g.cartan.indices:
            grown = step(g, grown, i)
        if grown.members == current.members:
            return current
        current = grown


def closure_F_all(g, X):
    """F(X): closure under every f_i."""
    return _fixed_point(g, X, closure_Fi)


def closure_E_all(g, X):
    """E(X): closure under every e_i."""
    return _fixed_point(g, X, closure_Ei)


def is_e_closed(g, X):
    return closure_E_all(g, X).members == frozenset(_members(g, X))
