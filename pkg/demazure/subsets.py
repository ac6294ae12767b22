"""
Demazure subsets B_w(lam) = F_w{b_lam} inside a highest-weight crystal,
reduced-word independence, minimal expansion words, recognition of a subset
as some B_w(nu), and decomposition of a subset into Demazure pieces.
"""

import logging
from collections import deque

import networkx as nx

from demkit.exceptions import CartanMismatch, InvalidInput, TheoremFalsified
from lie.cartan import is_dominant
from lie.models import ReducedWord
from lie.weyl import (
    enumerate_reduced_words,
    from_word,
    identity,
    left_descents,
    length,
    multiply,
    reduce_word,
    simple_reflection,
)
from crystals.models import Subcrystal
from crystals.operations import (
    canonical_component_iso,
    closure_F,
    closure_Fi,
    component_split,
    highest_weight_elements,
)
from crystals.tableaux import highest_weight_crystal
from demazure.models import (
    Decomposition,
    DemazureLabel,
    PieceVerdict,
    RecognitionFailure,
)

logger = logging.getLogger(__name__)


def highest_weight_top(g):
    """
    The unique highest-weight element of a connected crystal.

    Raises:
        InvalidInput: if g is disconnected or has no unique highest weight.
    """
    if len(component_split(g)) != 1:
        raise InvalidInput('ambient crystal must be connected (isomorphic to some B(lam))')
    tops = highest_weight_elements(g)
    if len(tops) != 1:
        raise InvalidInput(f'ambient crystal has {len(tops)} highest-weight elements')
    return tops[0]


def _check_cartan(g, w):
    if w.cartan != g.cartan:
        raise CartanMismatch(f'Weyl element of {w.cartan} used with a crystal of {g.cartan}')


def demazure_subset(g, w):
    """B_w(lam) = F_{i_1} ... F_{i_l} {b_lam} for the canonical reduced word of w."""
    _check_cartan(g, w)
    top, _ = highest_weight_top(g)
    return closure_F(g, {top}, reduce_word(w).letters)


def reduced_word_independence_check(g, w):
    _check_cartan(g, w)
    top, _ = highest_weight_top(g)
    results = {closure_F(g, {top}, word.letters).members for word in enumerate_reduced_words(w)}
    return len(results) <= 1


def minimal_expansion_word(g, b):
    """
    Shortest word [i_1..i_k] with b in F_{i_1} ... F_{i_k}{b_lam}.

    Breadth-first over words without repeated adjacent letters; a word
    whose subset was already reached by a shorter word is not extended.

    Raises:
        InvalidInput: b is not an element of g.
        TheoremFalsified: the shortest word found is not reduced.
    """
    if not 0 <= b < len(g):
        raise InvalidInput(f'element {b} is not in the crystal')
    top, _ = highest_weight_top(g)
    start = frozenset({top})
    queue = deque([((), start)])
    seen = {start}
    while queue:
        word, members = queue.popleft()
        if b in members:
            w = from_word(g.cartan, word)
            if length(w) != len(word):
                raise TheoremFalsified(
                    f'minimal word {list(word)} for element {b} is not reduced',
                    record={'element': b, 'word': list(word)},
                )
            return ReducedWord(word)
        for i in g.cartan.indices:
            if word and word[0] == i:
                continue
            grown = closure_Fi(g, members, i).members
            if grown in seen:
                continue
            seen.add(grown)
            queue.append(((i,) + word, grown))
    raise InvalidInput(f'element {b} is not reachable from the highest-weight element')


def _recognize_from(g, top, members):
    nu = g.wt(top)
    if top not in members:
        return RecognitionFailure(f'highest-weight element {top} is not in the subset')
    start = identity(g.cartan)
    queue = deque([(start, frozenset({top}))])
    seen = {start}
    while queue:
        w, current = queue.popleft()
        if current == members:
            return DemazureLabel.of(nu, w)
        descents = left_descents(w)
        for i in g.cartan.indices:
            if i in descents:
                continue
            grown = closure_Fi(g, current, i).members
            if not grown <= members:
                continue
            v = multiply(simple_reflection(g.cartan, i), w)
            if v in seen:
                continue
            seen.add(v)
            queue.append((v, grown))
        logger.debug(f'recognition frontier at {w}: {len(queue)} pending')
    return RecognitionFailure('no Demazure subset equals the given set', explored=len(seen))


def recognize_demazure(g, S):
    """
    Find (nu, w) with S = B_w(nu) inside g = B(nu).

    Searches the weak order from the identity, only extending to s_i w when
    F_i(B_w) stays inside S.

    Returns:
        DemazureLabel on success, RecognitionFailure otherwise.
    """
    tops = highest_weight_elements(g)
    if len(tops) != 1 or len(component_split(g)) != 1:
        return RecognitionFailure('ambient is not a connected highest-weight crystal')
    members = frozenset(S.members if isinstance(S, Subcrystal) else S)
    if not members <= frozenset(g.elements):
        return RecognitionFailure('subset has elements outside the ambient crystal')
    return _recognize_from(g, tops[0][0], members)


def _component_piece(g, component, members):
    tops = highest_weight_elements(g, component)
    if len(tops) != 1:
        return PieceVerdict(
            top=None, weight=None, members=members,
            failure=RecognitionFailure(f'component has {len(tops)} highest-weight elements'),
        )
    top, nu = tops[0]
    if top not in members:
        return PieceVerdict(
            top=top, weight=nu, members=members,
            failure=RecognitionFailure(f'highest-weight element {top} of weight {nu} is not in the subset'),
        )
    if g.cartan.type_letter != 'A':
        result = _recognize_from(g, top, members)
    else:
        target = highest_weight_crystal(g.cartan, nu)
        iso = canonical_component_iso(g, component, target)
        if not iso:
            return PieceVerdict(
                top=top, weight=nu, members=members,
                failure=RecognitionFailure(str(iso.failure)),
            )
        result = _recognize_from(target, 0, iso.image(members))
    if isinstance(result, RecognitionFailure):
        return PieceVerdict(top=top, weight=nu, members=members, failure=result)
    return PieceVerdict(top=top, weight=nu, members=members, label=result)


def induced_pieces(g, members):
    """Connected pieces of `members` under the f edges of g with both ends inside."""
    graph = nx.Graph()
    graph.add_nodes_from(members)
    graph.add_edges_from(
        (source, target) for _, source, target in g.edges()
        if source in members and target in members
    )
    return sorted((frozenset(p) for p in nx.connected_components(graph)), key=min)


def _match_piece(g, piece, top, target):
    """Parallel traversal of the piece's internal f edges into target from its top."""
    mapping = {top: 0}
    used = {0}
    queue = deque([top])
    while queue:
        x = queue.popleft()
        y = mapping[x]
        for i in g.cartan.indices:
            fx = g.f(x, i)
            if fx is None or fx not in piece:
                continue
            fy = target.f(y, i)
            if fy is None or target.wt(fy) != g.wt(fx):
                return None
            if fx in mapping:
                if mapping[fx] != fy:
                    return None
                continue
            if fy in used:
                return None
            mapping[fx] = fy
            used.add(fy)
            queue.append(fx)
    if len(mapping) != len(piece):
        return None
    return mapping


def _induced_piece(g, piece):
    tops = [
        b for b in sorted(piece)
        if not any(g.e(b, i) in piece for i in g.cartan.indices)
    ]
    if len(tops) != 1:
        return PieceVerdict(
            top=None, weight=None, members=piece,
            failure=RecognitionFailure(f'piece has {len(tops)} source elements'),
        )
    top = tops[0]
    nu = g.wt(top)
    if not is_dominant(g.cartan, nu):
        return PieceVerdict(
            top=top, weight=nu, members=piece,
            failure=RecognitionFailure(f'source weight {nu} is not dominant'),
        )
    if g.cartan.type_letter != 'A':
        return PieceVerdict(
            top=top, weight=nu, members=piece,
            failure=RecognitionFailure(f'no highest-weight model for type {g.cartan}'),
        )
    target = highest_weight_crystal(g.cartan, nu)
    mapping = _match_piece(g, piece, top, target)
    if mapping is None:
        return PieceVerdict(
            top=top, weight=nu, members=piece,
            failure=RecognitionFailure(f'piece does not embed in B{nu} from its source'),
        )
    result = _recognize_from(target, 0, frozenset(mapping.values()))
    if isinstance(result, RecognitionFailure):
        return PieceVerdict(top=top, weight=nu, members=piece, failure=result)
    return PieceVerdict(top=top, weight=nu, members=piece, label=result)


def decompose_demazure(g, S, induced=None):
    """
    Split S into Demazure pieces.

    For an ordinary crystal every component meeting S must have its
    highest-weight element in S, and the intersection is recognized inside
    B(nu) through the canonical isomorphism. For a modified crystal
    (default when g.provenance is 'modified') the pieces are the connected
    pieces of S under the surviving edges.

    Returns:
        Decomposition: per-piece verdicts; succeeds iff all pieces do.
    """
    members = frozenset(S.members if isinstance(S, Subcrystal) else S)
    if induced is None:
        induced = g.provenance == 'modified'
    decomposition = Decomposition()
    if induced:
        for piece in induced_pieces(g, members):
            decomposition.pieces.append(_induced_piece(g, piece))
    else:
        for component in component_split(g):
            meet = component.members & members
            if meet:
                decomposition.pieces.append(_component_piece(g, component, meet))
    if decomposition.succeeded:
        logger.info(f'decomposed {len(members)} elements into {len(decomposition.pieces)} Demazure pieces')
    else:
        logger.info(f'decomposition failed: {decomposition.failure.failure}')
    return decomposition
