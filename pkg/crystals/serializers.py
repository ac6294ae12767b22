"""
Crystal serializers: canonical JSON interchange and DOT export.

JSON format (keys sorted, no whitespace, elements by index, edges by
color then source):

    {"cartan":"A2","edges":[{"from":0,"i":1,"to":2}],"elements":[{"id":0,"wt":[1,1]}],
     "provenance":"tableaux"}

Subsets serialize as {"ambient": <sha256 of the ambient's canonical JSON>,
"members": [...]}.
"""

import hashlib
import json
import logging

import pydot

from demkit import settings
from demkit.exceptions import InvalidInput
from lie.cartan import parse_cartan_type
from crystals.models import PROVENANCES, CrystalGraph, Subcrystal

logger = logging.getLogger(__name__)

MEMBER_FILL = 'lightblue'
HIGHLIGHT = 'red'


# ============================================================================
# JSON
# ============================================================================

def _canonical(payload):
    return json.dumps(payload, sort_keys=True, separators=settings.JSON_SEPARATORS)


def crystal_to_dict(g):
    return {
        'cartan': g.cartan.label,
        'provenance': g.provenance,
        'elements': [{'id': b, 'wt': list(g.wt(b))} for b in g.elements],
        'edges': [{'i': i, 'from': b, 'to': t} for i, b, t in g.edges()],
    }


def crystal_to_json(g):
    """Canonical JSON text of a crystal."""
    return _canonical(crystal_to_dict(g))


def crystal_from_json(text):
    """
    Parse a crystal from JSON text.

    The provenance recorded in the file is kept (default 'import'), so an
    export/import round trip is byte-identical. The result is not validated
    here; call validate().

    Raises:
        InvalidInput: malformed JSON or missing fields.
    """
    try:
        payload = json.loads(text)
        c = parse_cartan_type(payload['cartan'])
        elements = sorted(payload['elements'], key=lambda item: item['id'])
        if [item['id'] for item in elements] != list(range(len(elements))):
            raise InvalidInput('element ids must be 0..n-1')
        weights = [tuple(int(x) for x in item['wt']) for item in elements]
        f_edges = {i: {} for i in c.indices}
        for edge in payload.get('edges', []):
            i = c.check_index(int(edge['i']))
            source = int(edge['from'])
            if source in f_edges[i]:
                raise InvalidInput(f'two f_{i} edges leave element {source}')
            f_edges[i][source] = int(edge['to'])
        provenance = payload.get('provenance', 'import')
        if provenance not in PROVENANCES:
            raise InvalidInput(f'unknown provenance {provenance!r}')
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f'malformed crystal JSON: {exc}') from exc
    logger.info(f'imported {len(weights)} elements over {c}')
    return CrystalGraph(c, weights, f_edges, provenance=provenance)


def ambient_digest(g):
    return hashlib.sha256(crystal_to_json(g).encode('utf-8')).hexdigest()


def subset_to_json(subset):
    return _canonical({'ambient': ambient_digest(subset.ambient), 'members': subset.sorted_members})


def subset_from_json(text, ambient):
    """Parse a subset, checking it was written against this ambient crystal."""
    try:
        payload = json.loads(text)
        digest, members = payload['ambient'], payload['members']
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f'malformed subset JSON: {exc}') from exc
    if digest != ambient_digest(ambient):
        raise InvalidInput('subset was written against a different ambient crystal')
    return Subcrystal(ambient, frozenset(int(b) for b in members))


# ============================================================================
# DOT
# ============================================================================

def _weight_text(wt):
    return '(' + ','.join(str(x) for x in wt) + ')'


def crystal_to_dot(g, subset=None, highlight_nodes=(), highlight_edges=()):
    """
    DOT rendering: one node per element labeled "id:wt", edges labeled by
    color, subset members filled, highlighted nodes/edges drawn in red.

    Args:
        highlight_edges: iterable of (i, source, target)
    """
    graph = pydot.Dot('crystal', graph_type='digraph')
    members = subset.members if subset is not None else frozenset()
    highlight_nodes = set(highlight_nodes)
    highlight_edges = set(highlight_edges)
    for b in g.elements:
        attrs = {'label': f'"{b}:{_weight_text(g.wt(b))}"'}
        if b in members:
            attrs.update(style='filled', fillcolor=MEMBER_FILL)
        if b in highlight_nodes:
            attrs.update(color=HIGHLIGHT, penwidth='2')
        graph.add_node(pydot.Node(str(b), **attrs))
    for i, b, t in g.edges():
        attrs = {'label': f'"{i}"'}
        if (i, b, t) in highlight_edges:
            attrs.update(color=HIGHLIGHT)
        graph.add_edge(pydot.Edge(str(b), str(t), **attrs))
    return graph.to_string()
