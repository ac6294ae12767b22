"""
Crystal graph value types.

Key Concepts:
- CrystalGraph: finite crystal stored as weights plus one partial injective
  f_i map per color. e_i is the inverse map; eps_i/phi_i are chain lengths and
  are computed, never stored.
- "0" (an undefined e_i/f_i) is the absence of an edge, never a sentinel
  element.
- Subcrystal: a subset of an ambient crystal's elements. Demazure crystals,
  extremal candidates and tensor subsets X (x) Y all live here, always
  relative to their ambient crystal.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

import networkx as nx

logger = logging.getLogger(__name__)

PROVENANCES = ('tableaux', 'tensor', 'import', 'component', 'sum', 'modified')


class CrystalGraph:
    """
    Finite crystal graph over a Cartan datum.

    Features:
    - elements are 0..len-1, each with a weight in fundamental-weight coordinates
    - f_edges[i] maps an element to f_i of it (partial, injective)
    - e_i, eps_i, phi_i derived from f_edges
    - optional labels (tableaux) or factors (tensor products) for display

    Instances are treated as immutable; remove_edge and friends copy.
    """

    def __init__(self, cartan, weights, f_edges, provenance='import', labels=None, factors=None):
        self.cartan = cartan
        self.weights = tuple(tuple(int(x) for x in wt) for wt in weights)
        self.f_edges = MappingProxyType({
            i: MappingProxyType({int(b): int(t) for b, t in f_edges.get(i, {}).items()})
            for i in cartan.indices
        })
        self.provenance = provenance
        self.labels = tuple(labels) if labels is not None else None
        self.factors = factors

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(range(len(self.weights)))

    def __repr__(self):
        return f'CrystalGraph({self.cartan}, {len(self)} elements, {self.provenance})'

    @property
    def elements(self):
        return range(len(self.weights))

    def wt(self, b):
        return self.weights[b]

    def f(self, b, i):
        return self.f_edges[i].get(b)

    def e(self, b, i):
        return self._e_edges[i].get(b)

    def edges(self):
        """All (i, source, target) triples, sorted."""
        return sorted(
            (i, b, t) for i, edges in self.f_edges.items() for b, t in edges.items()
        )

    def pair(self, b):
        """TensorElement for an element of a tensor product (row-major indexing)."""
        if self.factors is None:
            raise ValueError(f'{self!r} is not a tensor product')
        left, right = divmod(b, len(self.factors[1]))
        return TensorElement(left, right)

    def index_of(self, left, right):
        """Inverse of pair()."""
        return left * len(self.factors[1]) + right

    # ------------------------------------------------------------------
    # derived structure
    # ------------------------------------------------------------------

    @cached_property
    def _e_edges(self):
        inverse = {}
        for i, edges in self.f_edges.items():
            inverse[i] = {}
            for b, t in edges.items():
                # first writer wins; duplicates are a (C3) violation reported by validate()
                inverse[i].setdefault(t, b)
        return inverse

    @cached_property
    def string_tables(self):
        """
        Per color: eps, phi dicts from walking the i-strings top-down, plus the
        set of elements lying on no finite string (cycles).
        """
        tables = {}
        for i in self.cartan.indices:
            eps, phi = {}, {}
            for top in self.elements:
                if self.e(top, i) is not None:
                    continue
                chain = [top]
                seen = {top}
                nxt = self.f(top, i)
                while nxt is not None and nxt not in seen and nxt not in eps:
                    chain.append(nxt)
                    seen.add(nxt)
                    nxt = self.f(nxt, i)
                for pos, b in enumerate(chain):
                    eps[b] = pos
                    phi[b] = len(chain) - 1 - pos
            cyclic = frozenset(b for b in self.elements if b not in eps)
            tables[i] = (eps, phi, cyclic)
        return tables

    @cached_property
    def undirected(self):
        """networkx view used for connected components."""
        graph = nx.Graph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from((b, t) for _, b, t in self.edges())
        return graph


@dataclass(frozen=True)
class TensorElement:
    """b_1 (x) b_2 as a pair of factor indices."""

    left: int
    right: int


@dataclass(frozen=True)
class Subcrystal:
    """A subset of an ambient crystal's elements."""

    ambient: CrystalGraph
    members: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.members)

    def __contains__(self, b):
        return b in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __le__(self, other):
        return self.members <= other.members

    def __and__(self, other):
        return Subcrystal(self.ambient, self.members & frozenset(other))

    @property
    def sorted_members(self):
        return sorted(self.members)

    def with_members(self, members):
        return Subcrystal(self.ambient, frozenset(members))


@dataclass(frozen=True)
class Violation:
    """One failed check: axiom id (C1..C4, HW, ISO, FORMAT), element, color."""

    axiom: str
    element: object = None
    color: object = None
    detail: str = ''

    def __str__(self):
        where = f' at element {self.element}' if self.element is not None else ''
        color = f', color {self.color}' if self.color is not None else ''
        return f'{self.axiom}{where}{color}: {self.detail}'


@dataclass
class ValidationReport:
    """Outcome of validate(); `relaxed` is set for modified crystals."""

    violations: list = field(default_factory=list)
    relaxed: bool = False

    @property
    def passed(self):
        return not self.violations

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class IsoFailure:
    """Structural mismatch found by the parallel traversal."""

    element: object
    color: object
    detail: str

    def __str__(self):
        return f'no isomorphism: {self.detail} (element {self.element}, color {self.color})'


@dataclass(frozen=True)
class ComponentIsomorphism:
    """Result of canonical_component_iso: the bijection or the failure."""

    mapping: object = None
    failure: object = None

    @property
    def ok(self):
        return self.failure is None

    def __bool__(self):
        return self.ok

    def image(self, members):
        return frozenset(self.mapping[b] for b in members)
