"""
Lie-theoretic value types: Cartan data, weights, Weyl group elements.

Key Concepts:
- Weights live in the fundamental-weight basis, so <alpha_i^vee, lam> is
  simply lam[i-1].
- Roots are additionally kept in the simple-root basis.
- Cartan matrix convention: a_ij = <alpha_i^vee, alpha_j> (rows indexed by
  coroots), Bourbaki node numbering. Indices are 1-based everywhere a user
  sees them.

Everything here is immutable and hashable, so values can be used as cache
keys and shared between sweep workers.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from demkit.exceptions import InvalidInput

# Coordinates in the fundamental-weight basis
Weight = tuple


FINITE_TYPES = ('A', 'B', 'C', 'D', 'E', 'F', 'G')


@dataclass(frozen=True)
class CartanData:
    """
    Finite-type Cartan datum.

    Fields:
    - type_letter: one of A..G
    - rank: n
    - cartan_matrix: n x n integer matrix, a_ij = <alpha_i^vee, alpha_j>
    - positive_roots: positive roots in simple-root coordinates, saturated
      from the simple roots under simple reflections
    """

    type_letter: str
    rank: int
    cartan_matrix: tuple
    positive_roots: tuple

    def __str__(self):
        return f'{self.type_letter}{self.rank}'

    @property
    def label(self):
        return str(self)

    @property
    def indices(self):
        return range(1, self.rank + 1)

    @cached_property
    def array(self):
        return np.array(self.cartan_matrix, dtype=np.int64)

    @cached_property
    def positive_roots_weight(self):
        """Positive roots in fundamental-weight coordinates."""
        return frozenset(
            tuple(int(v) for v in self.array @ np.array(root, dtype=np.int64))
            for root in self.positive_roots
        )

    @cached_property
    def negative_roots_weight(self):
        return frozenset(tuple(-v for v in root) for root in self.positive_roots_weight)

    @property
    def zero(self):
        return (0,) * self.rank

    @property
    def rho(self):
        return (1,) * self.rank

    def check_index(self, i):
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= self.rank:
            raise InvalidInput(f'index {i} out of range 1..{self.rank} for {self}')
        return int(i)

    def check_weight(self, lam):
        if len(lam) != self.rank:
            raise InvalidInput(f'weight {tuple(lam)} has {len(lam)} coordinates, {self} needs {self.rank}')
        return tuple(int(c) for c in lam)


@dataclass(frozen=True)
class WeylElement:
    """
    Weyl group element acting on the weight lattice.

    `matrix` is stored as a tuple of rows; column j is the image of omega_j in
    fundamental-weight coordinates. Equality is matrix equality, so no word
    normalization is ever needed.
    """

    cartan: CartanData
    matrix: tuple

    @cached_property
    def array(self):
        return np.array(self.matrix, dtype=np.int64)

    def __mul__(self, other):
        from lie.weyl import multiply

        return multiply(self, other)

    def __call__(self, lam):
        from lie.weyl import act

        return act(self, lam)

    def __str__(self):
        from lie.weyl import format_word, reduce_word

        return format_word(reduce_word(self))

    def __repr__(self):
        return f'WeylElement({self.cartan}, {self})'


@dataclass(frozen=True)
class ReducedWord:
    """Sequence of simple-reflection indices i_1, ..., i_l (leftmost first)."""

    letters: tuple

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        from lie.weyl import format_word

        return format_word(self)
