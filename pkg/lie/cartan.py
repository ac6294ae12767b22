"""
Cartan Data Module

Finite-type Cartan matrices, the weight lattice, coroot pairings, simple
roots, positive roots and dominance.

Key Concepts:
- a_ij = <alpha_i^vee, alpha_j>; column j of the Cartan matrix is alpha_j
  written in fundamental weights.
- s_i(lam) = lam - <alpha_i^vee, lam> alpha_i
- Positive roots: the orbit of the simple roots under simple reflections,
  restricted to vectors with non-negative simple-root coordinates.
"""

import logging
import re
from fractions import Fraction
from functools import lru_cache

from demkit.exceptions import InvalidInput
from lie.models import FINITE_TYPES, CartanData

logger = logging.getLogger(__name__)

MIN_RANK = {'A': 1, 'B': 2, 'C': 2, 'D': 4}
FIXED_RANKS = {'E': (6, 7, 8), 'F': (4,), 'G': (2,)}

TYPE_PATTERN = re.compile(r'^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$')


# ============================================================================
# CONSTRUCTION
# ============================================================================

def _cartan_matrix(letter, n):
    """Bourbaki-numbered Cartan matrix as a list of rows."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, a_ij=-1, a_ji=-1):
        # 1-based nodes
        a[i - 1][j - 1] = a_ij
        a[j - 1][i - 1] = a_ji

    if letter in 'ABC':
        for i in range(1, n):
            bond(i, i + 1)
        if letter == 'B':
            # alpha_n short
            bond(n - 1, n, -1, -2)
        elif letter == 'C':
            # alpha_n long
            bond(n - 1, n, -2, -1)
    elif letter == 'D':
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif letter == 'E':
        bond(1, 3)
        bond(2, 4)
        for i in range(3, n):
            bond(i, i + 1)
    elif letter == 'F':
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif letter == 'G':
        # alpha_1 short, alpha_2 long
        bond(1, 2, -3, -1)
    return a


def _saturate_positive_roots(a):
    """Orbit of the simple roots under simple reflections, positive part."""
    n = len(a)
    simple = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(a[i][j] * beta[j] for j in range(n))
                if pairing == 0:
                    continue
                image = tuple(beta[k] - pairing if k == i else beta[k] for k in range(n))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    positive = [root for root in seen if all(c >= 0 for c in root)]
    # height first, then lexicographic: simple roots come first in index order
    return tuple(sorted(positive, key=lambda r: (sum(r), tuple(-c for c in r))))


@lru_cache(maxsize=None)
def build_cartan(letter, rank):
    """
    Build the Cartan datum of a finite type.

    Args:
        letter (str): one of A..G (case-insensitive)
        rank (int): n

    Raises:
        InvalidInput: for anything that is not a finite type.
    """
    letter = str(letter).upper()
    rank = int(rank)
    if letter not in FINITE_TYPES:
        raise InvalidInput(f'unknown Cartan type {letter}{rank}')
    if letter in FIXED_RANKS:
        if rank not in FIXED_RANKS[letter]:
            raise InvalidInput(f'type {letter} has no rank {rank}')
    elif rank < MIN_RANK[letter]:
        raise InvalidInput(f'type {letter}{rank}: rank must be at least {MIN_RANK[letter]}')

    matrix = _cartan_matrix(letter, rank)
    roots = _saturate_positive_roots(matrix)
    logger.debug(f'{letter}{rank}: {len(roots)} positive roots')
    return CartanData(
        type_letter=letter,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in matrix),
        positive_roots=roots,
    )


def parse_cartan_type(text):
    """Parse labels such as "A2", "g2", "D4" or "E_8"."""
    match = TYPE_PATTERN.match(str(text))
    if not match:
        raise InvalidInput(f'cannot parse Cartan type {text!r}')
    return build_cartan(match.group(1), int(match.group(2)))


# ============================================================================
# WEIGHT LATTICE OPERATIONS
# ============================================================================

def pairing(c, i, lam):
    """<alpha_i^vee, lam>: a coordinate read in the fundamental-weight basis."""
    i = c.check_index(i)
    lam = c.check_weight(lam)
    return lam[i - 1]


def simple_root_in_weight_coords(c, j):
    """alpha_j = sum_i a_ij omega_i, the j-th column of the Cartan matrix."""
    j = c.check_index(j)
    return tuple(c.cartan_matrix[i][j - 1] for i in range(c.rank))


def simple_reflection_on_weight(c, i, lam):
    """s_i(lam) = lam - <alpha_i^vee, lam> alpha_i."""
    m = pairing(c, i, lam)
    alpha = simple_root_in_weight_coords(c, i)
    return tuple(x - m * a for x, a in zip(lam, alpha))


def is_dominant(c, lam):
    return all(x >= 0 for x in c.check_weight(lam))


def add_weights(lam, mu):
    return tuple(x + y for x, y in zip(lam, mu))


def scale_weight(m, lam):
    return tuple(m * x for x in lam)


def root_to_weight(c, root):
    """Simple-root coordinates -> fundamental-weight coordinates."""
    return tuple(
        sum(c.cartan_matrix[i][j] * root[j] for j in range(c.rank)) for i in range(c.rank)
    )


@lru_cache(maxsize=None)
def symmetrizer(c):
    """
    d_i = (alpha_i, alpha_i) / 2 with d_1 = 1, so that d_i a_ij = d_j a_ji.

    Propagated along the (connected) Dynkin diagram.
    """
    d = [None] * c.rank
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(c.rank):
            a_ij = c.cartan_matrix[i][j]
            if i != j and a_ij != 0 and d[j] is None:
                d[j] = d[i] * a_ij / c.cartan_matrix[j][i]
                stack.append(j)
    return tuple(d)
