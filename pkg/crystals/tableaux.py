"""
Tableaux Module

B(lam) in type A_n realized on semistandard Young tableaux with entries
1..n+1, plus the Weyl dimension formula as an independent size check.

Key Concepts:
- A dominant weight (c_1, ..., c_n) is the partition with c_j columns of
  height j, so omega_j is a single column of height j.
- Reading word: rows from bottom to top, each row left to right.
- Signature rule: in the reading word an i+1 opens a bracket and a later i
  closes it. f_i turns the rightmost unpaired i into i+1, e_i turns the
  leftmost unpaired i+1 into i. This matches the tensor product rule in
  crystals.operations (the superstandard tableau is highest weight).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import prod

from demkit.exceptions import InvalidInput
from lie.cartan import is_dominant, symmetrizer
from crystals.models import CrystalGraph

logger = logging.getLogger(__name__)


# ============================================================================
# TABLEAUX
# ============================================================================

def shape_of(lam):
    """Row lengths of the partition attached to a dominant weight."""
    n = len(lam)
    rows = [sum(lam[j] for j in range(r, n)) for r in range(n)]
    return tuple(length for length in rows if length > 0)


def semistandard_tableaux(shape, max_entry):
    """All SSYT of the given shape with entries in 1..max_entry (row-major backtracking)."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling = [[0] * length for length in shape]
    found = []

    def fill(k):
        if k == len(cells):
            found.append(tuple(tuple(row) for row in filling))
            return
        r, c = cells[k]
        low = 1
        if c > 0:
            low = max(low, filling[r][c - 1])
        if r > 0:
            low = max(low, filling[r - 1][c] + 1)
        for value in range(low, max_entry + 1):
            filling[r][c] = value
            fill(k + 1)
        filling[r][c] = 0

    fill(0)
    return found


def tableau_weight(tableau, rank):
    """wt_i = #i - #(i+1)."""
    content = [0] * (rank + 2)
    for row in tableau:
        for entry in row:
            content[entry] += 1
    return tuple(content[i] - content[i + 1] for i in range(1, rank + 1))


def _reading_positions(tableau):
    return [(r, c) for r in reversed(range(len(tableau))) for c in range(len(tableau[r]))]


def _signature(tableau, i):
    """Positions of unpaired i's and unpaired (i+1)'s in reading order."""
    opened = []
    unpaired_i = []
    for r, c in _reading_positions(tableau):
        entry = tableau[r][c]
        if entry == i + 1:
            opened.append((r, c))
        elif entry == i:
            if opened:
                opened.pop()
            else:
                unpaired_i.append((r, c))
    return unpaired_i, opened


def _replace(tableau, position, value):
    r, c = position
    rows = [list(row) for row in tableau]
    rows[r][c] = value
    return tuple(tuple(row) for row in rows)


def f_tableau(tableau, i):
    """f_i on a tableau, or None."""
    unpaired_i, _ = _signature(tableau, i)
    if not unpaired_i:
        return None
    return _replace(tableau, unpaired_i[-1], i + 1)


def e_tableau(tableau, i):
    """e_i on a tableau, or None."""
    _, unpaired_next = _signature(tableau, i)
    if not unpaired_next:
        return None
    return _replace(tableau, unpaired_next[0], i)


def format_tableau(tableau):
    """Row lists, e.g. [[1,1],[2]]."""
    return '[' + ','.join('[' + ','.join(str(x) for x in row) + ']' for row in tableau) + ']'


# ============================================================================
# CRYSTAL CONSTRUCTION
# ============================================================================

def build_typeA(c, lam):
    """
    Build B(lam) for type A_n on semistandard tableaux.

    Elements are numbered breadth-first from the superstandard tableau
    (element 0), trying colors in increasing order.

    Raises:
        InvalidInput: non-type-A data or a non-dominant weight.
    """
    if c.type_letter != 'A':
        raise InvalidInput(f'tableaux model is type A only, got {c}')
    lam = c.check_weight(lam)
    if not is_dominant(c, lam):
        raise InvalidInput(f'weight {lam} is not dominant')

    shape = shape_of(lam)
    all_tableaux = semistandard_tableaux(shape, c.rank + 1)
    superstandard = tuple(tuple(r + 1 for _ in range(length)) for r, length in enumerate(shape))

    # breadth-first numbering from the highest-weight tableau
    index = {superstandard: 0}
    order = [superstandard]
    head = 0
    while head < len(order):
        tableau = order[head]
        head += 1
        for i in c.indices:
            image = f_tableau(tableau, i)
            if image is not None and image not in index:
                index[image] = len(order)
                order.append(image)
    unreached = [t for t in all_tableaux if t not in index]
    if unreached:
        logger.warning(f'B({lam}): {len(unreached)} tableaux unreachable from the highest weight')
    for tableau in unreached:
        index[tableau] = len(order)
        order.append(tableau)

    f_edges = {i: {} for i in c.indices}
    for tableau in order:
        for i in c.indices:
            image = f_tableau(tableau, i)
            if image is not None:
                f_edges[i][index[tableau]] = index[image]

    logger.info(f'built B({",".join(map(str, lam))}) in {c}: {len(order)} tableaux')
    return CrystalGraph(
        cartan=c,
        weights=[tableau_weight(t, c.rank) for t in order],
        f_edges=f_edges,
        provenance='tableaux',
        labels=order,
    )


def highest_weight_crystal(c, lam):
    """Cached B(lam); only type A has a built-in model."""
    if c.type_letter != 'A':
        raise InvalidInput(f'no built-in model of B(lam) for {c}; import the crystal as JSON')
    return _cached_typeA(c, tuple(int(x) for x in lam))


@lru_cache(maxsize=256)
def _cached_typeA(c, lam):
    return build_typeA(c, lam)


# ============================================================================
# WEYL DIMENSION FORMULA
# ============================================================================

def dimension_oracle(c, lam):
    """
    prod over positive roots beta of <beta^vee, lam + rho> / <beta^vee, rho>,
    in exact rational arithmetic.
    """
    lam = c.check_weight(lam)
    if not is_dominant(c, lam):
        raise InvalidInput(f'weight {lam} is not dominant')
    d = symmetrizer(c)

    def coroot_pairing(root, weight):
        # <beta^vee, weight> up to the common factor 2 / (beta, beta)
        return sum(Fraction(root[j]) * d[j] * weight[j] for j in range(c.rank))

    shifted = tuple(x + 1 for x in lam)
    value = prod(
        (coroot_pairing(root, shifted) / coroot_pairing(root, c.rho) for root in c.positive_roots),
        start=Fraction(1),
    )
    if value.denominator != 1:
        raise ArithmeticError(f'Weyl dimension formula gave non-integer {value} for {lam}')
    return int(value)
