"""
Demazure value types: labels B_w(nu), Laurent polynomials, and the
result records of recognition and decomposition.
"""

from dataclasses import dataclass, field

from lie.weyl import min_coset_rep


def _weight_text(wt):
    return '(' + ','.join(str(x) for x in wt) + ')'


@dataclass(frozen=True)
class DemazureLabel:
    """
    The pair (w, nu) naming B_w(nu), with w canonicalized to floor(w)^nu.

    Use DemazureLabel.of(nu, w) to build one; the constructor trusts its input.
    """

    weight: tuple
    weyl: object

    @classmethod
    def of(cls, weight, weyl):
        weight = tuple(weight)
        return cls(weight=weight, weyl=min_coset_rep(weyl, weight))

    def __str__(self):
        from lie.weyl import format_word, reduce_word

        return f'B_{{{format_word(reduce_word(self.weyl))}}}{_weight_text(self.weight)}'

    def sort_key(self):
        from lie.weyl import reduce_word

        return (tuple(-x for x in self.weight), reduce_word(self.weyl).letters)


class LaurentPolynomial:
    """
    Finitely supported sum of monomials x^lam with integer coefficients.

    Zero coefficients are never stored.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        cleaned = {}
        for exponent, coefficient in (terms or {}).items():
            if coefficient:
                cleaned[tuple(exponent)] = int(coefficient)
        self._terms = cleaned

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({tuple(exponent): coefficient})

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), reverse=True))

    def __add__(self, other):
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return LaurentPolynomial(terms)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return LaurentPolynomial({e: scalar * c for e, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for exponent, coefficient in self:
            monomial = f'x^{_weight_text(exponent)}'
            magnitude = abs(coefficient)
            body = monomial if magnitude == 1 else f'{magnitude}{monomial}'
            if not parts:
                parts.append(body if coefficient > 0 else f'-{body}')
            else:
                parts.append(f'+ {body}' if coefficient > 0 else f'- {body}')
        return ' '.join(parts)

    def __repr__(self):
        return f'LaurentPolynomial({self})'


@dataclass(frozen=True)
class RecognitionFailure:
    """A subset that is not a Demazure crystal, with the reason."""

    reason: str
    explored: int = 0

    def __bool__(self):
        return False

    def __str__(self):
        return f'not Demazure: {self.reason}'


@dataclass(frozen=True)
class PieceVerdict:
    """One connected piece of a decomposition attempt."""

    top: int
    weight: tuple
    members: frozenset
    label: object = None
    failure: object = None

    @property
    def ok(self):
        return self.failure is None


@dataclass
class Decomposition:
    """
    Outcome of decompose_demazure: per-piece verdicts. Succeeds iff every
    piece is recognized; `failure` is the first offending piece.
    """

    pieces: list = field(default_factory=list)

    @property
    def succeeded(self):
        return all(piece.ok for piece in self.pieces)

    @property
    def labels(self):
        if not self.succeeded:
            return None
        return sorted((piece.label for piece in self.pieces), key=DemazureLabel.sort_key)

    @property
    def failure(self):
        return next((piece for piece in self.pieces if not piece.ok), None)

    def __bool__(self):
        return self.succeeded
