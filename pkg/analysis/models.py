"""
Result records for the tensor-product analysis: extremality reports, hinge
reports, the four-verdict product record and the factor-closure record.
"""

from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class StringViolation:
    """An i-string whose intersection with the subset is not empty, full or the top alone."""

    color: int
    string: tuple
    pattern: tuple

    def __str__(self):
        marks = ''.join('x' if hit else '.' for hit in self.pattern)
        return f'{self.color}-string {list(self.string)} meets the subset as {marks}'


@dataclass
class ExtremalityReport:
    extremal: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.extremal


@dataclass(frozen=True)
class Hinge:
    """
    An i-hinge x (x) y of X (x) Y.

    `element` is the product index, `left`/`right` the factor indices.
    `witness` is the product element x (x) f_i(y) when the hinge is broken.
    """

    element: int
    left: int
    right: int
    color: int
    broken: bool
    witness: object = None


@dataclass
class HingeReport:
    hinges: list = field(default_factory=list)

    @property
    def broken(self):
        return [hinge for hinge in self.hinges if hinge.broken]

    @property
    def n_broken(self):
        return len(self.broken)

    @property
    def hinge_free(self):
        """True when no hinge is broken."""
        return not self.broken

    def to_dict(self):
        return {
            'hinges': [asdict(hinge) for hinge in self.hinges],
            'n_broken': self.n_broken,
        }


@dataclass(frozen=True)
class ProductVerdict:
    """
    The four verdicts on B_w(lam) (x) B_u(mu). `labels` holds the Demazure
    labels on success, otherwise None; `failure` the first failed piece.
    """

    lam: tuple
    w: object
    mu: tuple
    u: object
    extremal: bool
    broken_hinge_free: bool
    kouno: bool
    demazure_sum: bool
    n_broken_hinges: int = 0
    labels: tuple = None
    failure: object = None

    @property
    def verdicts(self):
        return (self.extremal, self.broken_hinge_free, self.kouno, self.demazure_sum)

    @property
    def agree(self):
        return len(set(self.verdicts)) == 1


@dataclass(frozen=True)
class FactorClosureReport:
    """
    Findings on the factors of an extremal product. `x_extremal` is None when
    Y is not E-closed and the second clause does not apply.
    """

    x_e_closed: bool
    y_e_closed: bool
    x_extremal: object = None
    y_extremal: bool = False


@dataclass(frozen=True)
class ComponentCensus:
    """One ambient component meeting a product subset."""

    top: int
    weight: tuple
    size: int
    extremal: bool
    label: object = None


@dataclass(frozen=True)
class SweepRow:
    """One grid point. Verdict fields are None when a check failed before the verdicts existed."""

    lam: str
    mu: str
    w: str
    u: str
    n_broken_hinges: object = None
    extremal: object = None
    broken_hinge_free: object = None
    kouno: object = None
    demazure_sum: object = None
    labels: str = '-'
    disagreement: bool = False

    def as_tsv(self):
        def flag(value):
            if value is None:
                return '-'
            return 'true' if value else 'false'

        broken = '-' if self.n_broken_hinges is None else str(self.n_broken_hinges)
        return [
            self.lam, self.mu, self.w, self.u, broken,
            flag(self.extremal), flag(self.kouno), flag(self.demazure_sum), self.labels,
        ]


@dataclass
class ExperimentReport:
    """Before/after verdicts of the edge-removal experiment."""

    removed: list = field(default_factory=list)
    before_broken: int = 0
    before_extremal: bool = False
    before_decomposable: bool = False
    after_active_broken: object = None
    after_extremal: object = None
    after_decomposable: object = None
    after_labels: object = None
    after_valid: object = None

    @property
    def performed(self):
        return bool(self.removed)

    @property
    def succeeded(self):
        return bool(self.after_extremal and self.after_decomposable)
