from dataclasses import dataclass
from fractions import Fraction

EXACT = "exact"
MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class DimensionValue:
    """A nonnegative rational dimension tagged with the backend that produced it.

    ``engine`` is one of ``abelian``, ``finite``, ``crossed``, ``free-oracle``
    (or ``trivial``/``idempotent`` for values that need no rank backend).
    """

    value: Fraction
    engine: str = "trivial"
    certainty: str = EXACT

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise ValueError(f"dimension must be nonnegative, got {self.value}")
        if self.certainty not in (EXACT, MONTE_CARLO):
            raise ValueError(f"unknown certainty flag {self.certainty!r}")

    @property
    def exact(self):
        return self.certainty == EXACT

    def combine(self, other, value):
        """New value whose provenance merges ``self`` and ``other``."""
        if isinstance(other, DimensionValue):
            engine = self.engine if other.engine in (self.engine, "trivial") else (
                other.engine if self.engine == "trivial" else f"{self.engine}+{other.engine}")
            certainty = EXACT if self.exact and other.exact else MONTE_CARLO
        else:
            engine, certainty = self.engine, self.certainty
        return DimensionValue(value, engine, certainty)

    def __eq__(self, other):
        if isinstance(other, DimensionValue):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < _val(other)

    def __le__(self, other):
        return self.value <= _val(other)

    def __gt__(self, other):
        return self.value > _val(other)

    def __ge__(self, other):
        return self.value >= _val(other)

    def __str__(self):
        return format_rational(self.value)


def _val(x):
    return x.value if isinstance(x, DimensionValue) else x


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
