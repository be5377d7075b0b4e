"""Explicit descriptions of the path-space polytopes.

Two families are supported:

``binomial``
    The component of directed paths with steps ``(1,0)``, ``(0,1)`` and a
    fixed pattern over ``{1, 2}``. In time-distribution coordinates it is the
    product of a simplex of horizontal durations (summing to ``x``) and a
    simplex of vertical durations (summing to ``y``).
``catalan``
    The component ``Lambda^n(x, y)`` of Dyck-type directed paths with pattern
    ``(1,2,...,1,2)`` of length ``2n+2``. In Cartesian coordinates it is
    ``0 <= x_1 <= ... <= x_n <= (x+y)/2``, ``0 <= y_1 <= ... <= y_n <= (x-y)/2``
    with ``x_i >= y_i``.
"""

import math
from dataclasses import dataclass

from .errors import DomainError

BINOMIAL = "binomial"
CATALAN = "catalan"


def check_binomial_pattern(pattern):
    """Validate a pattern over ``{1, 2}`` and return it as a tuple."""
    c = tuple(int(v) for v in pattern)
    for v in c:
        if v not in (1, 2):
            raise DomainError(f"binomial patterns use directions 1 and 2 only, got {c}")
    for left, right in zip(c, c[1:]):
        if left == right:
            raise DomainError(f"pattern {c} repeats a direction in adjacent entries")
    return c


@dataclass(frozen=True)
class PolytopeSpec:
    """A binomial component or a Catalan component, with its parameters.

    For ``kind == "binomial"``, ``x`` is the total horizontal time and ``y``
    the total vertical time; for ``kind == "catalan"``, ``(x, y)`` is the
    endpoint and ``index`` the component number ``n``.
    """

    kind: str
    x: float
    y: float
    pattern: tuple = ()
    index: int = 0

    def __post_init__(self):
        if self.kind not in (BINOMIAL, CATALAN):
            raise DomainError(f"unknown polytope kind {self.kind!r}")
        for name in ("x", "y"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be finite and nonnegative, got {v!r}")
        if self.kind == BINOMIAL:
            object.__setattr__(self, "pattern", check_binomial_pattern(self.pattern))
        else:
            if int(self.index) != self.index or self.index < 0:
                raise DomainError(f"component index must be a nonnegative integer, got {self.index!r}")
            if self.y > self.x:
                raise DomainError(f"catalan component needs 0 <= y <= x, got ({self.x}, {self.y})")

    @classmethod
    def binomial(cls, pattern, horizontal, vertical):
        return cls(BINOMIAL, float(horizontal), float(vertical), pattern=tuple(pattern))

    @classmethod
    def catalan(cls, n, x, y=0.0):
        return cls(CATALAN, float(x), float(y), index=int(n))

    @property
    def total_time(self):
        return self.x + self.y if self.kind == BINOMIAL else self.x

    @property
    def direction_counts(self):
        """Number of horizontal and vertical segments of a binomial pattern."""
        return self.pattern.count(1), self.pattern.count(2)

    @property
    def half_sums(self):
        """``((x+y)/2, (x-y)/2)``: total up-time and down-time of a Catalan path."""
        return 0.5 * (self.x + self.y), 0.5 * (self.x - self.y)

    @property
    def dimension(self):
        if self.kind == BINOMIAL:
            a, b = self.direction_counts
            return max(a - 1, 0) + max(b - 1, 0)
        return 2 * self.index
