"""Lattice paths with their patterns, plus interior lattice points.

This is the exact, integer-valued side of the package: every continuous
quantity elsewhere is checked against the counts computed here. All counts
are Python integers, so nothing overflows.

Step indices and pattern entries are 1-based, so direction ``1`` is the
first vector of a :class:`StepSet`.
"""

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass

from .errors import DomainError
from .polytope import BINOMIAL, PolytopeSpec

__all__ = [
    "StepSet",
    "HalfspaceRegion",
    "LatticePath",
    "BINOMIAL_STEPS",
    "DYCK_STEPS",
    "UPPER_HALF_PLANE",
    "check_pattern",
    "pattern_of",
    "patterns",
    "count_paths",
    "count_paths_restricted",
    "count_paths_by_pattern",
    "pattern_decomposition",
    "interior_lattice_points",
    "dyck_count",
    "dyck_peak_counts",
    "catalan_number",
    "narayana",
]


@dataclass(frozen=True)
class StepSet:
    """Distinct integer step vectors ``v_1, ..., v_k`` of a common dimension."""

    steps: tuple

    def __post_init__(self):
        steps = tuple(tuple(int(c) for c in v) for v in self.steps)
        if not steps:
            raise DomainError("a step set needs at least one step")
        d = len(steps[0])
        if d == 0 or any(len(v) != d for v in steps):
            raise DomainError("all steps must share one positive dimension")
        if len(set(steps)) != len(steps):
            raise DomainError("steps must be distinct")
        object.__setattr__(self, "steps", steps)

    @property
    def dimension(self):
        return len(self.steps[0])

    @property
    def k(self):
        return len(self.steps)

    def vector(self, index):
        return self.steps[index - 1]


@dataclass(frozen=True)
class HalfspaceRegion:
    """``{x : <normal, x> >= offset}`` for each ``(normal, offset)`` pair.

    An empty constraint list is the whole space.
    """

    constraints: tuple = ()

    def __post_init__(self):
        cons = tuple((tuple(int(c) for c in normal), int(offset)) for normal, offset in self.constraints)
        object.__setattr__(self, "constraints", cons)

    def contains(self, point):
        return all(
            sum(a * b for a, b in zip(normal, point)) >= offset for normal, offset in self.constraints
        )


@dataclass(frozen=True)
class LatticePath:
    """A start point and the sequence of step indices taken from it."""

    start: tuple
    indices: tuple

    @property
    def time(self):
        return len(self.indices)

    def points(self, steps):
        pts = [tuple(self.start)]
        for i in self.indices:
            pts.append(_add(pts[-1], steps.vector(i)))
        return pts


BINOMIAL_STEPS = StepSet(((1, 0), (0, 1)))
DYCK_STEPS = StepSet(((1, 1), (1, -1)))
UPPER_HALF_PLANE = HalfspaceRegion((((0, 1), 0),))


def _add(p, v, scale=1):
    return tuple(a + scale * b for a, b in zip(p, v))


def _point(p, steps):
    p = tuple(int(c) for c in p)
    if len(p) != steps.dimension:
        raise DomainError(f"point {p} does not have dimension {steps.dimension}")
    return p


def check_pattern(c, k=None):
    """Return ``c`` as a tuple after checking it is a valid pattern.

    Adjacent entries must differ; with ``k`` given, entries must lie in
    ``1..k``. The empty pattern is valid.
    """
    c = tuple(int(v) for v in c)
    if k is not None and any(v < 1 or v > k for v in c):
        raise DomainError(f"pattern {c} uses an index outside 1..{k}")
    if any(a == b for a, b in zip(c, c[1:])):
        raise DomainError(f"pattern {c} has equal adjacent entries")
    return c


def pattern_of(path):
    """Collapse contiguous runs of repeated step indices.

    Accepts a :class:`LatticePath` or a bare sequence of indices.
    """
    indices = path.indices if isinstance(path, LatticePath) else tuple(path)
    return tuple(key for key, _ in itertools.groupby(indices))


def patterns(n, k):
    """All patterns of length ``n + 1`` over ``1..k``."""
    if n < 0:
        return
    if k == 1:
        if n == 0:
            yield (1,)
        return

    def extend(prefix):
        if len(prefix) == n + 1:
            yield prefix
            return
        for v in range(1, k + 1):
            if v != prefix[-1]:
                yield from extend(prefix + (v,))

    for first in range(1, k + 1):
        yield from extend((first,))


def _count_dp(steps, p, q, l, region):
    frontier = {p: 1}
    for _ in range(l):
        nxt = defaultdict(int)
        for point, ways in frontier.items():
            for v in steps.steps:
                r = _add(point, v)
                if region is None or region.contains(r):
                    nxt[r] += ways
        frontier = nxt
    return frontier.get(q, 0)


def count_paths(steps, p, q, l):
    """Number of lattice paths from ``p`` to ``q`` in exactly ``l`` steps."""
    if l < 0:
        raise DomainError(f"travel time must be >= 0, got {l}")
    return _count_dp(steps, _point(p, steps), _point(q, steps), int(l), None)


def count_paths_restricted(steps, p, q, l, region):
    """Like :func:`count_paths` but every visited point must lie in ``region``."""
    if l < 0:
        raise DomainError(f"travel time must be >= 0, got {l}")
    p, q = _point(p, steps), _point(q, steps)
    if not (region.contains(p) and region.contains(q)):
        raise DomainError(f"endpoints {p}, {q} must lie in the region")
    return _count_dp(steps, p, q, int(l), region)


def count_paths_by_pattern(steps, p, q, l, c, region=None):
    """Number of paths ``p -> q`` in time ``l`` whose pattern is ``c``.

    Enumerates the positive integer durations ``(s_0, ..., s_n)`` with
    ``sum s_i = l`` and ``p + sum s_i v_{c_i} = q``. With ``region`` given,
    every corner point must also lie in it (enough for convex regions).
    """
    c = check_pattern(c, steps.k)
    p, q = _point(p, steps), _point(q, steps)
    if region is not None and not (region.contains(p) and region.contains(q)):
        raise DomainError(f"endpoints {p}, {q} must lie in the region")
    if not c:
        return int(l == 0 and p == q)
    m = len(c)
    if l < m:
        return 0
    vectors = [steps.vector(i) for i in c]
    count = 0
    for cuts in itertools.combinations(range(1, l), m - 1):
        bounds = (0,) + cuts + (l,)
        point = p
        ok = True
        for i, v in enumerate(vectors):
            point = _add(point, v, bounds[i + 1] - bounds[i])
            if region is not None and i < m - 1 and not region.contains(point):
                ok = False
                break
        if ok and point == q:
            count += 1
    return count


def pattern_decomposition(steps, p, q, l, region=None):
    """Counts of paths ``p -> q`` in time ``l`` split by pattern.

    Pattern lengths run over every length that admits positive durations,
    i.e. ``1..l`` (plus the empty pattern when ``l == 0``). Patterns with a
    zero count are omitted.
    """
    if l == 0:
        n = count_paths_by_pattern(steps, p, q, 0, (), region)
        return {(): n} if n else {}
    out = {}
    for n in range(l):
        for c in patterns(n, steps.k):
            cnt = count_paths_by_pattern(steps, p, q, l, c, region)
            if cnt:
                out[c] = cnt
    return out


def _integral(value, name):
    if value != int(value):
        return None
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return int(value)


def _compositions(total, parts):
    """Enumerate positive integer ``parts``-tuples summing to ``total``."""
    if parts == 0:
        return 1 if total == 0 else 0
    if total < parts:
        return 0
    return math.comb(total - 1, parts - 1)


def interior_lattice_points(poly):
    """Integer points with strictly positive durations in a component polytope.

    Binomial components are products of two simplices of durations, so the
    count is the product of the positive compositions of each time budget.
    Catalan components are enumerated in Cartesian chain coordinates: strict
    integer chains ``0 < x_1 < ... < x_n < (x+y)/2`` and
    ``0 < y_1 < ... < y_n < (x-y)/2`` with ``x_i >= y_i``. The chain
    comparison is closed because a Dyck path may touch the axis at a valley.
    A 0-dimensional component counts as its single point when that point is
    integral with positive durations.
    """
    if not isinstance(poly, PolytopeSpec):
        raise DomainError("interior_lattice_points needs a PolytopeSpec")
    if poly.kind == BINOMIAL:
        x = _integral(poly.x, "horizontal time")
        y = _integral(poly.y, "vertical time")
        if x is None or y is None:
            return 0
        a, b = poly.direction_counts
        return _compositions(x, a) * _compositions(y, b)
    up, down = poly.half_sums
    up = _integral(up, "(x+y)/2")
    down = _integral(down, "(x-y)/2")
    if up is None or down is None:
        return 0
    n = poly.index
    if n == 0:
        return int(up > 0 and down > 0)
    count = 0
    for xs in itertools.combinations(range(1, up), n):
        for ys in itertools.combinations(range(1, down), n):
            if all(a >= b for a, b in zip(xs, ys)):
                count += 1
    return count


def dyck_count(n):
    """Dyck paths of semilength ``n`` by restricted dynamic programming."""
    return count_paths_restricted(DYCK_STEPS, (0, 0), (2 * n, 0), 2 * n, UPPER_HALF_PLANE)


def dyck_peak_counts(n):
    """Dyck paths of semilength ``n`` keyed by number of peaks.

    Independent of the pattern machinery: a DP over (height, last step,
    peaks so far), counting a peak at every up-step followed by a down-step.
    """
    if n < 0:
        raise DomainError(f"semilength must be >= 0, got {n}")
    if n == 0:
        return {0: 1}
    states = {(0, None, 0): 1}
    for _ in range(2 * n):
        nxt = defaultdict(int)
        for (h, last, peaks), ways in states.items():
            nxt[(h + 1, "U", peaks)] += ways
            if h > 0:
                nxt[(h - 1, "D", peaks + (last == "U"))] += ways
        states = nxt
    out = defaultdict(int)
    for (h, _, peaks), ways in states.items():
        if h == 0:
            out[peaks] += ways
    return dict(sorted(out.items()))


def catalan_number(n):
    return math.comb(2 * n, n) // (n + 1)


def narayana(n, k):
    """Dyck paths of semilength ``n`` with exactly ``k`` peaks."""
    if n < 1 or k < 1 or k > n:
        return 0
    return math.comb(n, k) * math.comb(n, k - 1) // n
