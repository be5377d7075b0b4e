"""The continuous binomial coefficient ``{x<s>}`` and its companions.

``{x<s>}`` is the total volume of the space of directed paths from the
origin that spend time ``s`` moving horizontally and ``x - s`` moving
vertically. The primary evaluator is the all-positive single series

    {x<s>} = sum_n (x + 2n + 2) (s(x-s))^n / (n! (n+1)!)

which depends on ``s`` only through ``s(x-s)`` and is therefore exactly
symmetric under ``s -> x - s`` whenever that subtraction is exact.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError
from .specfn import DEFAULT_CONFIG, FULL_PRECISION, bessel_I0, bessel_I1, falling_factorial, sum_series

__all__ = [
    "IntervalFamily",
    "DirectedPath",
    "cont_binom",
    "cont_binom_array",
    "cont_binom_bessel",
    "pde_residual",
    "species_count",
    "expansion_ts",
    "midpoint_series",
    "interval_family_to_path",
]


def _check_xs(x, s):
    x, s = float(x), float(s)
    if not (math.isfinite(x) and math.isfinite(s)):
        raise DomainError(f"arguments must be finite, got ({x!r}, {s!r})")
    if not 0.0 <= s <= x:
        raise DomainError(f"need 0 <= s <= x, got x={x!r}, s={s!r}")
    return x, s


def cont_binom(x, s, config=None):
    """``{x<s>}`` for ``0 <= s <= x``; equal to ``2 + x`` on the boundary."""
    x, s = _check_xs(x, s)
    if s == 0.0 or s == x:
        return 2.0 + x
    return sum_series(s * (x - s), x + 2.0, 2.0, 1.0, config)[0]


def cont_binom_array(x, s, config=None):
    """Vectorized :func:`cont_binom` over an array of ``s`` for one ``x``."""
    cfg = config or DEFAULT_CONFIG
    x = float(x)
    s = np.asarray(s, dtype=np.float64)
    if not math.isfinite(x) or np.any(~np.isfinite(s)) or np.any(s < 0) or np.any(s > x):
        raise DomainError("need finite 0 <= s <= x elementwise")
    flat = s.ravel()
    values, used = kernels.series_array(
        flat * (x - flat), x + 2.0, 2.0, 1.0, cfg.rel_tol, cfg.abs_tol, int(cfg.max_terms)
    )
    if used < 0:
        raise ConvergenceError(f"series did not converge within {cfg.max_terms} terms")
    values = np.where((flat == 0.0) | (flat == x), 2.0 + x, values)
    return values.reshape(s.shape)


def cont_binom_bessel(x, s, config=None):
    """``2 I0(2r) + (x / r) I1(2r)`` with ``r = sqrt(s (x - s))``.

    At ``s = 0`` or ``s = x`` the limit ``2 + x`` is returned.
    """
    x, s = _check_xs(x, s)
    if s == 0.0 or s == x:
        return 2.0 + x
    r = math.sqrt(s * (x - s))
    return 2.0 * bessel_I0(2.0 * r, config) + x / r * bessel_I1(2.0 * r, config)


def pde_residual(x, s, h, config=FULL_PRECISION):
    """Central-difference value of ``(d_xx + d_xs) {x<s>} - {x<s>}``.

    Second-order accurate in ``h``. The point must keep a margin of ``2h``
    from both edges of ``0 <= s <= x``.
    """
    x, s = _check_xs(x, s)
    h = float(h)
    if not h > 0:
        raise DomainError(f"step must be positive, got {h!r}")
    if s < 2 * h or x - s < 2 * h:
        raise DomainError(f"({x}, {s}) is within 2h = {2 * h} of the boundary")

    def f(a, b):
        return cont_binom(a, b, config)

    center = f(x, s)
    fxx = (f(x + h, s) - 2.0 * center + f(x - h, s)) / (h * h)
    fxs = (f(x + h, s + h) - f(x + h, s - h) - f(x - h, s + h) + f(x - h, s - h)) / (4.0 * h * h)
    return fxx + fxs - center


def species_count(n, m):
    """Coefficient of ``t^n s^m / (n! m!)`` in ``{(t+1)s<s>}``.

    An integer built from falling factorials; it counts the structures of
    the species whose generating function is the continuous binomial.
    """
    if n < 0 or m < 0:
        return 0
    if m == 2 * n:
        return 2 * falling_factorial(2 * n, n)
    if m == 2 * n + 1:
        return falling_factorial(2 * n + 1, n)
    if m == 2 * n - 1:
        return falling_factorial(2 * n - 1, n)
    return 0


def expansion_ts(t, s, order):
    """Truncated nonnegative expansion of ``{(t+1)s<s>}`` through ``t^order``."""
    t, s = float(t), float(s)
    if t < 0 or s < 0 or not (math.isfinite(t) and math.isfinite(s)):
        raise DomainError(f"need finite t >= 0 and s >= 0, got ({t!r}, {s!r})")
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order!r}")
    total = 0.0
    for n in range(int(order) + 1):
        for m in (2 * n - 1, 2 * n, 2 * n + 1):
            cnt = species_count(n, m)
            if cnt:
                coeff = float(Fraction(cnt, math.factorial(n) * math.factorial(m)))
                total += coeff * t**n * s**m
    return total


def midpoint_series(s, config=None):
    """``2 sum_n C(n, floor(n/2)) s^n / n!``, which equals ``{2s<s>}``."""
    cfg = config or DEFAULT_CONFIG
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s!r}")
    total = 0.0
    small = 0
    for n in range(cfg.max_terms):
        term = math.comb(n, n // 2) / math.factorial(n) * s**n
        total += term
        if abs(term) < cfg.rel_tol * abs(total) + cfg.abs_tol:
            small += 1
            if small == 2:
                return 2.0 * total
        else:
            small = 0
    raise ConvergenceError(f"midpoint series at s={s!r} did not converge")


@dataclass(frozen=True)
class IntervalFamily:
    """Disjoint closed intervals ``[a_i, b_i]`` inside ``[0, x]``, in order.

    Touching intervals (``b_i == a_{i+1}``) are rejected: the path map needs
    strict gaps between consecutive intervals.
    """

    intervals: tuple
    x: float

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        x = float(self.x)
        if not math.isfinite(x) or x < 0:
            raise DomainError(f"x must be finite and nonnegative, got {x!r}")
        for a, b in ivs:
            if not (0.0 <= a <= b <= x):
                raise DomainError(f"interval [{a}, {b}] is not a closed subinterval of [0, {x}]")
        for (_, b), (a, _) in zip(ivs, ivs[1:]):
            if not b < a:
                raise DomainError(f"intervals must be disjoint and increasing; {b} !< {a}")
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "x", x)

    @property
    def length(self):
        return sum(b - a for a, b in self.intervals)


@dataclass(frozen=True)
class DirectedPath:
    """A pattern over ``{1 (horizontal), 2 (vertical)}`` with segment durations."""

    pattern: tuple
    times: tuple
    start: tuple = (0.0, 0.0)

    @property
    def total_time(self):
        return sum(self.times)

    @property
    def peaks(self):
        pts = [tuple(self.start)]
        for c, dt in zip(self.pattern, self.times):
            px, py = pts[-1]
            pts.append((px + dt, py) if c == 1 else (px, py + dt))
        return pts


def interval_family_to_path(S, x=None):
    """Directed path in ``Gamma(s, x - s)`` encoded by an interval family.

    Time inside the intervals is spent moving horizontally (direction 1)
    and time in the gaps moving vertically (direction 2). Leading or
    trailing gaps of zero length are dropped, which yields the four
    pattern shapes ``(1,...,1)``, ``(1,...,2)``, ``(2,...,1)`` and
    ``(2,...,2)``. The empty family maps to pattern ``(2)`` with time ``x``.
    """
    if not isinstance(S, IntervalFamily):
        if x is None:
            raise DomainError("x is required when S is not an IntervalFamily")
        S = IntervalFamily(tuple(S), x)
    ivs, x = S.intervals, S.x
    if not ivs:
        return DirectedPath((2,), (x,))
    pattern, times = [], []
    if ivs[0][0] > 0.0:
        pattern.append(2)
        times.append(ivs[0][0])
    for i, (a, b) in enumerate(ivs):
        pattern.append(1)
        times.append(b - a)
        if i + 1 < len(ivs):
            pattern.append(2)
            times.append(ivs[i + 1][0] - b)
    if ivs[-1][1] < x:
        pattern.append(2)
        times.append(x - ivs[-1][1])
    return DirectedPath(tuple(pattern), tuple(times))
