"""The continuous binomial distribution.

For ``0 < p < 1`` and ``x > 0`` the density on ``[0, x]`` is
``{x<s>} p^s (1-p)^(x-s) / b_p(x)``. At ``p = 1/2`` the weight is constant
and the distribution, recentred to ``[-x/2, x/2]``, has the even density
``d_x(s) = {x<x/2+s>} / (2(e^x - 1))``.

Wherever ``ln(p/(1-p))`` enters a series, ``p = 1/2`` is dispatched to the
closed forms first since the series degenerate there.
"""

import math
from dataclasses import dataclass

import numpy as np

from .binom import cont_binom, cont_binom_array
from .errors import ConvergenceError, DomainError
from .quad import integrate1d
from .specfn import DEFAULT_CONFIG, bessel_I_half

__all__ = [
    "ContBinomDist",
    "CenteredDensity",
    "binom_integral",
    "normalizer",
    "normalizer_series",
    "normalizer_bessel",
    "density",
    "density_array",
    "cdf",
    "moment_half",
    "moment_p",
    "moment_quadrature",
    "centered_even_moment",
    "centered_moment",
    "sample",
    "delta_limit_check",
]


@dataclass(frozen=True)
class ContBinomDist:
    x: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and self.x > 0):
            raise DomainError(f"x must be positive and finite, got {self.x!r}")
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p!r}")

    @property
    def log_odds(self):
        return math.log(self.p / (1.0 - self.p))

    def weight(self, s):
        return math.exp(s * math.log(self.p) + (self.x - s) * math.log1p(-self.p))


@dataclass(frozen=True)
class CenteredDensity:
    """``d_x``: the ``p = 1/2`` distribution shifted to ``[-x/2, x/2]``."""

    x: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and self.x > 0):
            raise DomainError(f"x must be positive and finite, got {self.x!r}")

    @property
    def support(self):
        return -0.5 * self.x, 0.5 * self.x

    @property
    def mass(self):
        # int_0^x {x<t>} dt, in closed form
        return 2.0 * math.expm1(self.x)


def binom_integral(x, rel_tol=1e-13):
    """``int_0^x {x<s>} ds`` by adaptive quadrature."""
    x = float(x)
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"x must be finite and nonnegative, got {x!r}")
    if x == 0.0:
        return 0.0
    return integrate1d(lambda s: cont_binom(x, s), 0.0, x, rel_tol)[0]


def _half_normalizer(x):
    return math.expm1(x) * 2.0 ** (1.0 - x)


def normalizer(dist, method="quadrature", config=None):
    """``b_p(x) = int_0^x {x<s>} p^s (1-p)^(x-s) ds``.

    ``method`` selects quadrature (default), the double power series in
    ``ln(p/(1-p))`` or the half-integer Bessel series. All three use the
    closed form ``(e^x - 1) 2^(1-x)`` at ``p = 1/2``.
    """
    if dist.p == 0.5:
        return _half_normalizer(dist.x)
    if method == "quadrature":
        x = dist.x
        return integrate1d(lambda s: cont_binom(x, s) * dist.weight(s), 0.0, x, 1e-13)[0]
    if method == "series":
        return normalizer_series(dist, config)
    if method == "bessel":
        return normalizer_bessel(dist, config)
    raise DomainError(f"unknown normalizer method {method!r}")


def _double_series(x, L, l, config=None, max_diagonal=None):
    """``sum_{k,n} L^k (n+k+l)!/(k! n!) x^N/N! (1 + x/(2n+2))``, ``N = 2n+k+l+1``.

    Summed over anti-diagonals ``k + n = m``; the stop rule is applied to the
    absolute anti-diagonal mass so sign cancellation cannot end it early.
    """
    cfg = config or DEFAULT_CONFIG
    cap = cfg.max_terms if max_diagonal is None else int(max_diagonal)
    lx, lL = math.log(x), math.log(abs(L))
    sign_L = -1.0 if L < 0 else 1.0
    total = 0.0
    small = 0
    for m in range(cap):
        diag = 0.0
        mass = 0.0
        for k in range(m + 1):
            n = m - k
            N = 2 * n + k + l + 1
            log_mag = (
                k * lL
                + math.lgamma(n + k + l + 1)
                - math.lgamma(k + 1)
                - math.lgamma(n + 1)
                + N * lx
                - math.lgamma(N + 1)
            )
            t = math.exp(log_mag) * (1.0 + x / (2 * n + 2))
            mass += t
            diag += t * sign_L**k
        total += diag
        if mass < cfg.rel_tol * abs(total) + cfg.abs_tol:
            small += 1
            if small == 2:
                return total
        else:
            small = 0
    raise ConvergenceError(f"double series not converged after {cap} anti-diagonals")


def normalizer_series(dist, config=None):
    """``b_p(x)`` from the double power series in ``ln(p/(1-p))``."""
    if dist.p == 0.5:
        return _half_normalizer(dist.x)
    x = dist.x
    return 2.0 * (1.0 - dist.p) ** x * _double_series(x, dist.log_odds, 0, config)


def normalizer_bessel(dist, config=None):
    """``b_p(x)`` as a series of half-integer-order Bessel functions.

    The summand ``(x/L)^(n+1/2) I_{n+1/2}(xL/2)`` is even in ``L``, so
    ``|ln(p/(1-p))|`` is used and ``p < 1/2`` needs no complex powers.
    """
    cfg = config or DEFAULT_CONFIG
    if dist.p == 0.5:
        return _half_normalizer(dist.x)
    x = dist.x
    L = abs(dist.log_odds)
    z = 0.5 * x * L
    total = 0.0
    small = 0
    for n in range(cfg.max_terms):
        v = n + 0.5
        term = (x + 2 * n + 2) / math.factorial(n + 1) * (x / L) ** v * bessel_I_half(n, z, cfg)
        total += term
        if abs(term) < cfg.rel_tol * abs(total) + cfg.abs_tol:
            small += 1
            if small == 2:
                break
        else:
            small = 0
    else:
        raise ConvergenceError("Bessel series for the normalizer did not converge")
    return math.sqrt(math.pi) * (dist.p * (1.0 - dist.p)) ** (0.5 * x) * total


def density(d, s):
    """``d_x(s)``; zero outside ``[-x/2, x/2]``."""
    lo, hi = d.support
    s = float(s)
    if not lo <= s <= hi:
        return 0.0
    t = min(max(0.5 * d.x + s, 0.0), d.x)
    return cont_binom(d.x, t) / d.mass


def density_array(d, s):
    s = np.asarray(s, dtype=np.float64)
    lo, hi = d.support
    inside = (s >= lo) & (s <= hi)
    t = np.clip(0.5 * d.x + np.where(inside, s, 0.0), 0.0, d.x)
    return np.where(inside, cont_binom_array(d.x, t) / d.mass, 0.0)


def cdf(d, s):
    """``P(S <= s)`` under ``d_x``, by quadrature of the density."""
    lo, hi = d.support
    if s <= lo:
        return 0.0
    if s >= hi:
        return 1.0
    return integrate1d(lambda u: density(d, u), lo, s, 1e-12)[0]


def _moment_integral(x, l, config=None):
    """``int_0^x s^l {x<s>} ds`` from its termwise-integrated series (``l >= 1``)."""
    cfg = config or DEFAULT_CONFIG
    t1 = 2.0 * x ** (l + 1) / (l + 1)
    t2 = x ** (l + 2) / (l + 1)
    total = 0.0
    small = 0
    xx = x * x
    for n in range(cfg.max_terms):
        term = t1 + t2
        total += term
        if abs(term) < cfg.rel_tol * abs(total) + cfg.abs_tol:
            small += 1
            if small == 2:
                return total
        else:
            small = 0
        denom = (2 * n + l + 2) * (2 * n + l + 3)
        t1 *= (n + l + 1) / (n + 1) * xx / denom
        t2 *= (n + l + 1) / (n + 2) * xx / denom
    raise ConvergenceError(f"moment series (x={x}, l={l}) did not converge")


def _moment_integral_any(x, l, config=None):
    return 2.0 * math.expm1(x) if l == 0 else _moment_integral(x, l, config)


def moment_half(x, l, config=None):
    """``E(s^l)`` on ``[0, x]`` for ``p = 1/2``, by series."""
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"x must be positive and finite, got {x!r}")
    if int(l) != l or l < 1:
        raise DomainError(f"moment order must be an integer >= 1, got {l!r}")
    return _moment_integral(x, int(l), config) / (2.0 * math.expm1(x))


def moment_p(dist, l, order=None, config=None):
    """``E_p(s^l)`` on ``[0, x]`` from the double series in ``ln(p/(1-p))``.

    ``order`` caps the number of anti-diagonals (default: ``max_terms``);
    if the terms have not decayed by then :class:`ConvergenceError` is
    raised instead of returning a truncated value.
    """
    if int(l) != l or l < 1:
        raise DomainError(f"moment order must be an integer >= 1, got {l!r}")
    if dist.p == 0.5:
        return moment_half(dist.x, l, config)
    L = dist.log_odds
    num = _double_series(dist.x, L, int(l), config, order)
    den = _double_series(dist.x, L, 0, config, order)
    return num / den


def moment_quadrature(dist, l):
    """``E_p(s^l)`` by direct quadrature; an oracle for the series forms."""
    x = dist.x
    num = integrate1d(lambda s: s**l * cont_binom(x, s) * dist.weight(s), 0.0, x, 1e-13)[0]
    den = integrate1d(lambda s: cont_binom(x, s) * dist.weight(s), 0.0, x, 1e-13)[0]
    return num / den


def centered_even_moment(x, k, config=None):
    """``E(s^(2k))`` under ``d_x`` via the binomial expansion about ``x/2``."""
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"x must be positive and finite, got {x!r}")
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    if k == 0:
        return 1.0
    total = 0.0
    for l in range(2 * k + 1):
        total += math.comb(2 * k, l) * (-0.5 * x) ** (2 * k - l) * _moment_integral_any(x, l, config)
    return total / (2.0 * math.expm1(x))


def centered_moment(x, order, config=None):
    """``E(s^order)`` under ``d_x``; exactly zero for odd orders."""
    if int(order) != order or order < 0:
        raise DomainError(f"order must be a nonnegative integer, got {order!r}")
    if order % 2:
        return 0.0
    return centered_even_moment(x, order // 2, config)


def sample(d, count, seed):
    """``count`` i.i.d. draws from ``d_x`` by rejection from a uniform box.

    The envelope height is ``d_x(0)``, the maximum of the density. Draws are
    a deterministic function of ``(x, count, seed)``.
    """
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    if int(seed) != seed or seed < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))
    lo, hi = d.support
    top = density(d, 0.0)
    out = np.empty(int(count))
    filled = 0
    while filled < count:
        batch = max(4096, 2 * (count - filled))
        s = rng.uniform(lo, hi, batch)
        u = rng.uniform(0.0, top, batch)
        keep = s[u < density_array(d, s)]
        take = min(keep.size, count - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    return out


def delta_limit_check(f, xs):
    """``int f d_x`` for each ``x`` of a decreasing positive sequence.

    As ``x -> 0`` the values approach ``f(0)``.
    """
    xs = [float(x) for x in xs]
    if any(x <= 0 for x in xs) or any(b >= a for a, b in zip(xs, xs[1:])):
        raise DomainError("x sequence must be positive and strictly decreasing")
    out = []
    for x in xs:
        d = CenteredDensity(x)
        lo, hi = d.support
        out.append(integrate1d(lambda s: f(s) * density(d, s), lo, hi, 1e-13)[0])
    return out
