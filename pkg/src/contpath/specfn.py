"""Series kernels and the modified Bessel functions used by the closed forms.

Every infinite sum in the package goes through :func:`sum_series`, which
applies one stop rule: stop once two consecutive terms satisfy
``|term| < rel_tol * |partial| + abs_tol``. All the series involved have a
product of two factorials in the denominator, so their terms decrease
monotonically after a finite hump and the rule is sound.
"""

import math
from dataclasses import dataclass

from . import kernels
from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesConfig",
    "DEFAULT_CONFIG",
    "sum_series",
    "bessel_I0",
    "bessel_I1",
    "bessel_I_half",
    "falling_factorial",
]


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation policy for infinite sums.

    Attributes
    ----------
    rel_tol : float
        Relative stop threshold on a term versus the partial sum.
    abs_tol : float
        Absolute floor added to the threshold.
    max_terms : int
        Hard cap; exceeding it raises :class:`ConvergenceError`.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 0.0
    max_terms: int = 500

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if not (self.abs_tol >= 0 and math.isfinite(self.abs_tol)):
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_CONFIG = SeriesConfig()

# Sums to the last significant bit; used where finite differences amplify
# truncation noise.
FULL_PRECISION = SeriesConfig(rel_tol=2.0**-60, abs_tol=0.0, max_terms=2000)


def sum_series(q, a=1.0, b=0.0, shift=0.0, config=None):
    """Evaluate ``sum_n (a + b n) q^n / (n! (shift+1)_n)``.

    ``(shift+1)_n`` is the rising factorial, so ``shift=0`` gives the
    ``n! n!`` denominators of I0 and ``shift=1`` the ``n! (n+1)!`` ones.

    Returns
    -------
    value : float
    terms : int
        Number of terms summed before the stop rule fired.
    """
    cfg = config or DEFAULT_CONFIG
    value, used = kernels.series(
        float(q), float(a), float(b), float(shift), cfg.rel_tol, cfg.abs_tol, int(cfg.max_terms)
    )
    if used < 0:
        raise ConvergenceError(
            f"series in q={q!r} did not converge within {cfg.max_terms} terms"
        )
    return value, used


def _check_arg(z, strict=False):
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"argument must be finite, got {z!r}")
    if z < 0 or (strict and z == 0):
        raise DomainError(f"argument must be {'>' if strict else '>='} 0, got {z!r}")
    return z


def bessel_I0(z, config=None):
    """Modified Bessel function I0 for real ``z >= 0`` by its power series."""
    z = _check_arg(z)
    return sum_series(0.25 * z * z, 1.0, 0.0, 0.0, config)[0]


def bessel_I1(z, config=None):
    """Modified Bessel function I1 for real ``z >= 0`` by its power series."""
    z = _check_arg(z)
    return 0.5 * z * sum_series(0.25 * z * z, 1.0, 0.0, 1.0, config)[0]


def _upward_is_safe(n, z):
    # measured: relative error stays near 1e-15 while 4n <= z and grows
    # by orders of magnitude per step of n beyond that
    return n <= 1 or 4 * n <= z


def bessel_I_half(n, z, config=None):
    """``I_{n+1/2}(z)`` for integer ``n >= 0`` and real ``z > 0``.

    Starts from the elementary forms of ``I_{1/2}`` and ``I_{-1/2}`` and runs
    the three-term recurrence upward while the order is at most a quarter of the
    argument; past that the recurrence is unstable and the power series is
    summed directly.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"order index must be a nonnegative integer, got {n!r}")
    n = int(n)
    z = _check_arg(z, strict=True)
    if not _upward_is_safe(n, z):
        return _bessel_I_half_series(n, z, config)
    c = math.sqrt(2.0 / (math.pi * z))
    lower = c * math.cosh(z)  # I_{-1/2}
    cur = c * math.sinh(z)  # I_{1/2}
    for k in range(n):
        v = k + 0.5
        lower, cur = cur, lower - (2.0 * v / z) * cur
    return cur


def _bessel_I_half_series(n, z, config=None):
    v = n + 0.5
    s, _ = sum_series(0.25 * z * z, 1.0, 0.0, v, config)
    return math.exp(v * math.log(0.5 * z) - math.lgamma(v + 1.0)) * s


def falling_factorial(a, n):
    """``a (a-1) ... (a-n+1)``, the number of injections ``[n] -> [a]``.

    Zero when ``a < n``.
    """
    if int(a) != a or int(n) != n or a < 0 or n < 0:
        raise DomainError(f"falling_factorial needs nonnegative integers, got ({a!r}, {n!r})")
    return math.perm(int(a), int(n))
