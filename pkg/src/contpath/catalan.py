"""Continuous Catalan functions.

``Lambda^n(x, y)`` is the polytope of Dyck-type directed paths from the
origin to ``(x, y)`` with ``n + 1`` up-runs. Its volume is a polynomial:
writing ``I_0 = 1`` and ``I_n(a, b) = int_0^b int_0^{a+b-v} I_{n-1}(u, v) du dv``,
one has ``vol(Lambda^n(x, y)) = I_n(y, (x - y)/2)``. The integer
coefficients of ``I_n`` in the basis ``a^k/k! b^l/l!`` are built exactly
and volumes are evaluated in rational arithmetic, converting to float only
at the end.
"""

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .lattice import dyck_peak_counts, interior_lattice_points, narayana
from .polytope import PolytopeSpec
from .quad import integrate1d, integrate_triangle

__all__ = [
    "LambdaParams",
    "CoeffTable",
    "CatalanValue",
    "NarayanaRow",
    "coeff_table",
    "lambda_volume",
    "lambda_volume_quad",
    "lambda_polynomial",
    "catalan_series_coeffs",
    "catalan_series_eval",
    "catalan_C",
    "integral_equation_residual",
    "narayana_anchor",
]

DEFAULT_TABLE_SIZE = 24


@dataclass(frozen=True)
class LambdaParams:
    x: float
    y: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)) or not 0 <= self.y <= self.x:
            raise DomainError(f"need 0 <= y <= x, got ({self.x!r}, {self.y!r})")
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"component index must be a nonnegative integer, got {self.n!r}")


@dataclass(frozen=True)
class CoeffTable:
    """Integers ``I^n_{k,l}`` for ``n <= N`` and ``k + l <= M``.

    ``rows[n]`` maps ``(k, l)`` to the coefficient and holds only nonzero
    entries; missing keys are zero.
    """

    N: int
    M: int
    rows: tuple

    def __call__(self, n, k, l):
        if not (0 <= n <= self.N and k >= 0 and l >= 0 and k + l <= self.M):
            raise DomainError(f"({n}, {k}, {l}) lies outside the table")
        return self.rows[n].get((k, l), 0)

    def side_condition_violations(self):
        """Entries breaking ``I^0 = delta``, ``I^n_{k,l} = 0 (n > l)`` or
        ``I^n_{k,0} = 0 (n > 0)``. Empty for a correct table."""
        bad = []
        for n, row in enumerate(self.rows):
            for k in range(self.M + 1):
                for l in range(self.M + 1 - k):
                    v = row.get((k, l), 0)
                    if n == 0 and v != (1 if k == l == 0 else 0):
                        bad.append((n, k, l, v))
                    elif n > l and v != 0:
                        bad.append((n, k, l, v))
                    elif n > 0 and l == 0 and v != 0:
                        bad.append((n, k, l, v))
        return bad


def _next_row(prev, M, degree=None):
    row = {}
    for l in range(M + 1):
        binoms = [math.comb(l, p) for p in range(l + 1)]
        ks = range(M + 1 - l) if degree is None else [degree - l] if 0 <= degree - l else []
        for k in ks:
            acc = 0
            for p in range(l):
                for q in range(l - p):
                    i, j = k + p + q - 1, l - p - q - 1
                    if i < 0:
                        continue
                    v = prev.get((i, j))
                    if v:
                        term = binoms[p] * math.comb(l - p - 1, q) * v
                        acc += -term if q % 2 else term
            if acc:
                row[(k, l)] = acc
    return row


@functools.lru_cache(maxsize=None)
def _row(n, M):
    if n == 0:
        return {(0, 0): 1}
    return _next_row(_row(n - 1, M), M)


_table_lock = threading.Lock()


@functools.lru_cache(maxsize=None)
def coeff_table(N=DEFAULT_TABLE_SIZE, M=DEFAULT_TABLE_SIZE):
    """Exact coefficient table from the integer recursion for ``I^n_{k,l}``."""
    if int(N) != N or int(M) != M or N < 0 or M < 0:
        raise DomainError(f"table sizes must be nonnegative integers, got ({N!r}, {M!r})")
    with _table_lock:
        rows = tuple(dict(_row(n, int(M))) for n in range(int(N) + 1))
    return CoeffTable(int(N), int(M), rows)


@functools.lru_cache(maxsize=None)
def _homogeneous_row(n):
    # The recursion raises the degree k + l by exactly two and I^0 has
    # degree 0, so row n only has entries with k + l = 2n.
    if n == 0:
        return {(0, 0): 1}
    return _next_row(_homogeneous_row(n - 1), 2 * n, degree=2 * n)


def _row_for_volume(n):
    with _table_lock:
        return _homogeneous_row(n)


def _eval_row(row, a, b):
    total = Fraction(0)
    for (k, l), c in row.items():
        total += Fraction(c, math.factorial(k) * math.factorial(l)) * a**k * b**l
    return total


def lambda_volume(n, x=None, y=0.0, exact=False):
    """``vol(Lambda^n(x, y))`` from the exact coefficient table.

    Accepts either ``(n, x, y)`` or a single :class:`LambdaParams`.

    With ``exact=True`` the result is a :class:`~fractions.Fraction` equal
    to the polynomial evaluated at the binary values of ``x`` and ``y``.
    """
    if isinstance(n, LambdaParams):
        params = n
    elif x is None:
        raise DomainError("lambda_volume needs x, or a LambdaParams")
    else:
        params = LambdaParams(float(x), float(y), n)
    a = Fraction(params.y)
    b = (Fraction(params.x) - Fraction(params.y)) / 2
    value = _eval_row(_row_for_volume(params.n), a, b)
    return value if exact else float(value)


def _horner(coeffs, t):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _chain_volume_above(lows, top):
    """Volume of ``{lows_i <= x_i, x_1 <= ... <= x_n <= top}`` for sorted ``lows``.

    Worked out exactly, segment by segment: between consecutive lower
    bounds the remaining volume is a polynomial in the current coordinate,
    stored as a plain coefficient list (constant term first).
    """
    n = len(lows)
    if n == 0:
        return 1.0
    bps = list(lows) + [top]
    # h[j]: volume of the remaining coordinates as a polynomial in the
    # previous coordinate t, valid for t in segment [bps[j], bps[j+1]]
    h = {n - 1: [top, -1.0]}
    for k in range(n - 2, -1, -1):
        f = {k: [_horner(h[k + 1], bps[k + 1])]}
        f.update({j: h[j] for j in range(k + 1, n)})
        new = {}
        tail = 0.0
        for j in range(n - 1, k - 1, -1):
            anti = [0.0] + [c / (i + 1) for i, c in enumerate(f[j])]
            right = _horner(anti, bps[j + 1])
            new[j] = [right + tail - anti[0]] + [-c for c in anti[1:]]
            tail += right - _horner(anti, bps[j])
        h = new
    return _horner(h[0], bps[0])


def lambda_volume_quad(n, x, y=0.0, rel_tol=1e-11):
    """``vol(Lambda^n(x, y))`` by nested adaptive quadrature.

    Independent of the coefficient table: integrates, over the chain
    ``0 <= y_1 <= ... <= y_n <= (x-y)/2``, the exact volume of the
    ``x``-chains lying above it.
    """
    params = LambdaParams(float(x), float(y), n)
    up, down = 0.5 * (params.x + params.y), 0.5 * (params.x - params.y)
    n = int(params.n)

    def level(prefix, lo):
        if len(prefix) == n:
            return _chain_volume_above(prefix, up)
        return integrate1d(lambda t: level(prefix + [t], t), lo, down, rel_tol, 1e-15)[0]

    return level([], 0.0)


def lambda_polynomial(n):
    """``vol(Lambda^n(x, y))`` as ``{(i, j): Fraction}``, coefficient of ``x^i y^j``."""
    if int(n) != n or n < 0:
        raise DomainError(f"component index must be a nonnegative integer, got {n!r}")
    poly = {}
    # a = y, b = (x - y)/2
    for (k, l), c in _row_for_volume(int(n)).items():
        base = Fraction(c, math.factorial(k) * math.factorial(l) * 2**l)
        for r in range(l + 1):
            coef = base * math.comb(l, r) * (-1) ** (l - r)
            key = (r, k + l - r)
            poly[key] = poly.get(key, 0) + coef
    return {key: v for key, v in poly.items() if v}


def catalan_series_coeffs(m_max):
    """Taylor coefficients of ``C(2x)`` in the basis ``x^m / m!``, ``m <= m_max``.

    Uses the closed coefficient formula: for ``m >= 2`` the coefficient is
    ``sum_{k+l=m-2} (sum_{n=1}^{l+1} I^{n-1}_{k,l})
    sum_{p=0}^{k+1} (-1)^(k+1-p) C(m,p) C(m-p-1,l)``.
    """
    if int(m_max) != m_max or m_max < 0:
        raise DomainError(f"m_max must be a nonnegative integer, got {m_max!r}")
    m_max = int(m_max)
    coeffs = [Fraction(1)] + [Fraction(0)] * m_max
    if m_max < 2:
        return coeffs
    table = coeff_table(m_max - 1, m_max - 2)
    for m in range(2, m_max + 1):
        total = 0
        for k in range(m - 1):
            l = m - 2 - k
            inner = sum(table(n - 1, k, l) for n in range(1, l + 2))
            if not inner:
                continue
            weight = sum(
                (-1) ** (k + 1 - p) * math.comb(m, p) * math.comb(m - p - 1, l) for p in range(k + 2)
            )
            total += inner * weight
        coeffs[m] = Fraction(total)
    return coeffs


def catalan_series_eval(x, m_max):
    """Truncated Taylor series of ``C(2x)`` through ``x^m_max``."""
    x = Fraction(float(x))
    total = sum(c * x**m / math.factorial(m) for m, c in enumerate(catalan_series_coeffs(m_max)))
    return float(total)


@dataclass(frozen=True)
class CatalanValue:
    """A truncated ``C(x, y)`` with a rigorous bound on the omitted tail."""

    value: float
    tail_bound: float
    terms: int


def _tail_bound(x, y, n_max):
    w = (x + y) * (x - y)
    if w == 0.0:
        return 0.0
    # sum_{n > n_max} w^n / (n!)^2, summed until the terms stop mattering
    n = n_max + 1
    term = math.exp(n * math.log(w) - 2.0 * math.lgamma(n + 1))
    total = 0.0
    while True:
        total += term
        n += 1
        term *= w / (n * n)
        if term < 1e-17 * total or term == 0.0:
            return total


def catalan_C(x, y=0.0, n_max=30):
    """``C(x, y) = sum_n vol(Lambda^n(x, y))`` truncated after ``n_max``."""
    x, y = float(x), float(y)
    LambdaParams(x, y, 0)
    if int(n_max) != n_max or n_max < 0:
        raise DomainError(f"n_max must be a nonnegative integer, got {n_max!r}")
    a = Fraction(y)
    b = (Fraction(x) - a) / 2
    total = Fraction(0)
    if b == 0:
        return CatalanValue(1.0, 0.0, 1)
    for n in range(int(n_max) + 1):
        total += _eval_row(_row_for_volume(n), a, b)
    return CatalanValue(float(total), _tail_bound(x, y, int(n_max)), int(n_max) + 1)


@functools.lru_cache(maxsize=None)
def _float_rows(n_max):
    rows = []
    for n in range(n_max + 1):
        rows.append(
            [
                (k, l, float(Fraction(c, math.factorial(k) * math.factorial(l))))
                for (k, l), c in sorted(_row_for_volume(n).items())
            ]
        )
    return rows


def _catalan_C_float(x, y, n_max):
    a = y
    b = 0.5 * (x - y)
    total = 0.0
    for row in _float_rows(n_max):
        for k, l, c in row:
            total += c * a**k * b**l
    return total


def _auto_n_max(x, y, target=1e-15):
    n = 4
    while _tail_bound(x, y, n) > target and n < 200:
        n += 1
    return n


def integral_equation_residual(x, y=0.0, n_max=None):
    """``|C(x,y) - 1 - int_0^{(x-y)/2} int_0^{(x+y)/2-b} C(a+2b, a) da db|``.

    The double integral is done by nested adaptive quadrature over the
    triangle; the truncation order defaults to one whose tail bound is
    below ``1e-15``.
    """
    x, y = float(x), float(y)
    LambdaParams(x, y, 0)
    up, down = 0.5 * (x + y), 0.5 * (x - y)
    if down == 0.0:
        return 0.0
    if n_max is None:
        n_max = _auto_n_max(x, y)
    lhs = catalan_C(x, y, n_max).value
    rhs = 1.0 + integrate_triangle(
        lambda a, b: _catalan_C_float(a + 2.0 * b, a, n_max),
        down,
        lambda b: up - b,
        rel_tol=1e-12,
        abs_tol=1e-14,
    )[0]
    return abs(lhs - rhs)


@dataclass(frozen=True)
class NarayanaRow:
    up_runs: int
    component: int
    lattice_count: int
    dyck_count: int
    narayana: int
    unshifted_narayana: int
    volume: float


def narayana_anchor(n):
    """Lattice counts of each ``Lambda^j(2n, 0)`` against Narayana numbers.

    Row ``j`` covers Dyck paths with ``j + 1`` up-runs (peaks). ``narayana``
    is ``N(n, j+1)``; ``unshifted_narayana`` applies the Narayana formula to the
    component index ``j`` directly, which is off by one.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    peaks = dyck_peak_counts(n)
    rows = []
    for j in range(n):
        rows.append(
            NarayanaRow(
                up_runs=j + 1,
                component=j,
                lattice_count=interior_lattice_points(PolytopeSpec.catalan(j, 2 * n, 0)),
                dyck_count=peaks.get(j + 1, 0),
                narayana=narayana(n, j + 1),
                unshifted_narayana=narayana(n, j),
                volume=lambda_volume(j, 2 * n, 0),
            )
        )
    return rows
