"""Cross-check registry behind ``contpath verify``.

Each check compares two independently computed quantities and returns a
:class:`CheckResult`. ``fast=True`` shrinks grids and sample sizes so the
whole suite runs in a few seconds; the comparisons and tolerances are the
same in both modes.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import binom, catalan, dist, lattice, oracle
from .polytope import PolytopeSpec

__all__ = ["CheckResult", "CHECKS", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    seconds: float
    detail: str = ""


def _dyadic_grid(x_max, count, bits=20):
    # multiples of 2**-bits, so x - s is exact in binary floating point
    step = x_max / count
    return [math.floor((i + 1) * step * 2**bits) / 2**bits for i in range(count)]


def check_symmetry(fast):
    worst = 0.0
    exact = True
    xs = _dyadic_grid(10.0, 10 if fast else 50)
    for x in xs:
        exact &= binom.cont_binom(x, 0.0) == 2.0 + x == binom.cont_binom(x, x)
        for s in _dyadic_grid(x, 10 if fast else 50):
            worst = max(worst, abs(binom.cont_binom(x, s) - binom.cont_binom(x, x - s)))
    return worst if exact else math.inf, 1e-12, ""


def check_integral(fast):
    worst = 0.0
    for x in (0.5, 1.0, 2.0, 5.0, 10.0):
        ref = 2.0 * math.expm1(x)
        worst = max(worst, abs(dist.binom_integral(x) - ref) / ref)
    return worst, 1e-9, ""


def check_bessel(fast):
    worst = 0.0
    for x in np.linspace(0.2, 10.0, 8 if fast else 30):
        for s in np.linspace(0.05, x - 0.05, 8 if fast else 30):
            a = binom.cont_binom(x, s)
            b = binom.cont_binom_bessel(x, s)
            worst = max(worst, abs(a - b) / abs(a))
    return worst, 1e-10, ""


def check_pde(fast):
    points = [(1.0, 0.5), (2.0, 0.7), (3.0, 1.5), (4.0, 1.0), (5.0, 2.5),
              (6.0, 3.0), (2.5, 1.25), (7.0, 2.0), (8.0, 5.0), (10.0, 5.0)]
    if fast:
        points = points[:4]
    worst = 0.0
    for x, s in points:
        ratio = binom.pde_residual(x, s, 1e-2) / binom.pde_residual(x, s, 5e-3)
        worst = max(worst, abs(ratio - 4.0))
    return worst, 0.5, "|ratio - 4|"


def check_lattice_anchor(fast):
    bad = 0
    top = 5 if fast else 8
    for x in range(2, top + 1):
        for s in range(1, x):
            total = 0
            for n in range(1, x):
                for c in lattice.patterns(n, 2):
                    total += lattice.interior_lattice_points(PolytopeSpec.binomial(c, s, x - s))
            dp = lattice.count_paths(lattice.BINOMIAL_STEPS, (0, 0), (s, x - s), x)
            bad += total != math.comb(x, s) or dp != math.comb(x, s)
    return float(bad), 0.5, "mismatching (x, s) pairs"


def check_gamma_triple(fast):
    worst = 0.0
    grid = np.linspace(0.0, 4.0, 4 if fast else 8)
    for s in grid:
        for u in grid:
            a = oracle.gamma_volume(s, u)
            b = oracle.gamma_volume_series(s, u)
            c = binom.cont_binom(s + u, s)
            worst = max(worst, abs(a - c) / c, abs(b - c) / c)
    return worst, 1e-8, ""


def check_normalizer(fast):
    worst = 0.0
    for p in (0.2, 0.3, 0.7):
        for x in (1.0, 2.0, 5.0):
            d = dist.ContBinomDist(x, p)
            vals = [dist.normalizer(d, m) for m in ("quadrature", "series", "bessel")]
            worst = max(worst, max(abs(a - b) / abs(a) for a in vals for b in vals))
    return worst, 1e-7, ""


def check_moments(fast):
    worst = 0.0
    for x in (1.0, 2.0, 5.0):
        for p in (0.5, 0.3):
            d = dist.ContBinomDist(x, p)
            for l in range(1, 5):
                worst = max(worst, abs(dist.moment_p(d, l) - dist.moment_quadrature(d, l)))
        if any(dist.centered_moment(x, k) != 0.0 for k in (1, 3, 5)):
            return math.inf, 1e-8, "odd centered moment not zero"
    x = 2.0
    n = 10**5 if fast else 10**6
    draws = dist.sample(dist.CenteredDensity(x), n, seed=20240601)
    var = dist.centered_even_moment(x, 1)
    m4 = dist.centered_even_moment(x, 2)
    z_mean = abs(draws.mean()) / math.sqrt(var / n)
    z_var = abs(np.mean(draws**2) - var) / math.sqrt((m4 - var * var) / n)
    if max(z_mean, z_var) > 4.0:
        return math.inf, 1e-8, f"sampler z-scores {z_mean:.2f}, {z_var:.2f}"
    return worst, 1e-8, f"sampler z-scores {z_mean:.2f}, {z_var:.2f}"


def check_lambda(fast):
    worst = 0.0
    for x, y in ((1.0, 0.0), (3.0, 1.0), (2.5, 0.75), (6.0, 5.0)):
        ref = (x - y) * (x + 3 * y) / 8.0
        worst = max(worst, abs(catalan.lambda_volume(1, x, y) - ref) / ref)
    z_worst = 0.0
    samples = 10**5 if fast else 10**6
    for n in (2, 3):
        for x, y in ((3.0, 1.0), (2.0, 0.0)):
            exact = catalan.lambda_volume(n, x, y)
            worst = max(worst, abs(catalan.lambda_volume_quad(n, x, y) - exact) / exact)
            est = oracle.mc_volume(PolytopeSpec.catalan(n, x, y), samples, seed=11 * n)
            z_worst = max(z_worst, abs(est.value - exact) / est.std_error)
    if z_worst > 4.0:
        return math.inf, 1e-8, f"Monte Carlo off by {z_worst:.2f} sigma"
    return worst, 1e-8, f"Monte Carlo within {z_worst:.2f} sigma"


def check_table(fast):
    table = catalan.coeff_table(24, 24)
    bad = len(table.side_condition_violations())
    row = {key: v for key, v in table.rows[1].items()}
    bad += row != {(1, 1): 1, (0, 2): 1}
    return float(bad), 0.5, "violations"


def check_series(fast):
    worst = 0.0
    coeffs = catalan.catalan_series_coeffs(32)
    for x in (0.25, 0.5, 1.0):
        direct = catalan.catalan_C(2 * x, 0.0, 30)
        series = float(sum(c * x**m / math.factorial(m) for m, c in enumerate(coeffs)))
        worst = max(worst, abs(series - direct.value) - direct.tail_bound)
    return worst, 1e-9, "excess over the tail bound"


def check_residual(fast):
    worst = max(catalan.integral_equation_residual(x, y) for x, y in ((2, 0), (3, 1), (5, 2)))
    return worst, 1e-6, ""


def check_narayana(fast):
    bad = 0
    for n in range(1, 9):
        bad += lattice.dyck_count(n) != lattice.catalan_number(n)
        peaks = lattice.dyck_peak_counts(n)
        bad += any(peaks.get(k, 0) != lattice.narayana(n, k) for k in range(1, n + 1))
    for n in range(1, 5 if fast else 6):
        bad += any(r.lattice_count != r.narayana for r in catalan.narayana_anchor(n))
    return float(bad), 0.5, "mismatches"


def check_delta(fast):
    vals = dist.delta_limit_check(math.cos, [1.0, 0.5, 0.1, 0.02])
    if any(b <= a for a, b in zip(vals, vals[1:])):
        return math.inf, 1e-4, "not increasing"
    return abs(vals[-1] - 1.0), 1e-4, ""


CHECKS = {
    "binom.symmetry": check_symmetry,
    "binom.integral": check_integral,
    "binom.bessel": check_bessel,
    "binom.pde": check_pde,
    "lattice.anchor": check_lattice_anchor,
    "oracle.gamma": check_gamma_triple,
    "dist.normalizer": check_normalizer,
    "dist.moments": check_moments,
    "catalan.volume": check_lambda,
    "catalan.table": check_table,
    "catalan.series": check_series,
    "catalan.residual": check_residual,
    "lattice.narayana": check_narayana,
    "dist.delta": check_delta,
}


def run_checks(names=None, fast=False):
    """Run the named checks (all by default) and return their results."""
    results = []
    for name in names or CHECKS:
        t0 = time.perf_counter()
        worst, tol, detail = CHECKS[name](fast)
        results.append(
            CheckResult(name, bool(worst < tol), worst, tol, time.perf_counter() - t0, detail)
        )
    return results
