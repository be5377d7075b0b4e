"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line comparing the measured worst
error with its tolerance, plus the runtime. Run on its own with

    pytest tests/test_acceptance.py -v
"""

import itertools
import math
import sys
import time

import numpy as np
import pytest

from contpath import binom, catalan, dist, lattice, oracle
from contpath.polytope import PolytopeSpec


@pytest.fixture
def report(capsys):
    def _report(number, ok, text):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:2d}: {text}")
        assert ok, text

    return _report


def _dyadic(value, bits=20):
    return math.floor(value * 2**bits) / 2**bits


def test_01_boundary_and_symmetry(report):
    t0 = time.perf_counter()
    xs = [_dyadic(10.0 * (i + 1) / 50) for i in range(50)]
    boundary = all(binom.cont_binom(x, 0.0) == 2.0 + x == binom.cont_binom(x, x) for x in xs)
    worst = 0.0
    for x in xs:
        for j in range(50):
            s = _dyadic(x * (j + 0.5) / 50)
            worst = max(worst, abs(binom.cont_binom(x, s) - binom.cont_binom(x, x - s)))
    dt = time.perf_counter() - t0
    ok = boundary and worst < 1e-12 and dt < 1.0
    report(1, ok, f"boundary exact={boundary}, symmetry worst {worst:.2e} < 1e-12, {dt:.3f}s < 1s")


def test_02_integral_identity(report):
    t0 = time.perf_counter()
    worst = 0.0
    for x in (0.5, 1.0, 2.0, 5.0, 10.0):
        ref = 2.0 * math.expm1(x)
        worst = max(worst, abs(dist.binom_integral(x) - ref) / ref)
    dt = time.perf_counter() - t0
    report(2, worst < 1e-9 and dt < 5.0, f"relative error {worst:.2e} < 1e-9, {dt:.3f}s < 5s")


def test_03_bessel_closed_form(report):
    t0 = time.perf_counter()
    worst = 0.0
    for x in np.linspace(0.1, 10.0, 40):
        for s in np.linspace(0.05, x - 0.05, 40):
            a = binom.cont_binom(x, s)
            worst = max(worst, abs(a - binom.cont_binom_bessel(x, s)) / a)
    dt = time.perf_counter() - t0
    report(3, worst < 1e-10 and dt < 2.0, f"series vs Bessel {worst:.2e} < 1e-10, {dt:.3f}s < 2s")


def test_04_pde_convergence(report):
    points = [(1.0, 0.5), (2.0, 0.3), (2.0, 1.0), (3.0, 2.2), (4.0, 1.0),
              (5.0, 2.5), (6.0, 4.0), (7.5, 3.0), (9.0, 1.5), (10.0, 5.0)]
    ratios = [binom.pde_residual(x, s, 1e-2) / binom.pde_residual(x, s, 5e-3) for x, s in points]
    worst = max(abs(r - 4.0) for r in ratios)
    report(4, worst < 0.5, f"residual ratios {min(ratios):.4f}..{max(ratios):.4f}, |ratio-4| <= {worst:.2e} < 0.5")


def test_05_discrete_anchoring(report):
    t0 = time.perf_counter()
    bad = []
    for x in range(2, 9):
        for s in range(1, x):
            total = sum(
                lattice.interior_lattice_points(PolytopeSpec.binomial(c, s, x - s))
                for n in range(0, x)
                for c in lattice.patterns(n, 2)
            )
            if total != math.comb(x, s):
                bad.append((x, s, total))
    dt = time.perf_counter() - t0
    report(5, not bad and dt < 30.0, f"mismatches {bad or 'none'} over 0 < s < x <= 8, {dt:.3f}s < 30s")


def test_06_identity_triple_check(report):
    worst = 0.0
    for x in np.linspace(0.25, 8.0, 12):
        for s in np.linspace(0.0, x, 12):
            u = x - s
            target = binom.cont_binom(x, s)
            pattern_sum = oracle.gamma_volume(s, u)
            series = oracle.gamma_volume_series(s, u)
            worst = max(worst, abs(pattern_sum - target) / target, abs(series - target) / target,
                        abs(pattern_sum - series) / target)
    report(6, worst < 1e-8, f"pattern sum / double series / closed form worst {worst:.2e} < 1e-8")


def test_07_normalizer_consistency(report):
    worst = 0.0
    for p in (0.2, 0.3, 0.7):
        for x in (1.0, 2.0, 5.0):
            d = dist.ContBinomDist(x, p)
            vals = [dist.normalizer(d, m) for m in ("quadrature", "series", "bessel")]
            for a, b in itertools.combinations(vals, 2):
                worst = max(worst, abs(a - b) / abs(a))
    report(7, worst < 1e-7, f"pairwise relative spread {worst:.2e} < 1e-7")


def test_08_moments(report):
    t0 = time.perf_counter()
    worst = 0.0
    for x in (1.0, 2.0, 5.0):
        for p in (0.5, 0.3, 0.7):
            d = dist.ContBinomDist(x, p)
            for l in range(1, 5):
                worst = max(worst, abs(dist.moment_p(d, l) - dist.moment_quadrature(d, l)))
    odd_zero = all(dist.centered_moment(x, k) == 0.0 for x in (1.0, 2.0, 5.0) for k in (1, 3, 5))
    x, n = 2.0, 10**6
    draws = dist.sample(dist.CenteredDensity(x), n, seed=12345)
    var = dist.centered_even_moment(x, 1)
    m4 = dist.centered_even_moment(x, 2)
    z_mean = abs(draws.mean()) / math.sqrt(var / n)
    z_var = abs(np.mean(draws**2) - var) / math.sqrt((m4 - var**2) / n)
    dt = time.perf_counter() - t0
    ok = worst < 1e-8 and odd_zero and z_mean < 4 and z_var < 4 and dt < 20.0
    report(8, ok, f"series vs quadrature {worst:.2e} < 1e-8, odd centered zero={odd_zero}, "
                  f"sampler z(mean)={z_mean:.2f} z(var)={z_var:.2f} < 4, {dt:.2f}s < 20s")


def test_09_catalan_volumes(report):
    poly_err = 0.0
    for x, y in ((1.0, 0.0), (2.0, 1.0), (3.0, 0.5), (7.0, 6.0), (4.5, 2.25)):
        ref = (x - y) * (x + 3 * y) / 8.0
        poly_err = max(poly_err, abs(catalan.lambda_volume(1, x, y) - ref) / ref)
    quad_err, z_worst = 0.0, 0.0
    for n in (2, 3):
        for x, y in ((3.0, 1.0), (2.0, 0.0)):
            exact = catalan.lambda_volume(n, x, y)
            quad_err = max(quad_err, abs(catalan.lambda_volume_quad(n, x, y) - exact) / exact)
            est = oracle.mc_volume(PolytopeSpec.catalan(n, x, y), 10**6, seed=100 + n)
            z_worst = max(z_worst, abs(est.value - exact) / est.std_error)
    ok = poly_err < 1e-12 and quad_err < 1e-8 and z_worst < 4.0
    report(9, ok, f"Lambda^1 poly {poly_err:.2e} < 1e-12, quadrature {quad_err:.2e} < 1e-8, "
                  f"Monte Carlo {z_worst:.2f} sigma < 4")


def test_10_coefficient_table(report):
    table = catalan.coeff_table(24, 24)
    violations = table.side_condition_violations()
    first = table.rows[1] == {(1, 1): 1, (0, 2): 1}
    report(10, not violations and first, f"side-condition violations {len(violations)}, I^1 hand values {first}")


def test_11_catalan_series(report):
    coeffs = catalan.catalan_series_coeffs(40)
    worst = -math.inf
    n_max = 30
    for x in (0.25, 0.5, 1.0):
        series = float(sum(c * x**m / math.factorial(m) for m, c in enumerate(coeffs)))
        direct = sum(catalan.lambda_volume(n, 2 * x, 0.0) for n in range(n_max + 1))
        tail = sum((4 * x * x) ** n / math.factorial(n) ** 2 for n in range(n_max + 1, n_max + 40))
        worst = max(worst, abs(series - direct) - (1e-9 + tail))
    report(11, worst <= 0.0, f"|series - direct| - (1e-9 + tail) worst {worst:.2e} <= 0")


def test_12_integral_equation(report):
    res = {p: catalan.integral_equation_residual(*p) for p in ((2.0, 0.0), (3.0, 1.0), (5.0, 2.0))}
    worst = max(res.values())
    report(12, worst < 1e-6, f"residuals {', '.join(f'{v:.1e}' for v in res.values())} < 1e-6")


def _brute_dyck_peaks(n):
    counts = {}
    for word in itertools.product((1, -1), repeat=2 * n):
        h = 0
        for step in word:
            h += step
            if h < 0:
                break
        else:
            if h == 0:
                peaks = sum(a == 1 and b == -1 for a, b in zip(word, word[1:]))
                counts[peaks] = counts.get(peaks, 0) + 1
    return counts


def test_13_narayana_catalan(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 9):
        brute = _brute_dyck_peaks(n)
        if lattice.dyck_count(n) != sum(brute.values()) or sum(brute.values()) != lattice.catalan_number(n):
            bad.append(("catalan", n))
        peaks = lattice.dyck_peak_counts(n)
        for k in range(1, n + 1):
            if not peaks.get(k, 0) == brute.get(k, 0) == lattice.narayana(n, k):
                bad.append(("narayana", n, k))
    dt = time.perf_counter() - t0
    report(13, not bad and dt < 10.0, f"mismatches {bad or 'none'} for n <= 8, {dt:.2f}s < 10s")


def test_14_delta_limit(report):
    vals = dist.delta_limit_check(math.cos, [1.0, 0.5, 0.1, 0.02])
    increasing = all(b > a for a, b in zip(vals, vals[1:]))
    gap = abs(vals[-1] - 1.0)
    report(14, increasing and gap < 1e-4, f"values {', '.join(f'{v:.7f}' for v in vals)}, increasing={increasing}, |last-1| {gap:.1e} < 1e-4")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
