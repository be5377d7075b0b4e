import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from contpath import kernels
from contpath.errors import ConvergenceError, DomainError
from contpath.specfn import (
    DEFAULT_CONFIG,
    FULL_PRECISION,
    SeriesConfig,
    bessel_I0,
    bessel_I1,
    bessel_I_half,
    falling_factorial,
    sum_series,
)

mpmath.mp.dps = 40

ARGS = [0.0, 1e-8, 0.3, 1.0, 2.0, 5.5, 10.0, 20.0, 40.0]


def rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a)


@pytest.mark.parametrize("z", ARGS)
def test_bessel_I0_I1_match_mpmath(z):
    assert rel(bessel_I0(z), float(mpmath.besseli(0, z))) < 5e-14
    assert rel(bessel_I1(z), float(mpmath.besseli(1, z))) < 5e-14


def test_bessel_frozen_values():
    # oracle: mpmath.besseli at 40 digits
    assert bessel_I0(2.0) == pytest.approx(2.279585302336067, rel=1e-15)
    assert bessel_I1(2.0) == pytest.approx(1.5906368546373288, rel=1e-15)
    assert bessel_I0(0.0) == 1.0
    assert bessel_I1(0.0) == 0.0


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 30])
@pytest.mark.parametrize("z", [0.01, 0.5, 3.0, 30.0, 60.0, 120.0])
def test_bessel_half_matches_mpmath(n, z):
    ref = float(mpmath.besseli(n + 0.5, z))
    assert rel(bessel_I_half(n, z), ref) < 1e-12


def test_bessel_half_closed_forms():
    z = 1.7
    c = math.sqrt(2 / (math.pi * z))
    assert bessel_I_half(0, z) == pytest.approx(c * math.sinh(z), rel=1e-15)
    assert bessel_I_half(1, z) == pytest.approx(c * (math.cosh(z) - math.sinh(z) / z), rel=1e-14)


@given(st.integers(1, 25), st.floats(0.1, 80.0))
def test_bessel_half_three_term_relation(n, z):
    # I_{v-1} - I_{v+1} = (2v/z) I_v at v = n + 1/2
    lo, mid, hi = (bessel_I_half(k, z) for k in (n - 1, n, n + 1))
    lhs = lo - hi
    rhs = (2 * (n + 0.5) / z) * mid
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)


@given(st.floats(0.0, 50.0))
def test_bessel_ordering(z):
    assert bessel_I0(z) >= 1.0
    assert 0.0 <= bessel_I1(z) <= bessel_I0(z)


@pytest.mark.parametrize("bad", [-1.0, math.inf, math.nan])
def test_bessel_domain(bad):
    with pytest.raises(DomainError):
        bessel_I0(bad)
    with pytest.raises(DomainError):
        bessel_I1(bad)


def test_bessel_half_domain():
    with pytest.raises(DomainError):
        bessel_I_half(1, 0.0)
    with pytest.raises(DomainError):
        bessel_I_half(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_I_half(1.5, 1.0)


@given(st.integers(0, 30), st.integers(0, 30))
def test_falling_factorial_is_product(a, n):
    expected = 1
    for i in range(n):
        expected *= a - i
    assert falling_factorial(a, n) == max(expected, 0) if a >= n else falling_factorial(a, n) == 0


def test_falling_factorial_values():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 5) == 0
    with pytest.raises(DomainError):
        falling_factorial(-1, 2)


def test_sum_series_reports_terms():
    value, terms = sum_series(1.0)
    assert value == pytest.approx(bessel_I0(2.0), rel=1e-15)
    assert 2 < terms < 30


def test_sum_series_raises_when_capped():
    with pytest.raises(ConvergenceError):
        sum_series(400.0, config=SeriesConfig(max_terms=5))


def test_full_precision_tighter_than_default():
    a, n_default = sum_series(9.0, 2.0, 2.0, 1.0, DEFAULT_CONFIG)
    b, n_full = sum_series(9.0, 2.0, 2.0, 1.0, FULL_PRECISION)
    assert n_full >= n_default
    assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize(
    "kwargs", [{"rel_tol": 0.0}, {"rel_tol": math.nan}, {"abs_tol": -1.0}, {"max_terms": 0}]
)
def test_series_config_validation(kwargs):
    with pytest.raises(DomainError):
        SeriesConfig(**kwargs)


# ---- backend equivalence: the compiled and numpy kernels must agree exactly

BACKENDS = kernels.backends()


def test_selected_backend_is_available():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@given(
    st.floats(0.0, 200.0),
    st.floats(-5.0, 20.0),
    st.floats(-3.0, 3.0),
    st.sampled_from([0.0, 0.5, 1.0, 10.5]),
)
def test_series_backends_bitwise_equal(q, a, b, shift):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    args = (q, a, b, shift, 1e-12, 0.0, 500)
    assert py.series(*args) == cy.series(*args)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_series_array_backends_bitwise_equal():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    q = np.linspace(0.0, 50.0, 257)
    v1, n1 = py.series_array(q, 3.0, 2.0, 1.0, 1e-12, 0.0, 500)
    v2, n2 = cy.series_array(q, 3.0, 2.0, 1.0, 1e-12, 0.0, 500)
    assert n1 == n2
    assert np.array_equal(v1, v2)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_hit_counters_backends_equal(dim):
    rng = np.random.default_rng(5)
    u = rng.random((2000, dim)) * 2.0
    v = rng.random((2000, dim)) * 1.5
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    assert py.lambda_hits(u, v) == cy.lambda_hits(u, v)
    assert py.simplex_pair_hits(u, v, 2.0, 1.5) == cy.simplex_pair_hits(u, v, 2.0, 1.5)


def test_series_array_matches_scalar():
    q = np.array([0.0, 0.5, 3.0, 17.0])
    values, used = kernels.series_array(q, 1.0, 0.0, 0.0, 1e-12, 0.0, 500)
    assert used > 0
    for qi, vi in zip(q, values):
        assert vi == kernels.series(qi, 1.0, 0.0, 0.0, 1e-12, 0.0, 500)[0]
