import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contpath.catalan import (
    LambdaParams,
    catalan_C,
    catalan_series_coeffs,
    catalan_series_eval,
    coeff_table,
    integral_equation_residual,
    lambda_polynomial,
    lambda_volume,
    lambda_volume_quad,
    narayana_anchor,
)
from contpath.errors import DomainError
from contpath.lattice import catalan_number


def _integrate_next(prev):
    """Exact I_n(a, b) from I_{n-1}, both as {(i, j): coefficient of a^i b^j}.

    Independent of the integer recursion: expands
    int_0^b int_0^{a+b-v} u^i v^j du dv term by term.
    """
    out = {}
    for (i, j), c in prev.items():
        # int_0^{a+b-v} u^i du = (a + b - v)^(i+1) / (i+1)
        p = i + 1
        for r in range(p + 1):  # a^r (b - v)^(p - r)
            for t in range(p - r + 1):  # b^t (-v)^(p-r-t)
                e = p - r - t
                coef = Fraction(c, p) * math.comb(p, r) * math.comb(p - r, t) * (-1) ** e
                # int_0^b v^(e + j) dv = b^(e+j+1) / (e+j+1)
                key = (r, t + e + j + 1)
                out[key] = out.get(key, 0) + coef / (e + j + 1)
    return {k: v for k, v in out.items() if v}


def _oracle_rows(n_max):
    rows = [{(0, 0): Fraction(1)}]
    for _ in range(n_max):
        rows.append(_integrate_next(rows[-1]))
    # to the basis a^k/k! b^l/l!
    return [{(k, l): v * math.factorial(k) * math.factorial(l) for (k, l), v in r.items()} for r in rows]


ORACLE = _oracle_rows(8)


def test_table_matches_direct_integration():
    table = coeff_table(8, 16)
    for n, row in enumerate(ORACLE):
        assert all(v.denominator == 1 for v in row.values())
        assert table.rows[n] == {k: int(v) for k, v in row.items()}


def test_first_row_hand_values():
    table = coeff_table(24, 24)
    assert table.rows[1] == {(1, 1): 1, (0, 2): 1}
    assert table(1, 1, 1) == 1 and table(1, 0, 2) == 1 and table(1, 2, 0) == 0


def test_side_conditions_hold_exactly():
    assert coeff_table(24, 24).side_condition_violations() == []


def test_table_lookup_outside_range():
    with pytest.raises(DomainError):
        coeff_table(4, 4)(5, 0, 0)
    with pytest.raises(DomainError):
        coeff_table(-1, 4)


def test_rows_are_homogeneous():
    table = coeff_table(12, 24)
    for n, row in enumerate(table.rows):
        assert all(k + l == 2 * n for k, l in row)


def test_lambda_one_polynomial():
    # (x - y)(x + 3y) / 8
    assert lambda_polynomial(1) == {(2, 0): Fraction(1, 8), (1, 1): Fraction(1, 4), (0, 2): Fraction(-3, 8)}


@given(st.floats(0.0, 20.0), st.floats(0.0, 1.0))
def test_lambda_one_matches_closed_form(x, frac):
    y = frac * x
    assert lambda_volume(1, x, y) == pytest.approx((x - y) * (x + 3 * y) / 8, rel=1e-12, abs=1e-300)


def test_lambda_volume_exact_mode():
    assert lambda_volume(1, 3.0, 1.0, exact=True) == Fraction(3, 2)
    assert lambda_volume(LambdaParams(3.0, 1.0, 2)) == pytest.approx(2 / 3, rel=1e-15)
    assert lambda_volume(0, 5.0, 2.0) == 1.0


@given(st.integers(0, 6), st.floats(0.1, 4.0), st.floats(0.0, 1.0), st.floats(0.25, 3.0))
def test_lambda_volume_homogeneous(n, x, frac, c):
    y = frac * x
    assert lambda_volume(n, c * x, c * y) == pytest.approx(c ** (2 * n) * lambda_volume(n, x, y), rel=1e-12)


@pytest.mark.parametrize("n,x,y", [(2, 3.0, 1.0), (2, 5.0, 0.0), (3, 3.0, 1.0), (3, 2.0, 1.5)])
def test_lambda_volume_matches_nested_quadrature(n, x, y):
    assert lambda_volume_quad(n, x, y) == pytest.approx(lambda_volume(n, x, y), rel=1e-10)


def test_lambda_polynomial_evaluates_like_volume():
    poly = lambda_polynomial(3)
    x, y = Fraction(7, 2), Fraction(3, 4)
    value = sum(c * x**i * y**j for (i, j), c in poly.items())
    assert value == lambda_volume(3, 3.5, 0.75, exact=True)


@pytest.mark.parametrize("x,y,n", [(1.0, 2.0, 1), (-1.0, 0.0, 1), (2.0, 1.0, -1), (2.0, 1.0, 1.5)])
def test_lambda_params_domain(x, y, n):
    with pytest.raises(DomainError):
        LambdaParams(x, y, n)


def test_series_coefficients_are_catalan_numbers():
    # derived: direct evaluation of C(2x) gives c_{m/2} at even m
    coeffs = catalan_series_coeffs(30)
    for m, c in enumerate(coeffs):
        assert c.denominator == 1
        assert c == (catalan_number(m // 2) if m % 2 == 0 else 0)


def test_inner_alternating_sum_is_one_and_bound_is_harmless():
    table = coeff_table(30, 30)
    for m in range(2, 31):
        for k in range(m - 1):
            l = m - 2 - k
            weight = sum((-1) ** (k + 1 - p) * math.comb(m, p) * math.comb(m - p - 1, l) for p in range(k + 2))
            assert weight == 1
            bounded = sum(table(n - 1, k, l) for n in range(1, l + 2))
            full = sum(table(n, k, l) for n in range(0, 31))
            assert bounded == full


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0])
def test_series_matches_direct_sum(x):
    direct = catalan_C(2 * x, 0.0, 30)
    assert abs(catalan_series_eval(x, 40) - direct.value) <= 1e-9 + direct.tail_bound


def test_catalan_C_tail_bound_is_honest():
    reference = catalan_C(4.0, 1.0, 60).value
    for n_max in (2, 4, 8, 12):
        res = catalan_C(4.0, 1.0, n_max)
        assert res.terms == n_max + 1
        assert 0.0 <= reference - res.value <= res.tail_bound


def test_catalan_C_degenerate():
    res = catalan_C(3.0, 3.0)
    assert (res.value, res.tail_bound) == (1.0, 0.0)
    with pytest.raises(DomainError):
        catalan_C(1.0, 2.0)


@pytest.mark.parametrize("x,y", [(2.0, 0.0), (3.0, 1.0), (5.0, 2.0), (1.0, 0.5)])
def test_integral_equation_residual(x, y):
    assert integral_equation_residual(x, y) < 1e-9


@pytest.mark.parametrize("n", range(1, 7))
def test_narayana_anchor(n):
    rows = narayana_anchor(n)
    assert [r.component for r in rows] == list(range(n))
    for r in rows:
        assert r.lattice_count == r.narayana == r.dyck_count
        assert r.up_runs == r.component + 1
    assert rows[0].unshifted_narayana == 0  # the off-by-one at the bottom component
    assert sum(r.lattice_count for r in rows) == catalan_number(n)


def test_narayana_anchor_domain():
    with pytest.raises(DomainError):
        narayana_anchor(0)
