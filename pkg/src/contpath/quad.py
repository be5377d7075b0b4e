"""Adaptive quadrature used by the distribution and Catalan modules.

Thin layer over QUADPACK's globally adaptive Gauss-Kronrod driver
(``scipy.integrate.quad``) that turns its warnings into exceptions.
"""

import math

from scipy import integrate

from .errors import ConvergenceError


def integrate1d(f, a, b, rel_tol=1e-12, abs_tol=0.0, limit=200):
    """Integral of ``f`` over ``[a, b]`` with an embedded-rule error estimate.

    Returns ``(value, error_estimate)``. An empty interval integrates to 0.
    """
    if a == b:
        return 0.0, 0.0
    value, err, info = integrate.quad(
        f, a, b, epsabs=abs_tol, epsrel=max(rel_tol, 5e-15), limit=limit, full_output=1
    )[:3]
    if not math.isfinite(value):
        raise ConvergenceError(f"quadrature on [{a}, {b}] produced {value!r}")
    if err > max(abs_tol, rel_tol * abs(value)) * 100 and err > 1e-13 * abs(value):
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] stalled: value {value!r}, error estimate {err!r}"
        )
    return value, err


def integrate_triangle(f, outer, inner_upper, rel_tol=1e-10, abs_tol=1e-13):
    """``int_0^outer int_0^{inner_upper(b)} f(a, b) da db`` by nested 1-D rules."""

    def inner(b):
        top = inner_upper(b)
        if top <= 0.0:
            return 0.0
        return integrate1d(lambda a: f(a, b), 0.0, top, rel_tol, abs_tol)[0]

    return integrate1d(inner, 0.0, outer, rel_tol, abs_tol)
