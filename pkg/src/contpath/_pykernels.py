"""Pure-Python/numpy kernels.

Mirrors ``_ckernels.pyx`` operation for operation so both backends round
identically. Used when the compiled extension is unavailable or when
``CONTPATH_PURE_PYTHON=1``.
"""

import numpy as np


def series(q, a, b, shift, rel_tol, abs_tol, max_terms):
    """Sum ``(a + b*n) * r_n`` with ``r_0 = 1`` and
    ``r_{n+1} = r_n * q / ((n + 1) * (n + 1 + shift))``.

    Returns ``(value, terms_used)``; ``terms_used`` is -1 when the stop rule
    was not met within ``max_terms`` terms.
    """
    r = 1.0
    total = 0.0
    small = 0
    for n in range(max_terms):
        term = (a + b * n) * r
        total += term
        if abs(term) < rel_tol * abs(total) + abs_tol:
            small += 1
            if small == 2:
                return total, n + 1
        else:
            small = 0
        r = r * q / ((n + 1.0) * (n + 1.0 + shift))
    return total, -1


def series_array(q, a, b, shift, rel_tol, abs_tol, max_terms):
    """Elementwise :func:`series` over a 1-D float64 array ``q``.

    Returns ``(values, max_terms_used)`` with -1 signalling non-convergence
    of at least one element.
    """
    q = np.ascontiguousarray(q, dtype=np.float64)
    r = np.ones_like(q)
    total = np.zeros_like(q)
    small = np.zeros(q.shape, dtype=np.int64)
    active = np.ones(q.shape, dtype=bool)
    used = np.zeros(q.shape, dtype=np.int64)
    for n in range(max_terms):
        if not active.any():
            break
        term = (a + b * n) * r
        total = np.where(active, total + term, total)
        is_small = np.abs(term) < rel_tol * np.abs(total) + abs_tol
        small = np.where(active, np.where(is_small, small + 1, 0), small)
        done = active & (small == 2)
        used[done] = n + 1
        active &= ~done
        r = r * q / ((n + 1.0) * (n + 1.0 + shift))
    if active.any():
        return total, -1
    return total, int(used.max()) if used.size else 0


def lambda_hits(u, v):
    """Rows where both coordinate chains are nondecreasing and ``u >= v``."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    ok = np.all(u >= v, axis=1)
    if u.shape[1] > 1:
        ok &= np.all(np.diff(u, axis=1) >= 0.0, axis=1)
        ok &= np.all(np.diff(v, axis=1) >= 0.0, axis=1)
    return int(np.count_nonzero(ok))


def simplex_pair_hits(u, v, u_budget, v_budget):
    """Rows with ``sum(u) <= u_budget`` and ``sum(v) <= v_budget``."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    ok = np.ones(u.shape[0], dtype=bool)
    if u.shape[1]:
        ok &= _rowsum(u) <= u_budget
    if v.shape[1]:
        ok &= _rowsum(v) <= v_budget
    return int(np.count_nonzero(ok))


def _rowsum(m):
    # left-to-right accumulation, matching the compiled loop
    acc = np.zeros(m.shape[0])
    for j in range(m.shape[1]):
        acc = acc + m[:, j]
    return acc
