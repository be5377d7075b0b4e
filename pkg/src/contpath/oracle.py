"""Continuous-side oracles: exact component volumes and Monte Carlo volumes.

Volumes follow the coordinate-projection convention, under which the
simplex of ``n+1`` nonnegative durations summing to ``t`` has volume
``t^n / n!``. That is the normalization for which the binomial series and
the Catalan recursion hold as written.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError
from .lattice import patterns
from .polytope import BINOMIAL, PolytopeSpec, check_binomial_pattern
from .specfn import DEFAULT_CONFIG

__all__ = [
    "PolytopeSpec",
    "VolumeEstimate",
    "gamma_component_volume",
    "gamma_volume",
    "gamma_volume_series",
    "mc_volume",
]

EXACT = "exact"
MONTE_CARLO = "monte-carlo"
SHARD_SIZE = 1 << 16


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float
    samples: int
    method: str

    def __post_init__(self):
        if self.method == EXACT and self.std_error != 0:
            raise DomainError("exact volumes carry no standard error")
        if self.std_error < 0:
            raise DomainError("standard error must be nonnegative")


def _simplex_factor(count, budget):
    # volume of {count nonnegative durations summing to budget}
    if count == 0:
        return 1.0 if budget == 0 else 0.0
    return budget ** (count - 1) / math.factorial(count - 1)


def gamma_component_volume(c, s, u):
    """Volume of the component of ``Gamma(s, u)`` with pattern ``c``.

    ``c`` is a pattern over ``{1, 2}`` (1 = horizontal, 2 = vertical),
    ``s`` the total horizontal time and ``u`` the total vertical time.
    """
    c = check_binomial_pattern(c)
    s, u = float(s), float(u)
    if not (math.isfinite(s) and math.isfinite(u)) or s < 0 or u < 0:
        raise DomainError(f"times must be finite and nonnegative, got ({s}, {u})")
    return _simplex_factor(c.count(1), s) * _simplex_factor(c.count(2), u)


def gamma_volume(s, u, config=None, max_length=400):
    """``vol(Gamma(s, u))`` summed component by component over patterns.

    Patterns are enumerated by length; the sum stops once two consecutive
    lengths add less than the configured relative tolerance. Only patterns
    using both directions enter, which makes the sum continuous up to the
    boundary ``s = 0`` or ``u = 0`` (where it equals ``2 + s + u``).
    """
    cfg = config or DEFAULT_CONFIG
    total = 0.0
    small = 0
    for n in range(1, max_length):
        contrib = sum(gamma_component_volume(c, s, u) for c in patterns(n, 2))
        total += contrib
        if n >= 2 and abs(contrib) < cfg.rel_tol * abs(total) + cfg.abs_tol:
            small += 1
            if small == 2:
                return total
        else:
            small = 0
    return total


def gamma_volume_series(s, u, config=None):
    """``vol(Gamma(s, u))`` from the closed double series.

    Grouping the patterns with ``i + 1`` horizontal and ``j + 1`` vertical
    segments gives ``sum w_ij s^i u^j / (i! j!)`` over ``|i - j| <= 1``, with
    ``w = 2`` on the diagonal (two patterns) and ``w = 1`` off it.
    """
    cfg = config or DEFAULT_CONFIG
    s, u = float(s), float(u)
    if not (math.isfinite(s) and math.isfinite(u)) or s < 0 or u < 0:
        raise DomainError(f"times must be finite and nonnegative, got ({s}, {u})")
    total = 0.0
    small = 0
    for i in range(cfg.max_terms):
        fi = math.factorial(i)
        diag = 2.0 * (s * u) ** i / (fi * fi)
        off = (s ** (i + 1) * u**i + s**i * u ** (i + 1)) / (fi * fi * (i + 1))
        contrib = diag + off
        total += contrib
        if contrib < cfg.rel_tol * total + cfg.abs_tol:
            small += 1
            if small == 2:
                return total
        else:
            small = 0
    raise ConvergenceError(f"double series at ({s}, {u}) did not converge")


def _shard_rng(seed, shard):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, shard])))


def _box(poly):
    """Side lengths and hit test for the sampling box of ``poly``."""
    if poly.kind == BINOMIAL:
        a, b = poly.direction_counts
        du, dv = max(a - 1, 0), max(b - 1, 0)
        lu, lv = poly.x, poly.y

        def hits(u, v):
            return kernels.simplex_pair_hits(u, v, lu, lv)

    else:
        du = dv = poly.index
        lu, lv = poly.half_sums
        hits = kernels.lambda_hits
    return du, dv, lu, lv, hits


def _run_shard(poly, seed, shard, count):
    du, dv, lu, lv, hits = _box(poly)
    rng = _shard_rng(seed, shard)
    u = rng.random((count, du)) * lu
    v = rng.random((count, dv)) * lv
    return hits(u, v)


def mc_volume(poly, samples, seed, workers=1):
    """Hit-or-miss Monte Carlo volume of a component polytope.

    Samples are drawn uniformly in the Cartesian bounding box and split into
    fixed-size shards; shard ``i`` uses a Philox stream keyed by
    ``(seed, i)``, so the estimate depends only on ``(seed, samples)`` and
    not on ``workers``. Zero-dimensional and flat components are returned
    exactly without sampling.
    """
    if not isinstance(poly, PolytopeSpec):
        raise DomainError("mc_volume needs a PolytopeSpec")
    if int(samples) != samples or samples < 1:
        raise DomainError(f"samples must be a positive integer, got {samples!r}")
    if int(seed) != seed or seed < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    samples, seed = int(samples), int(seed)

    if poly.kind == BINOMIAL:
        a, b = poly.direction_counts
        if a == 0 and poly.x > 0 or b == 0 and poly.y > 0:
            return VolumeEstimate(0.0, 0.0, 0, EXACT)
        if max(a - 1, 0) + max(b - 1, 0) == 0:
            return VolumeEstimate(gamma_component_volume(poly.pattern, poly.x, poly.y), 0.0, 0, EXACT)
    elif poly.index == 0:
        return VolumeEstimate(1.0, 0.0, 0, EXACT)

    du, dv, lu, lv, _ = _box(poly)
    box = lu**du * lv**dv
    if box == 0.0:
        return VolumeEstimate(0.0, 0.0, 0, EXACT)

    shards = [(i, min(SHARD_SIZE, samples - i * SHARD_SIZE)) for i in range(-(-samples // SHARD_SIZE))]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda sh: _run_shard(poly, seed, *sh), shards))
    else:
        counts = [_run_shard(poly, seed, *sh) for sh in shards]
    hits = sum(counts)
    frac = hits / samples
    return VolumeEstimate(
        value=box * frac,
        std_error=box * math.sqrt(frac * (1.0 - frac) / samples),
        samples=samples,
        method=MONTE_CARLO,
    )
