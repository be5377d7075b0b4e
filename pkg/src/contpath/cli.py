"""Command-line front end: ``contpath <group> <action> [flags]``.

Every command prints a table on stdout, as CSV (default) or as JSON lines
with ``--format json``. Floats are written with 17 significant digits so
values round-trip exactly. Diagnostics, including the run metadata for CSV
output, go to stderr.

Exit codes: 0 success, 1 domain or convergence error, 2 usage error,
3 a ``verify`` check failed.
"""

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import binom, catalan, dist, lattice, oracle, specfn, verify
from .errors import ConvergenceError, DomainError
from .polytope import PolytopeSpec

__all__ = ["COMMANDS", "OPERATIONS", "build_parser", "run", "main"]

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

# Library operation -> the single subcommand that reaches it.
OPERATIONS = {
    "specfn.sum_series": "specfn series",
    "specfn.bessel_I0": "specfn bessel",
    "specfn.bessel_I1": "specfn bessel",
    "specfn.bessel_I_half": "specfn bessel",
    "specfn.falling_factorial": "specfn falling",
    "lattice.pattern_of": "lattice pattern",
    "lattice.patterns": "lattice patterns",
    "lattice.check_pattern": "lattice by-pattern",
    "lattice.count_paths": "lattice count",
    "lattice.count_paths_restricted": "lattice count",
    "lattice.count_paths_by_pattern": "lattice by-pattern",
    "lattice.pattern_decomposition": "lattice decompose",
    "lattice.interior_lattice_points": "lattice interior",
    "lattice.dyck_count": "lattice dyck",
    "lattice.catalan_number": "lattice dyck",
    "lattice.dyck_peak_counts": "lattice narayana",
    "lattice.narayana": "lattice narayana",
    "oracle.gamma_component_volume": "oracle component",
    "oracle.gamma_volume": "oracle gamma",
    "oracle.gamma_volume_series": "oracle gamma",
    "oracle.mc_volume": "oracle volume",
    "binom.cont_binom": "binom eval",
    "binom.cont_binom_array": "binom eval",
    "binom.cont_binom_bessel": "binom eval",
    "binom.pde_residual": "binom pde",
    "binom.species_count": "binom expand",
    "binom.expansion_ts": "binom expand",
    "binom.midpoint_series": "binom midpoint",
    "binom.interval_family_to_path": "binom path",
    "dist.binom_integral": "binom integral",
    "dist.normalizer": "dist normalizer",
    "dist.normalizer_series": "dist normalizer",
    "dist.normalizer_bessel": "dist normalizer",
    "dist.density": "dist density",
    "dist.density_array": "dist density",
    "dist.cdf": "dist cdf",
    "dist.moment_half": "dist moments",
    "dist.moment_p": "dist moments",
    "dist.moment_quadrature": "dist moments",
    "dist.centered_even_moment": "dist moments",
    "dist.centered_moment": "dist moments",
    "dist.sample": "dist sample",
    "dist.delta_limit_check": "dist delta",
    "catalan.lambda_volume": "catalan volume",
    "catalan.lambda_volume_quad": "catalan volume",
    "catalan.lambda_polynomial": "catalan polynomial",
    "catalan.coeff_table": "catalan table",
    "catalan.catalan_series_coeffs": "catalan coeffs",
    "catalan.catalan_series_eval": "catalan coeffs",
    "catalan.catalan_C": "catalan eval",
    "catalan.integral_equation_residual": "catalan residual",
    "catalan.narayana_anchor": "catalan anchor",
    "verify.run_checks": "verify all",
}

TEST_FUNCTIONS = {
    "cos": math.cos,
    "gauss": lambda s: math.exp(-s * s),
    "abs": abs,
}


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------- parsing


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _steps(text):
    try:
        return lattice.StepSet(tuple(_ints(v) for v in text.split(";")))
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _intervals(text):
    out = []
    for part in text.split(","):
        if not part.strip():
            continue
        try:
            a, b = part.split(":")
            out.append((float(a), float(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"intervals look like 'a:b,c:d', got {text!r}")
    return tuple(out)


def _config(args):
    rel = args.rel_tol
    if rel is None:
        env = os.environ.get("CONTPATH_TOL")
        if env:
            try:
                rel = float(env)
            except ValueError:
                raise DomainError(f"CONTPATH_TOL must be a number, got {env!r}")
    rel = specfn.DEFAULT_CONFIG.rel_tol if rel is None else rel
    terms = specfn.DEFAULT_CONFIG.max_terms if args.max_terms is None else args.max_terms
    return specfn.SeriesConfig(rel_tol=rel, abs_tol=0.0, max_terms=terms)


def _region(args):
    return lattice.UPPER_HALF_PLANE if args.halfplane else None


# --------------------------------------------------------------- handlers
# Each handler returns (columns, rows, meta).


def cmd_specfn_series(a, cfg):
    value, terms = specfn.sum_series(a.q, a.a, a.b, a.shift, cfg)
    return ["q", "value", "terms"], [[a.q, value, terms]], {"terms": terms}


def cmd_specfn_bessel(a, cfg):
    if a.order == "0":
        f = lambda z: specfn.bessel_I0(z, cfg)
    elif a.order == "1":
        f = lambda z: specfn.bessel_I1(z, cfg)
    else:
        f = lambda z: specfn.bessel_I_half(a.n, z, cfg)
    return ["z", "value"], [[z, f(z)] for z in a.z], {}


def cmd_specfn_falling(a, cfg):
    return ["a", "n", "value"], [[a.a, a.n, specfn.falling_factorial(a.a, a.n)]], {}


def cmd_binom_eval(a, cfg):
    if a.method == "series":
        if len(a.s) == 1:
            values = [binom.cont_binom(a.x, a.s[0], cfg)]
        else:
            values = list(binom.cont_binom_array(a.x, a.s, cfg))
    elif a.method == "bessel":
        values = [binom.cont_binom_bessel(a.x, s, cfg) for s in a.s]
    else:
        values = []
        for s in a.s:
            binom.cont_binom(a.x, s, cfg)  # domain check
            values.append(oracle.gamma_volume(s, a.x - s, cfg))
    return ["x", "s", "value"], [[a.x, s, float(v)] for s, v in zip(a.s, values)], {}


def cmd_binom_integral(a, cfg):
    rows = []
    for x in a.x:
        closed = 2.0 * math.expm1(x)
        value = dist.binom_integral(x)
        rows.append([x, value, closed, abs(value - closed) / closed if closed else 0.0])
    return ["x", "integral", "closed_form", "rel_error"], rows, {}


def cmd_binom_pde(a, cfg):
    value = binom.pde_residual(a.x, a.s, a.h)
    return ["x", "s", "h", "residual"], [[a.x, a.s, a.h, value]], {}


def cmd_binom_expand(a, cfg):
    if a.counts:
        rows = [
            [n, m, binom.species_count(n, m)]
            for n in range(a.order + 1)
            for m in (2 * n - 1, 2 * n, 2 * n + 1)
            if m >= 0 and binom.species_count(n, m)
        ]
        return ["n", "m", "count"], rows, {}
    if a.t is None or a.s is None:
        raise DomainError("--t and --s are required unless --counts is given")
    value = binom.expansion_ts(a.t, a.s, a.order)
    closed = binom.cont_binom((a.t + 1.0) * a.s, a.s, cfg)
    return ["t", "s", "order", "value", "closed_form"], [[a.t, a.s, a.order, value, closed]], {}


def cmd_binom_midpoint(a, cfg):
    rows = [[s, binom.midpoint_series(s, cfg), binom.cont_binom(2 * s, s, cfg)] for s in a.s]
    return ["s", "series", "cont_binom"], rows, {}


def cmd_binom_path(a, cfg):
    path = binom.interval_family_to_path(a.intervals, a.x)
    rows = [[i, c, t] for i, (c, t) in enumerate(zip(path.pattern, path.times))]
    return ["segment", "direction", "duration"], rows, {}


def cmd_dist_density(a, cfg):
    d = dist.CenteredDensity(a.x)
    if a.points < 1:
        raise DomainError("--points must be >= 1")
    step = (a.to - a.from_) / (a.points - 1) if a.points > 1 else 0.0
    ss = [a.from_ + i * step for i in range(a.points)]
    values = dist.density_array(d, ss) if a.points > 1 else [dist.density(d, ss[0])]
    return ["s", "d_x(s)"], [[s, float(v)] for s, v in zip(ss, values)], {}


def cmd_dist_cdf(a, cfg):
    d = dist.CenteredDensity(a.x)
    return ["s", "cdf"], [[s, dist.cdf(d, s)] for s in a.s], {}


def cmd_dist_normalizer(a, cfg):
    d = dist.ContBinomDist(a.x, a.p)
    return ["x", "p", "method", "value"], [[a.x, a.p, a.method, dist.normalizer(d, a.method, cfg)]], {}


def cmd_dist_moments(a, cfg):
    rows = []
    if a.centered:
        for l in a.l:
            rows.append([l, dist.centered_moment(a.x, l, cfg)])
        return ["order", "centered_moment"], rows, {}
    d = dist.ContBinomDist(a.x, a.p)
    for l in a.l:
        if a.method == "quadrature":
            value = dist.moment_quadrature(d, l)
        elif a.p == 0.5:
            value = dist.moment_half(a.x, l, cfg)
        else:
            value = dist.moment_p(d, l, config=cfg)
        rows.append([l, value])
    return ["l", "moment"], rows, {"method": a.method}


def cmd_dist_sample(a, cfg):
    draws = dist.sample(dist.CenteredDensity(a.x), a.n, a.seed)
    return ["s"], [[float(v)] for v in draws], {"seed": a.seed}


def cmd_dist_delta(a, cfg):
    values = dist.delta_limit_check(TEST_FUNCTIONS[a.f], a.xs)
    return ["x", "integral"], [[x, v] for x, v in zip(a.xs, values)], {"f": a.f}


def cmd_catalan_eval(a, cfg):
    res = catalan.catalan_C(a.x, a.y, a.nmax)
    return ["x", "y", "value", "tail_bound", "terms"], [[a.x, a.y, res.value, res.tail_bound, res.terms]], {}


def cmd_catalan_coeffs(a, cfg):
    if a.x is not None:
        return ["x", "mmax", "value"], [[a.x, a.mmax, catalan.catalan_series_eval(a.x, a.mmax)]], {}
    coeffs = catalan.catalan_series_coeffs(a.mmax)
    return ["m", "coefficient"], [[m, c] for m, c in enumerate(coeffs)], {}


def cmd_catalan_residual(a, cfg):
    return ["x", "y", "residual"], [[a.x, a.y, catalan.integral_equation_residual(a.x, a.y)]], {}


def cmd_catalan_volume(a, cfg):
    if a.method == "exact":
        value = catalan.lambda_volume(a.n, a.x, a.y)
    else:
        value = catalan.lambda_volume_quad(a.n, a.x, a.y)
    return ["n", "x", "y", "method", "volume"], [[a.n, a.x, a.y, a.method, value]], {}


def cmd_catalan_polynomial(a, cfg):
    poly = catalan.lambda_polynomial(a.n)
    return ["x_power", "y_power", "coefficient"], [[i, j, c] for (i, j), c in sorted(poly.items())], {}


def cmd_catalan_table(a, cfg):
    table = catalan.coeff_table(a.N, a.M)
    rows = [[n, k, l, v] for n, row in enumerate(table.rows) for (k, l), v in sorted(row.items())]
    return ["n", "k", "l", "value"], rows, {"violations": len(table.side_condition_violations())}


def cmd_catalan_anchor(a, cfg):
    cols = ["up_runs", "component", "lattice_count", "dyck_count", "narayana", "unshifted_narayana", "volume"]
    rows = [[getattr(r, c) for c in cols] for r in catalan.narayana_anchor(a.n)]
    return cols, rows, {}


def cmd_lattice_count(a, cfg):
    region = _region(a)
    if region is None:
        value = lattice.count_paths(a.steps, a.p, a.q, a.l)
    else:
        value = lattice.count_paths_restricted(a.steps, a.p, a.q, a.l, region)
    return ["l", "count"], [[a.l, value]], {}


def cmd_lattice_by_pattern(a, cfg):
    c = lattice.check_pattern(a.pattern, a.steps.k)
    value = lattice.count_paths_by_pattern(a.steps, a.p, a.q, a.l, c, _region(a))
    return ["pattern", "count"], [[_pattern_text(c), value]], {}


def cmd_lattice_decompose(a, cfg):
    parts = lattice.pattern_decomposition(a.steps, a.p, a.q, a.l, _region(a))
    return ["pattern", "count"], [[_pattern_text(c), v] for c, v in parts.items()], {}


def cmd_lattice_pattern(a, cfg):
    return ["pattern"], [[_pattern_text(lattice.pattern_of(a.path))]], {}


def cmd_lattice_patterns(a, cfg):
    return ["pattern"], [[_pattern_text(c)] for c in lattice.patterns(a.n, a.k)], {}


def cmd_lattice_interior(a, cfg):
    if a.kind == "binomial":
        poly = PolytopeSpec.binomial(a.pattern, a.x, a.y)
    else:
        poly = PolytopeSpec.catalan(a.n, a.x, a.y)
    return ["count"], [[lattice.interior_lattice_points(poly)]], {}


def cmd_lattice_dyck(a, cfg):
    return ["n", "count", "catalan_number"], [[a.n, lattice.dyck_count(a.n), lattice.catalan_number(a.n)]], {}


def cmd_lattice_narayana(a, cfg):
    peaks = lattice.dyck_peak_counts(a.n)
    rows = [[k, peaks.get(k, 0), lattice.narayana(a.n, k)] for k in range(1, a.n + 1)]
    return ["peaks", "dyck_count", "narayana"], rows, {}


def cmd_oracle_volume(a, cfg):
    if a.kind == "binomial":
        poly = PolytopeSpec.binomial(a.pattern, a.x, a.y)
    else:
        poly = PolytopeSpec.catalan(a.n, a.x, a.y)
    est = oracle.mc_volume(poly, a.mc_samples, a.seed, a.workers)
    return ["value", "std_error", "samples", "method"], [[est.value, est.std_error, est.samples, est.method]], {"seed": a.seed}


def cmd_oracle_gamma(a, cfg):
    rows = [[a.s, a.u, oracle.gamma_volume(a.s, a.u, cfg), oracle.gamma_volume_series(a.s, a.u, cfg)]]
    return ["s", "u", "pattern_sum", "double_series"], rows, {}


def cmd_oracle_component(a, cfg):
    return ["volume"], [[oracle.gamma_component_volume(a.pattern, a.s, a.u)]], {}


def cmd_verify_all(a, cfg):
    results = verify.run_checks(a.only or None, fast=a.fast)
    rows = [[r.name, "PASS" if r.passed else "FAIL", r.worst, r.tolerance, r.seconds, r.detail] for r in results]
    failed = sum(not r.passed for r in results)
    return ["check", "status", "worst", "tolerance", "seconds", "detail"], rows, {"failed": failed}


def _pattern_text(c):
    return "-".join(str(v) for v in c)


# (group, action) -> (handler, argument builder)
COMMANDS = {}


def _command(group, action, handler, help_text):
    def deco(builder):
        COMMANDS[(group, action)] = (handler, builder, help_text)
        return builder

    return deco


@_command("specfn", "series", cmd_specfn_series, "sum_n (a + b n) q^n / (n! (shift+1)_n)")
def _(p):
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--shift", type=float, default=0.0)


@_command("specfn", "bessel", cmd_specfn_bessel, "modified Bessel functions I0, I1, I_{n+1/2}")
def _(p):
    p.add_argument("--order", choices=["0", "1", "half"], default="0")
    p.add_argument("--n", type=int, default=0, help="n for order n + 1/2")
    p.add_argument("--z", type=_floats, required=True)


@_command("specfn", "falling", cmd_specfn_falling, "falling factorial (a)_n")
def _(p):
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)


@_command("binom", "eval", cmd_binom_eval, "continuous binomial {x<s>}")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--s", type=_floats, required=True)
    p.add_argument("--method", choices=["series", "bessel", "oracle"], default="series")


@_command("binom", "integral", cmd_binom_integral, "integral of {x<s>} over s against 2(e^x - 1)")
def _(p):
    p.add_argument("--x", type=_floats, required=True)


@_command("binom", "pde", cmd_binom_pde, "finite-difference PDE residual")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--h", type=float, required=True)


@_command("binom", "expand", cmd_binom_expand, "expansion of {(t+1)s<s>} and its integer counts")
def _(p):
    p.add_argument("--t", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--counts", action="store_true")


@_command("binom", "midpoint", cmd_binom_midpoint, "central series for {2s<s>}")
def _(p):
    p.add_argument("--s", type=_floats, required=True)


@_command("binom", "path", cmd_binom_path, "directed path of an interval family")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--intervals", type=_intervals, default=())


@_command("dist", "density", cmd_dist_density, "centered density d_x on a grid")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--from", dest="from_", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--points", type=int, default=101)


@_command("dist", "cdf", cmd_dist_cdf, "distribution function of d_x")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--s", type=_floats, required=True)


@_command("dist", "normalizer", cmd_dist_normalizer, "normalizer b_p(x)")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--method", choices=["quadrature", "series", "bessel"], default="quadrature")


@_command("dist", "moments", cmd_dist_moments, "moments E_p(s^l) or centered moments of d_x")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--l", type=_ints, required=True)
    p.add_argument("--method", choices=["series", "quadrature"], default="series")
    p.add_argument("--centered", action="store_true")


@_command("dist", "sample", cmd_dist_sample, "draws from d_x")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)


@_command("dist", "delta", cmd_dist_delta, "integral of a test function against d_x as x shrinks")
def _(p):
    p.add_argument("--xs", type=_floats, default=[1.0, 0.5, 0.1, 0.02])
    p.add_argument("--f", choices=sorted(TEST_FUNCTIONS), default="cos")


@_command("catalan", "eval", cmd_catalan_eval, "continuous Catalan function C(x, y)")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--nmax", type=int, default=30)


@_command("catalan", "coeffs", cmd_catalan_coeffs, "Taylor coefficients of C(2x)")
def _(p):
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--x", type=float, help="evaluate the truncated series here instead")


@_command("catalan", "residual", cmd_catalan_residual, "integral equation residual")
def _(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=0.0)


@_command("catalan", "volume", cmd_catalan_volume, "volume of Lambda^n(x, y)")
def _(p):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--method", choices=["exact", "quad"], default="exact")


@_command("catalan", "polynomial", cmd_catalan_polynomial, "vol(Lambda^n) as a polynomial in x, y")
def _(p):
    p.add_argument("--n", type=int, required=True)


@_command("catalan", "table", cmd_catalan_table, "nonzero integer coefficients I^n_{k,l}")
def _(p):
    p.add_argument("--N", type=int, default=catalan.DEFAULT_TABLE_SIZE)
    p.add_argument("--M", type=int, default=catalan.DEFAULT_TABLE_SIZE)


@_command("catalan", "anchor", cmd_catalan_anchor, "lattice counts of Lambda^j(2n, 0) vs Narayana")
def _(p):
    p.add_argument("--n", type=int, required=True)


def _lattice_common(p, pattern=False):
    p.add_argument("--steps", type=_steps, default=lattice.BINOMIAL_STEPS, help="e.g. '1,0;0,1'")
    p.add_argument("--p", type=_ints, default=(0, 0))
    p.add_argument("--q", type=_ints, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--halfplane", action="store_true", help="stay in the upper half-plane")
    if pattern:
        p.add_argument("--pattern", type=_ints, required=True)


@_command("lattice", "count", cmd_lattice_count, "lattice paths from p to q in l steps")
def _(p):
    _lattice_common(p)


@_command("lattice", "by-pattern", cmd_lattice_by_pattern, "lattice paths with a given pattern")
def _(p):
    _lattice_common(p, pattern=True)


@_command("lattice", "decompose", cmd_lattice_decompose, "lattice path counts split by pattern")
def _(p):
    _lattice_common(p)


@_command("lattice", "pattern", cmd_lattice_pattern, "pattern of a sequence of step indices")
def _(p):
    p.add_argument("--path", type=_ints, required=True)


@_command("lattice", "patterns", cmd_lattice_patterns, "all patterns of length n + 1 over 1..k")
def _(p):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)


def _polytope_args(p):
    p.add_argument("--kind", choices=["binomial", "catalan"], required=True)
    p.add_argument("--pattern", type=_ints, default=())
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=0.0)


@_command("lattice", "interior", cmd_lattice_interior, "interior lattice points of a component")
def _(p):
    _polytope_args(p)


@_command("lattice", "dyck", cmd_lattice_dyck, "Dyck paths of semilength n")
def _(p):
    p.add_argument("--n", type=int, required=True)


@_command("lattice", "narayana", cmd_lattice_narayana, "Dyck paths by peaks against Narayana numbers")
def _(p):
    p.add_argument("--n", type=int, required=True)


@_command("oracle", "volume", cmd_oracle_volume, "Monte Carlo volume of a component")
def _(p):
    _polytope_args(p)
    p.add_argument("--mc-samples", dest="mc_samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)


@_command("oracle", "gamma", cmd_oracle_gamma, "vol(Gamma(s, u)) by pattern sum and double series")
def _(p):
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--u", type=float, required=True)


@_command("oracle", "component", cmd_oracle_component, "volume of one pattern component")
def _(p):
    p.add_argument("--pattern", type=_ints, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--u", type=float, required=True)


@_command("verify", "all", cmd_verify_all, "run the cross-check suite")
def _(p):
    p.add_argument("--fast", action="store_true")
    p.add_argument("--only", action="append", choices=sorted(verify.CHECKS))


def build_parser():
    parser = _Parser(prog="contpath", description="Continuous binomial and Catalan numerics.")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, help="series stop tolerance")
    parser.add_argument("--max-terms", dest="max_terms", type=int, help="series term cap")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    sub = {}
    for (group, action), (_, builder, help_text) in COMMANDS.items():
        if group not in sub:
            gp = groups.add_parser(group)
            sub[group] = gp.add_subparsers(dest="action", required=True, parser_class=_Parser)
        builder(sub[group].add_parser(action, help=help_text))
    return parser


# ----------------------------------------------------------------- output


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return json.dumps(str(v))
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(v)


def _emit(fmt, command, params, cols, rows, meta, out):
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return
    for row in rows:
        record = {"command": command, "params": params, "result": dict(zip(cols, row)), "meta": meta}
        out.write(_json_value(record) + "\n")


def _params(args):
    skip = {"group", "action", "format"}
    out = {}
    for key, v in sorted(vars(args).items()):
        if key in skip or v is None:
            continue
        if isinstance(v, lattice.StepSet):
            v = ";".join(",".join(str(c) for c in s) for s in v.steps)
        out[key] = v
    return out


def run(argv=None, stdout=None, stderr=None):
    """Run one command and return its exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        real_stderr, sys.stderr = sys.stderr, stderr
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = real_stderr
    except _Usage as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    handler = COMMANDS[(args.group, args.action)][0]
    command = f"{args.group} {args.action}"
    try:
        cfg = _config(args)
        cols, rows, meta = handler(args, cfg)
    except (DomainError, ConvergenceError) as exc:
        stderr.write(f"contpath {command}: {exc}\n")
        return EXIT_DOMAIN
    meta = {"rel_tol": cfg.rel_tol, "max_terms": cfg.max_terms, **meta}
    params = _params(args)
    _emit(args.format, command, params, cols, rows, meta, stdout)
    if args.format == "csv":
        stderr.write(f"# {command} {_json_value(params)} {_json_value(meta)}\n")
    if args.group == "verify" and meta.get("failed"):
        return EXIT_VERIFY
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))
