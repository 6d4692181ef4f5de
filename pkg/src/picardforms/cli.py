"""
picardforms command line. Each command wraps one library call.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage error (bad expression, unknown name, malformed numbers).
"""

from __future__ import annotations

import contextlib
import json
import sys
from fractions import Fraction

import click

from . import covariants, pmforms, s4hilbert, thetanum
from .exprparse import ExprSyntaxError, InhomogeneousExpression, UnknownGenerator, parse_expr, to_text, tri_degree
from .fjcore import nu, orders_T1, row_poly
from .serialize import DiskCache, form_to_dict

FORMAT = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)


def _emit(fmt, payload, text):
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        click.echo(text)


def _usage(exc):
    msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    return click.UsageError(msg)


@contextlib.contextmanager
def _depth_errors():
    """Failures of an exact computation at too small a truncation become usage errors."""
    try:
        yield
    except (ArithmeticError, ValueError) as exc:
        raise click.UsageError("%s (try a larger --qv or --u)" % exc)


def _parse(text, homogeneous=True):
    try:
        return parse_expr(text, homogeneous=homogeneous)
    except (ExprSyntaxError, UnknownGenerator, InhomogeneousExpression) as exc:
        raise _usage(exc)


def _numbers(text, n, kind=Fraction):
    try:
        vals = [kind(x.strip()) for x in text.split(",")]
    except ValueError:
        raise click.UsageError("cannot parse %r as %d comma-separated numbers" % (text, n))
    if len(vals) != n:
        raise click.UsageError("expected %d comma-separated numbers, got %d" % (n, len(vals)))
    return vals


def render_form(F):
    lines = ["%s  weight %s  det_char %s  s4_sign %s  (exact below %s, u^%d)"
             % (F.name, tuple(F.weight), F.det_char, F.s4_sign, pmforms.qv_label(F.qtrunc), F.utrunc)]
    for i, c in enumerate(F.components):
        lines.append("component %d:" % i)
        if c.is_zero():
            lines.append("  0")
            continue
        rows = sorted({t for t, _, _ in c.cells()})
        for t in rows:
            p = row_poly(c, t)
            if p is not None:
                body = p.render()
            else:
                body = " + ".join("(%s)*u^%d" % (c.cell(t, m), m) for tt, m, _ in c.cells() if tt == t)
            lines.append("  %s: %s" % (pmforms.qv_label(t), body))
    return "\n".join(lines)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Fourier-Jacobi expansions of Picard modular forms of level sqrt(-3)."""


@main.command()
@click.option("--form", "name", required=True, help="F0..F4, E11, zeta, chi44, chi4m2 or a catalog form.")
@click.option("--qv", type=click.IntRange(1), default=6, show_default=True, help="exact below q_v^N")
@click.option("--u", "u", type=click.IntRange(1), default=16, show_default=True, help="exact below u^M")
@FORMAT
def fj(name, qv, u, fmt):
    """Fourier-Jacobi expansion of a named form."""
    try:
        with _depth_errors():
            F = pmforms.form_by_name(name, 3 * qv, u, cache=DiskCache())
    except KeyError as exc:
        raise _usage(exc)
    _emit(fmt, form_to_dict(F, with_poly=True), render_form(F))


@main.command("nu")
@click.option("--expr", required=True, help="covariant expression, e.g. 'J140^2*J204'")
@click.option("--qv", type=click.IntRange(1), default=4, show_default=True)
@click.option("--u", "u", type=click.IntRange(1), default=16, show_default=True)
@FORMAT
def nu_cmd(expr, qv, u, fmt):
    """Substitute chi44 and E11 into a covariant expression."""
    node = _parse(expr)
    if tri_degree(node) is None:
        raise click.UsageError("expression has no generators")
    cache = DiskCache()
    with _depth_errors():
        F = cache.form("nu", lambda: nu(to_text(node), 3 * qv, u), expr=to_text(node), qtrunc=3 * qv, utrunc=u)
    F.name = expr
    payload = form_to_dict(F, with_poly=True)
    payload["orders_T1"] = [o for o, _ in orders_T1(F)]
    _emit(fmt, payload, render_form(F) + "\norders along T1: %s" % payload["orders_T1"])


@main.command()
@click.option("--expr", default=None, help="covariant expression")
@click.option("--all-generators", is_flag=True, help="all 20 generators, checked against the table")
@click.option("--qv", type=click.IntRange(1), default=4, show_default=True)
@click.option("--u", "u", type=click.IntRange(1), default=16, show_default=True)
@FORMAT
def orders(expr, all_generators, qv, u, fmt):
    """Orders along T1 of nu-images."""
    if bool(expr) == bool(all_generators):
        raise click.UsageError("give exactly one of --expr or --all-generators")
    if expr:
        node = _parse(expr)
        with _depth_errors():
            F = nu(to_text(node), 3 * qv, u)
        ords = orders_T1(F)
        row = {"expr": expr, "weight": list(F.weight), "det_char": F.det_char, "s4_sign": F.s4_sign,
               "orders": [o for o, _ in ords], "depth_certified": {"qv_thirds": F.qtrunc, "u": F.utrunc}}
        _emit(fmt, row, "%s  (j,k) = %s  l = %s  orders %s" % (expr, tuple(F.weight), F.det_char, row["orders"]))
        return
    rep = pmforms.run_suite("orders-table", qtrunc=3 * qv, utrunc=u)
    rows = []
    for (deg, (F, ords)), check in zip(pmforms.generator_orders(3 * qv, u).items(), rep.checks):
        j, k = F.weight
        rows.append({"generator": covariants.jname(deg), "j": j, "k": k, "l": F.det_char, "e": (1 - F.s4_sign) // 2,
                     "orders": [o for o, _ in ords], "status": check.status})
    lines = ["%-6s %3s %3s %2s %2s  %s" % ("J", "j", "k", "l", "e", "orders")]
    for r in rows:
        lines.append("%-6s %3d %3d %2d %2d  %s%s" % (r["generator"], r["j"], r["k"], r["l"], r["e"],
                                                     r["orders"], "" if r["status"] == "pass" else "  MISMATCH"))
    lines += [c.id + ": " + c.detail for c in rep.checks[len(rows):]]
    payload = {"ok": rep.ok, "rows": rows, "others": [c.__dict__ for c in rep.checks[len(rows):]],
               "depth_certified": {"qv_thirds": 3 * qv, "u": u}}
    _emit(fmt, payload, "\n".join(lines))
    sys.exit(0 if rep.ok else 1)


@main.command()
@click.option("--form", "name", required=True)
@click.option("--qv", type=click.IntRange(1), default=None, help="q_v depth; default: enough for the row weights")
@click.option("--rows", type=click.IntRange(1), default=2, show_default=True, help="u-rows per component")
@FORMAT
def restrict(name, qv, rows, fmt):
    """Restrict to T1: lowest u-rows as quasi-modular forms in theta, psi, e2."""
    try:
        with _depth_errors():
            F, out = pmforms.restrict_named(name, rows, 3 * qv if qv else None, cache=DiskCache())
    except KeyError as exc:
        raise _usage(exc)
    payload = {"form": name, "depth_certified": {"qv_thirds": F.qtrunc, "u": F.utrunc}, "rows": [
        {"component": r.component, "u": r.m, "weight": r.weight,
         "e2_degree": r.decomposition.e2_degree if r.decomposition else 0,
         "value": r.decomposition.render() if r.decomposition else "0"} for r in out]}
    text = "\n".join("component %d  u^%d  weight %d:  %s" % (r["component"], r["u"], r["weight"], r["value"])
                     for r in payload["rows"])
    _emit(fmt, payload, text)


@main.command()
@click.option("--suite", required=True, help="suite name or 'all'")
@FORMAT
def verify(suite, fmt):
    """Run verification suites; exit 1 if any check fails."""
    names = list(pmforms.SUITES) if suite == "all" else [suite]
    for n in names:
        if n not in pmforms.SUITES:
            raise click.UsageError("unknown suite %r (known: all, %s)" % (n, ", ".join(pmforms.SUITES)))
    reports = [pmforms.run_suite(n) for n in names]
    ok = all(r.ok for r in reports)
    _emit(fmt, {"ok": ok, "suites": [r.to_dict() for r in reports]}, "\n".join(r.render() for r in reports))
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--target", required=True, type=click.Choice(s4hilbert.TARGETS))
@click.option("--depth", type=click.IntRange(1), default=40, show_default=True)
@FORMAT
def hilbert(target, depth, fmt):
    """Hilbert series of a graded module, computed along independent routes."""
    h = s4hilbert.hilbert_series(target, depth)
    num, den = s4hilbert.poly_text(h.numerator), s4hilbert.poly_text(h.denominator)
    payload = {"target": target, "numerator": num, "denominator": den,
               "terms": h.nonzero_terms(), "routes_agree": h.agree, "routes": list(h.routes)}
    text = "%s = (%s)/(%s)\n  = %s\nroutes %s: %s" % (target, num, den, h.render(),
                                                     ", ".join(h.routes), "agree" if h.agree else "DISAGREE")
    if target == "sigma42":
        nums = {r: s4hilbert.poly_text(s4hilbert.molien_numerator(r)) for r in s4hilbert.IRREP_ORDER}
        payload["molien_numerators"] = nums
        text += "\n" + "\n".join("  %-11s %s" % (r, p) for r, p in nums.items())
    _emit(fmt, payload, text)
    sys.exit(0 if h.agree else 1)


@main.group()
def covariant():
    """Covariants of a binary quartic and a linear form."""


@covariant.command("eval")
@click.option("--quartic", required=True, help="a0,a1,a2,a3,a4")
@click.option("--linear", required=True, help="b0,b1")
@click.option("--expr", default=None, help="expression; default: all 20 generators")
@FORMAT
def covariant_eval(quartic, linear, expr, fmt):
    """Evaluate covariants at rational forms."""
    f4 = _numbers(quartic, 5)
    f1 = _numbers(linear, 2)
    if expr:
        _parse(expr)
        vals = {expr: covariants.eval_expression(expr, f4, f1)}
    else:
        vals = {covariants.jname(d): covariants.eval_covariant(covariants.jname(d), f4, f1)
                for d in covariants.GENERATOR_DEGREES}
    payload = {k: [str(v[i]) for i in sorted(v)] for k, v in vals.items()}
    text = "\n".join("%-8s %s" % (k, ", ".join(v)) for k, v in payload.items())
    _emit(fmt, {"quartic": [str(x) for x in f4], "linear": [str(x) for x in f1], "values": payload}, text)


@main.command()
@click.option("--check", "name", required=True, type=click.Choice(thetanum.NUMERIC_CHECKS))
@click.option("--point", default="0.05,-3", show_default=True, help="u,v (complex allowed, e.g. 0.1+0.05j)")
@click.option("--window", type=click.IntRange(1), default=thetanum.DEFAULT_WINDOW, show_default=True)
@click.option("--tol", type=float, default=thetanum.DEFAULT_TOL, show_default=True)
@FORMAT
def numeric(name, point, window, tol, fmt):
    """Floating-point cross-check against direct theta evaluation."""
    u, v = _numbers(point, 2, complex)
    try:
        ok, err, detail = thetanum.numeric_check(name, u, v, window, tol)
    except thetanum.NumericError as exc:
        raise click.UsageError(str(exc))
    ok = bool(ok)
    payload = {"check": name, "point": [str(u), str(v)], "window": window, "tol": tol, "error": float(err),
               "ok": ok, "detail": detail}
    _emit(fmt, payload, "%s at (%s, %s): error %.3g (tol %.1g) %s\n  %s" % (name, u, v, err, tol, "pass" if ok else "FAIL", detail))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
