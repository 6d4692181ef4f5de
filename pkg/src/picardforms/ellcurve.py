"""
Theta functions X, Y, Z on C / sqrt(-3) O_F and the ring they generate.

All Taylor coefficients are r * c1^m with r in Q(rho), m the power of u, so we
work with the rescaled variable w = c1*u and keep r only:

    X = sum_j x_j w^(6j+1),   Y = sum_j y_j w^(3j),   Z(w) = Y(-w).

The x_j, y_j are pinned down order by order from

    R1   X^3 = rho (Y^3 - Z^3)
    R2   Y(xi w)^3 = (rho Y - Z) / (rho - 1)
    R3   Z(xi w)^3 = (-Y + rho Z) / (rho - 1)
    R4   X(sqrt(-3) w) = sqrt(-3) X Y Z
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from math import factorial

from flint import fmpq_poly

from .arith import RHO, SQRT_M3, XI, CoeffScalar, EisRat, ULaurent
from .qrho import (
    InconsistentSystem,
    Underdetermined,
    pp_add,
    pp_coeff,
    pp_eval_scale,
    pp_from_list,
    pp_mul,
    pp_scale,
    pp_sub,
    pp_trunc,
    solve_qrho,
)


class TaylorError(ArithmeticError):
    pass


def _cube(p, n):
    return pp_mul(pp_mul(p, p, n), p, n)


class TaylorTables:
    """c[j] = coefficient of z^(6j+1) in X, d[j] = coefficient of z^(3j) in Y."""

    def __init__(self, depth):
        if depth < 1:
            raise ValueError("depth must be >= 1")
        self.depth = depth
        x, y = _solve_tables(depth)
        self.x = x  # rationals in Q(rho): c_{6j+1} = x[j] c1^(6j+1)
        self.y = y  # d_{3j} = y[j] c1^(3j)

    @property
    def c(self):
        return {j: CoeffScalar.monomial(v, 6 * j + 1) for j, v in enumerate(self.x)}

    @property
    def d(self):
        return {j: CoeffScalar.monomial(v, 3 * j) for j, v in enumerate(self.y)}

    def z(self):
        return {j: CoeffScalar.monomial(v * (-1) ** j, 3 * j) for j, v in enumerate(self.y)}

    def n_terms(self):
        """number of w-coefficients that are exact."""
        return self.depth

    # w-series as (A, B) pairs of length self.depth
    def series(self, name):
        return _series(self, name)


@functools.lru_cache(maxsize=None)
def _series(tab, name):
    n = tab.depth
    vals = [EisRat(0)] * n
    if name == "X":
        for j, v in enumerate(tab.x):
            if 6 * j + 1 < n:
                vals[6 * j + 1] = v
    elif name in ("Y", "Z"):
        s = 1 if name == "Y" else -1
        for j, v in enumerate(tab.y):
            if 3 * j < n:
                vals[3 * j] = v * s ** j
    elif name == "1":
        vals[0] = EisRat(1)
    else:
        raise KeyError(name)
    return pp_from_list(vals)


def _build(x, y, n):
    X = [EisRat(0)] * n
    Y = [EisRat(0)] * n
    Z = [EisRat(0)] * n
    for j, v in enumerate(x):
        if 6 * j + 1 < n:
            X[6 * j + 1] = v
    for j, v in enumerate(y):
        if 3 * j < n:
            Y[3 * j] = v
            Z[3 * j] = v * (-1) ** j
    return pp_from_list(X), pp_from_list(Y), pp_from_list(Z)


def _residuals(x, y, n):
    """coefficient lists of R1..R4 (lhs - rhs) mod w^n."""
    X, Y, Z = _build(x, y, n)
    r1 = pp_sub(_cube(X, n), pp_scale(pp_sub(_cube(Y, n), _cube(Z, n)), RHO))
    inv = (RHO - 1).inverse()
    Yx = pp_eval_scale(Y, XI, n)
    Zx = pp_eval_scale(Z, XI, n)
    r2 = pp_sub(_cube(Yx, n), pp_scale(pp_sub(pp_scale(Y, RHO), Z), inv))
    r3 = pp_sub(_cube(Zx, n), pp_scale(pp_sub(pp_scale(Z, RHO), Y), inv))
    Xs = pp_eval_scale(X, SQRT_M3, n)
    r4 = pp_sub(Xs, pp_scale(pp_mul(pp_mul(X, Y, n), Z, n), SQRT_M3))
    return {"R1": r1, "R2": r2, "R3": r3, "R4": r4}


def _pin(x, y, which, idx, eq, order):
    """Solve the linear equation for one unknown from one coefficient."""
    n = order + 1

    def value(v):
        xx, yy = list(x), list(y)
        if which == "x":
            xx[idx] = v
        else:
            yy[idx] = v
        return pp_coeff(_residuals(xx, yy, n)[eq], order)

    r0 = value(EisRat(0))
    slope = value(EisRat(1)) - r0
    if not slope:
        raise TaylorError("%s_%d not determined by %s at w^%d" % (which, idx, eq, order))
    return -r0 / slope


def _solve_tables(depth):
    nx = (depth - 2) // 6 + 1 if depth > 1 else 1
    ny = (depth - 1) // 3 + 1
    x = [EisRat(0)] * nx
    y = [EisRat(0)] * ny
    x[0] = EisRat(1)
    y[0] = EisRat(1)
    if ny > 1:
        y[1] = _pin(x, y, "y", 1, "R1", 3)
    j = 1
    while True:
        progressed = False
        if 2 * j < ny:
            y[2 * j] = _pin(x, y, "y", 2 * j, "R2", 6 * j)
            progressed = True
        if j < nx:
            x[j] = _pin(x, y, "x", j, "R4", 6 * j + 1)
            progressed = True
        if 2 * j + 1 < ny:
            y[2 * j + 1] = _pin(x, y, "y", 2 * j + 1, "R1", 6 * j + 3)
            progressed = True
        if not progressed:
            break
        j += 1
    res = _residuals(x, y, depth)
    for name, r in res.items():
        r = pp_trunc(r, depth)
        if not (r[0].is_zero() and r[1].is_zero()):
            raise TaylorError("relation %s has a nonzero residual below w^%d" % (name, depth))
    return x, y


_TABLES = {}


def compute_taylor_tables(depth):
    if depth not in _TABLES:
        # reuse a deeper table when one exists
        for d in sorted(_TABLES):
            if d >= depth:
                return _TABLES[d]
        _TABLES[depth] = TaylorTables(depth)
    return _TABLES[depth]


def tables(depth):
    return compute_taylor_tables(max(depth, 8))


def scale_argument(series, lam):
    """u -> lam*u."""
    lam = EisRat.coerce(lam)
    out = {}
    for m, c in series.items():
        out[m] = c * (lam ** m)
    return ULaurent.from_dict(out, series.trunc)


# ---------------------------------------------------------------- elliptic polys


class EllipticPoly:
    """Homogeneous element of Q(rho)[c1, gam][X, Y, Z] / (X^3 - rho(Y^3 - Z^3)), X-degree <= 2.

    shifted=True means the variables stand for Y(xi u), Z(xi u) (and X(xi u) when present).
    """

    def __init__(self, degree, terms, shifted=False):
        self.degree = degree
        self.shifted = shifted
        red = {}
        for mon, c in terms.items():
            c = CoeffScalar.coerce(c)
            if not c:
                continue
            if sum(mon) != degree:
                raise ValueError("monomial %s is not of degree %d" % (mon, degree))
            for k, v in _reduce_monomial(mon).items():
                cc = c * v
                red[k] = red[k] + cc if k in red else cc
        self.terms = {k: v for k, v in red.items() if v}

    @classmethod
    def monomial(cls, a, b, c, coeff=1, shifted=False):
        return cls(a + b + c, {(a, b, c): coeff}, shifted)

    def __add__(self, other):
        if self.degree != other.degree or self.shifted != other.shifted:
            raise ValueError("incompatible elliptic polys")
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d[k] + v if k in d else v
        return EllipticPoly(self.degree, d, self.shifted)

    def __neg__(self):
        return EllipticPoly(self.degree, {k: -v for k, v in self.terms.items()}, self.shifted)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, EllipticPoly):
            s = CoeffScalar.coerce(other)
            return EllipticPoly(self.degree, {k: v * s for k, v in self.terms.items()}, self.shifted)
        if self.shifted != other.shifted:
            raise ValueError("cannot multiply shifted by unshifted")
        d = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                d[k] = d[k] + v1 * v2 if k in d else v1 * v2
        return EllipticPoly(self.degree + other.degree, d, self.shifted)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EllipticPoly):
            return NotImplemented
        return (self.degree, self.shifted, self.terms) == (other.degree, other.shifted, other.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return "EllipticPoly(%s)" % self.render()

    def render(self):
        if not self.terms:
            return "0"
        names = ("X0", "Y0", "Z0") if self.shifted else ("X", "Y", "Z")
        parts = []
        for mon in sorted(self.terms, reverse=True):
            c = self.terms[mon]
            factors = []
            for nm, e in zip(names, mon):
                if e == 1:
                    factors.append(nm)
                elif e > 1:
                    factors.append("%s^%d" % (nm, e))
            coef = str(c)
            if (len(c.terms) > 1 or " + " in coef) and not coef.startswith("("):
                coef = "(%s)" % coef
            parts.append("*".join([coef] + factors))
        return " + ".join(parts).replace("+ -", "- ")


@functools.lru_cache(maxsize=None)
def _reduce_monomial(mon):
    a, b, c = mon
    if a <= 2:
        return {mon: CoeffScalar(1)}
    # X^3 = rho Y^3 - rho Z^3
    out = {}
    for k, v in _reduce_monomial((a - 3, b + 3, c)).items():
        out[k] = out.get(k, CoeffScalar()) + v * RHO
    for k, v in _reduce_monomial((a - 3, b, c + 3)).items():
        out[k] = out.get(k, CoeffScalar()) - v * RHO
    return {k: v for k, v in out.items() if v}


def basis_monomials(n, shifted=False, allow_x=None):
    if allow_x is None:
        allow_x = not shifted
    amax = 2 if allow_x else 0
    out = []
    for a in range(min(amax, n), -1, -1):
        for b in range(n - a, -1, -1):
            out.append((a, b, n - a - b))
    return out


def _monomial_series(mon, n_terms, shifted):
    tab = tables(n_terms + 1)
    a, b, c = mon
    X, Y, Z = (tab.series(s) for s in "XYZ")
    p = tab.series("1")
    for base, e in ((X, a), (Y, b), (Z, c)):
        for _ in range(e):
            p = pp_mul(p, base, n_terms)
    if shifted:
        p = pp_eval_scale(p, XI, n_terms)
    return pp_trunc(p, n_terms)


@functools.lru_cache(maxsize=4096)
def monomial_series(mon, n_terms, shifted=False):
    return _monomial_series(mon, n_terms, shifted)


DEFAULT_MARGIN = 12


class BasisError(ArithmeticError):
    pass


def convert_pair(p, n_terms, degree, shifted=False, allow_x=None):
    """w-series pair (exact below w^n_terms) -> {monomial: EisRat}."""
    mons = basis_monomials(degree, shifted, allow_x)
    if degree == 0:
        mons = [(0, 0, 0)]
    if n_terms < len(mons):
        raise BasisError("need at least %d Taylor rows, have %d" % (len(mons), n_terms))
    cols = [monomial_series(m, n_terms, shifted) for m in mons]
    rows = []
    rhs = []
    for k in range(n_terms):
        rows.append([pp_coeff(cc, k) for cc in cols])
        rhs.append(pp_coeff(p, k))
    try:
        sol, _ = solve_qrho(rows, rhs)
    except InconsistentSystem as exc:
        raise BasisError("series is not a theta function of degree %d in this basis" % degree) from exc
    except Underdetermined as exc:
        raise BasisError("not enough Taylor rows to pin the degree %d expansion" % degree) from exc
    return {m: v for m, v in zip(mons, sol) if v}


def basis_convert(series, n, shifted=False, margin=DEFAULT_MARGIN, allow_x=None):
    """ULaurent (cells r*c1^(m+e)*gam^g) -> EllipticPoly of degree n."""
    if series.is_zero():
        return EllipticPoly(n, {}, shifted)
    if series.floor < 0:
        raise BasisError("a theta function has no pole at u = 0")
    grade = None
    vals = []
    for m in range(0, series.trunc):
        c = series[m]
        if not c:
            vals.append(EisRat(0))
            continue
        r, e1, e2 = c.lead()
        g = (e1 - m, e2)
        if grade is None:
            grade = g
        elif grade != g:
            raise BasisError("cells do not share one c1/gam grading")
        vals.append(r)
    need = len(basis_monomials(n, shifted, allow_x)) + margin
    if series.trunc < need:
        raise BasisError("series known to u^%d, need %d rows" % (series.trunc, need))
    sol = convert_pair(pp_from_list(vals), series.trunc, n, shifted, allow_x)
    scale = CoeffScalar.monomial(1, grade[0], grade[1])
    return EllipticPoly(n, {m: scale * v for m, v in sol.items()}, shifted)


def basis_expand(poly, depth):
    """EllipticPoly -> ULaurent in u exact below u^depth."""
    total = {}
    for mon, c in poly.terms.items():
        p = monomial_series(mon, depth, poly.shifted)
        for k in range(depth):
            r = pp_coeff(p, k)
            if r:
                cell = c * CoeffScalar.monomial(r, k)
                total[k] = total[k] + cell if k in total else cell
    return ULaurent.from_dict(total, depth)


def divide_by_x(poly, a=1):
    """D with X^a * D = poly, found by an exact solve on the coefficients of D."""
    if poly.shifted:
        raise ValueError("division by X is for unshifted polys")
    n = poly.degree - a
    if n < 0:
        raise BasisError("degree too small to be divisible by X^%d" % a)
    mons = basis_monomials(n)
    if n == 0:
        mons = [(0, 0, 0)]
    target = poly.terms
    images = [EllipticPoly.monomial(*m) * EllipticPoly.monomial(a, 0, 0) for m in mons]
    keys = sorted(set(target) | {k for im in images for k in im.terms})
    # coefficients are CoeffScalars; solve per grading component
    gradings = {g for v in target.values() for g in v.terms} or {(0, 0)}
    out = {}
    for g in gradings:
        rows = [[im.terms.get(k, CoeffScalar()).terms.get((0, 0), EisRat(0)) for im in images] for k in keys]
        rhs = [target.get(k, CoeffScalar()).terms.get(g, EisRat(0)) for k in keys]
        try:
            sol, _ = solve_qrho(rows, rhs)
        except (InconsistentSystem, Underdetermined) as exc:
            raise BasisError("not divisible by X^%d" % a) from exc
        for m, v in zip(mons, sol):
            if v:
                cell = CoeffScalar.monomial(v, *g)
                out[m] = out[m] + cell if m in out else cell
    return EllipticPoly(n, out)
