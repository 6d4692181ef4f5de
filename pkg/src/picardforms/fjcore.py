"""
Fourier-Jacobi series of Picard modular forms in the variables (u, v).

A component is a double series  sum_t sum_m cell(t, m) q_v^(t/3) u^m  where every
cell is r * c1^(m+e) * gam^g with (e, g) fixed per component.  Internally the
u-direction of each q-term is a Q(rho) polynomial in w = c1*u (a pair of fmpq_poly)
and only r is stored; the grading (e, g) rides along on the series.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import XI, CoeffScalar, EisRat, ThirdsQSeries, ULaurent
from .covariants import BinaryForm, covariant_form
from .ellcurve import EllipticPoly, BasisError, basis_convert, tables
from .exprparse import evaluate, parse_expr, tri_degree
from .level3 import DecompositionError, decompose
from .qrho import (
    pp_add,
    pp_coeff,
    pp_from_list,
    pp_inv,
    pp_is_zero,
    pp_len,
    pp_mul,
    pp_neg,
    pp_scale,
    pp_shift,
    pp_sub,
    pp_trunc,
    pp_val,
    rank_qrho,
)

log = logging.getLogger(__name__)

DEFAULT_QTRUNC = 48  # thirds, i.e. q_v^16
DEFAULT_UTRUNC = 64


class DivisionError(ArithmeticError):
    pass


class GradingError(ValueError):
    pass


def _as_eis_scalar(x):
    """int/Fraction/EisRat/CoeffScalar monomial -> (EisRat, de, dg)."""
    if isinstance(x, CoeffScalar):
        if x.is_zero():
            return EisRat(0), 0, 0
        if not x.is_monomial():
            raise GradingError("scalar %s is not a single c1/gam monomial" % x)
        r, e, g = x.lead()
        return r, e, g
    return EisRat.coerce(x), 0, 0


class FJSeries:
    """One component: q-terms t (thirds) -> w-polynomial pair, exact below u^utrunc, q^(qtrunc/3)."""

    __slots__ = ("terms", "lo", "utrunc", "qtrunc", "grading")

    def __init__(self, terms, lo, utrunc, qtrunc, grading):
        self.utrunc = utrunc
        self.qtrunc = qtrunc
        self.grading = grading
        n = utrunc - lo
        clean = {}
        for t, p in terms.items():
            if t >= qtrunc:
                continue
            p = pp_trunc(p, n)
            if not pp_is_zero(p):
                clean[t] = p
        # renormalize so that lo is the true u-valuation
        if clean:
            v = min(pp_val(p) for p in clean.values())
            if v:
                clean = {t: pp_shift(p, -v) for t, p in clean.items()}
                lo += v
        else:
            lo = utrunc
        self.terms = clean
        self.lo = lo

    # ------------------------------------------------------------ construction
    @classmethod
    def zero(cls, qtrunc, utrunc, grading=None):
        return cls({}, utrunc, utrunc, qtrunc, grading)

    @classmethod
    def from_cells(cls, cells, qtrunc, utrunc):
        """{(t, m): CoeffScalar} -> FJSeries; all cells must share one grading."""
        grading = None
        per_t = {}
        for (t, m), c in cells.items():
            c = CoeffScalar.coerce(c)
            if not c:
                continue
            r, e, g = _as_eis_scalar(c)
            gr = (e - m, g)
            if grading is None:
                grading = gr
            elif gr != grading:
                raise GradingError("cell (%d, %d) has grading %s, expected %s" % (t, m, gr, grading))
            per_t.setdefault(t, {})[m] = r
        if not per_t:
            return cls.zero(qtrunc, utrunc)
        lo = min(m for d in per_t.values() for m in d)
        terms = {}
        for t, d in per_t.items():
            vals = [EisRat(0)] * (max(d) - lo + 1)
            for m, r in d.items():
                vals[m - lo] = r
            terms[t] = pp_from_list(vals)
        return cls(terms, lo, utrunc, qtrunc, grading)

    # ---------------------------------------------------------------- queries
    def is_zero(self):
        return not self.terms

    def qval(self):
        return min(self.terms) if self.terms else self.qtrunc

    def uval(self):
        return self.lo if self.terms else self.utrunc

    def cell(self, t, m):
        if t >= self.qtrunc or m >= self.utrunc:
            raise IndexError("cell (%d, %d) beyond truncation (%d, %d)" % (t, m, self.qtrunc, self.utrunc))
        p = self.terms.get(t)
        if p is None or m < self.lo:
            return CoeffScalar()
        r = pp_coeff(p, m - self.lo)
        if not r:
            return CoeffScalar()
        e, g = self.grading
        return CoeffScalar.monomial(r, m + e, g)

    def cells(self):
        """iterate (t, m, r) over nonzero cells; r is the grading-stripped Q(rho) value."""
        for t in sorted(self.terms):
            p = self.terms[t]
            for k in range(pp_len(p)):
                r = pp_coeff(p, k)
                if r:
                    yield t, self.lo + k, r

    def row(self, t):
        """coefficient of q_v^(t/3) as a ULaurent in u."""
        if t >= self.qtrunc:
            raise IndexError("q-term %d beyond truncation %d" % (t, self.qtrunc))
        d = {}
        p = self.terms.get(t)
        if p is not None:
            e, g = self.grading
            for k in range(pp_len(p)):
                r = pp_coeff(p, k)
                if r:
                    m = self.lo + k
                    d[m] = CoeffScalar.monomial(r, m + e, g)
        return ULaurent.from_dict(d, self.utrunc)

    def column(self, m):
        """coefficient of u^m as a series in q_v^(1/3)."""
        if m >= self.utrunc:
            raise IndexError("u^%d beyond truncation %d" % (m, self.utrunc))
        out = {}
        for t in self.terms:
            c = self.cell(t, m)
            if c:
                out[t] = c
        return ThirdsQSeries(out, self.qtrunc)

    def integral(self):
        return all(t % 3 == 0 for t in self.terms)

    # -------------------------------------------------------------- arithmetic
    def _check_grading(self, other):
        if self.is_zero() or other.is_zero() or self.grading is None or other.grading is None:
            return self.grading if self.grading is not None else other.grading
        if self.grading != other.grading:
            raise GradingError("cannot add gradings %s and %s" % (self.grading, other.grading))
        return self.grading

    def __add__(self, other):
        if not isinstance(other, FJSeries):
            if other == 0:
                return self
            return NotImplemented
        grading = self._check_grading(other)
        ut = min(self.utrunc, other.utrunc)
        qt = min(self.qtrunc, other.qtrunc)
        lo = min(self.uval(), other.uval(), ut)
        terms = {}
        for src in (self, other):
            sh = src.lo - lo
            for t, p in src.terms.items():
                if t < qt:
                    q = pp_shift(p, sh)
                    terms[t] = pp_add(terms[t], q) if t in terms else q
        return FJSeries(terms, lo, ut, qt, grading)

    __radd__ = __add__

    def __neg__(self):
        return FJSeries({t: pp_neg(p) for t, p in self.terms.items()}, self.lo, self.utrunc, self.qtrunc, self.grading)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, x):
        r, de, dg = _as_eis_scalar(x)
        if not r:
            return FJSeries.zero(self.qtrunc, self.utrunc, None)
        grading = None if self.grading is None else (self.grading[0] + de, self.grading[1] + dg)
        terms = {t: pp_scale(p, r) for t, p in self.terms.items()}
        return FJSeries(terms, self.lo, self.utrunc, self.qtrunc, grading)

    def __truediv__(self, x):
        r, de, dg = _as_eis_scalar(x)
        return self.scale(CoeffScalar.monomial(r.inverse(), -de, -dg))

    def __mul__(self, other):
        if not isinstance(other, FJSeries):
            return self.scale(other)
        qt = min(self.qtrunc + other.qval(), other.qtrunc + self.qval())
        ut = min(self.utrunc + other.uval(), other.utrunc + self.uval())
        if self.grading is None or other.grading is None:
            grading = None
        else:
            grading = (self.grading[0] + other.grading[0], self.grading[1] + other.grading[1])
        if self.is_zero() or other.is_zero():
            return FJSeries.zero(qt, ut, grading)
        lo = self.lo + other.lo
        n = ut - lo
        acc = {}
        for ta, pa in self.terms.items():
            for tb, pb in other.terms.items():
                t = ta + tb
                if t >= qt:
                    continue
                prod = pp_mul(pa, pb, n)
                acc[t] = pp_add(acc[t], prod) if t in acc else prod
        return FJSeries(acc, lo, ut, qt, grading)

    __rmul__ = scale

    def __pow__(self, e):
        out = None
        for _ in range(e):
            out = self if out is None else out * self
        return out if out is not None else one_series(self.qtrunc, self.utrunc)

    def truncate(self, qtrunc=None, utrunc=None):
        qt = self.qtrunc if qtrunc is None else min(qtrunc, self.qtrunc)
        ut = self.utrunc if utrunc is None else min(utrunc, self.utrunc)
        return FJSeries(dict(self.terms), self.lo, ut, qt, self.grading)

    def agrees_with(self, other):
        """equal on the common range of validity."""
        qt = min(self.qtrunc, other.qtrunc)
        ut = min(self.utrunc, other.utrunc)
        d = self.truncate(qt, ut) - other.truncate(qt, ut)
        return d.is_zero()

    def __eq__(self, other):
        if not isinstance(other, FJSeries):
            return NotImplemented
        return (self.qtrunc, self.utrunc) == (other.qtrunc, other.utrunc) and self.agrees_with(other)

    def first_cell(self):
        """(t, m, CoeffScalar) of the leading cell: lowest t, then lowest m."""
        if self.is_zero():
            return None
        t = self.qval()
        p = self.terms[t]
        k = pp_val(p)
        return t, self.lo + k, self.cell(t, self.lo + k)

    def __repr__(self):
        parts = []
        for t, m, r in list(self.cells())[:6]:
            parts.append("(%s)*q^(%d/3)*u^%d" % (CoeffScalar.monomial(r, m + self.grading[0], self.grading[1]), t, m))
        more = " + ..." if sum(1 for _ in self.cells()) > 6 else ""
        return "FJSeries(%s%s; O(q^(%d/3)), O(u^%d))" % (" + ".join(parts) or "0", more, self.qtrunc, self.utrunc)


def one_series(qtrunc, utrunc):
    return FJSeries({0: pp_from_list([1])}, 0, utrunc, qtrunc, (0, 0))


# ------------------------------------------------------------------ vectors


def _add_char(a, b):
    if a is None or b is None:
        return None
    return (a + b) % 3


def _mul_sign(a, b):
    if a is None or b is None:
        return None
    return a * b


@dataclass
class VectorFJ:
    """Component i is the coefficient of X1^(j-i) X2^i."""

    components: list
    weight: tuple
    det_char: int | None = None
    s4_sign: int | None = None
    name: str | None = None
    notes: list = field(default_factory=list)

    @property
    def j(self):
        return len(self.components) - 1

    @property
    def qtrunc(self):
        return min(c.qtrunc for c in self.components)

    @property
    def utrunc(self):
        return min(c.utrunc for c in self.components)

    def form(self):
        return BinaryForm(list(self.components), FJSeries.zero(self.qtrunc, self.utrunc))

    def _meta(self, other, op):
        if op == "add":
            if tuple(self.weight) != tuple(other.weight):
                raise ValueError("weights %s and %s differ" % (self.weight, other.weight))
            det = self.det_char if self.det_char == other.det_char else None
            s4 = self.s4_sign if self.s4_sign == other.s4_sign else None
            return tuple(self.weight), det, s4
        w = (self.weight[0] + other.weight[0], self.weight[1] + other.weight[1])
        return w, _add_char(self.det_char, other.det_char), _mul_sign(self.s4_sign, other.s4_sign)

    def __add__(self, other):
        w, det, s4 = self._meta(other, "add")
        return VectorFJ([a + b for a, b in zip(self.components, other.components)], w, det, s4)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return VectorFJ([-c for c in self.components], self.weight, self.det_char, self.s4_sign)

    def scale(self, x):
        return VectorFJ([c.scale(x) for c in self.components], self.weight, self.det_char, self.s4_sign)

    def __truediv__(self, x):
        return VectorFJ([c / x for c in self.components], self.weight, self.det_char, self.s4_sign)

    def __mul__(self, other):
        if not isinstance(other, VectorFJ):
            return self.scale(other)
        return fj_mul(self, other)

    __rmul__ = scale

    def truncate(self, qtrunc=None, utrunc=None):
        return VectorFJ([c.truncate(qtrunc, utrunc) for c in self.components], self.weight, self.det_char, self.s4_sign, self.name)

    def agrees_with(self, other):
        return len(self.components) == len(other.components) and all(
            a.agrees_with(b) for a, b in zip(self.components, other.components)
        )

    def integral(self):
        return all(c.integral() for c in self.components)

    def __repr__(self):
        return "VectorFJ(%s, weight=%s, det=%s, s4=%s)" % (self.name or "?", self.weight, self.det_char, self.s4_sign)


def fj_mul(A, B):
    """Product of the associated polynomials in X1, X2."""
    prod = A.form() * B.form()
    w, det, s4 = A._meta(B, "mul")
    return VectorFJ(list(prod.coeffs), w, det, s4)


def sym_product(forms):
    out = forms[0]
    for f in forms[1:]:
        out = fj_mul(out, f)
    return out


def constant_vector(values, qtrunc=DEFAULT_QTRUNC, utrunc=DEFAULT_UTRUNC, weight=(1, 0)):
    """A vector of constants, e.g. (1, 0) for X1."""
    comps = []
    for v in values:
        s = one_series(qtrunc, utrunc).scale(v) if v else FJSeries.zero(qtrunc, utrunc, (0, 0))
        comps.append(s)
    return VectorFJ(comps, weight)


# -------------------------------------------------------- lattice power sums

_RHO_POW = ((1, 0), (0, 1), (-1, -1))


def _imul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


def _iconj(x):
    return (x[0] - x[1], -x[1])


@functools.lru_cache(maxsize=None)
def _shell(n, shifted):
    """beta = a + b*rho with N(beta) = n, plus beta = 1 mod sqrt(-3) when shifted."""
    out = []
    if n == 0:
        return ((0, 0),) if not shifted else ()
    bound = int((4 * n / 3) ** 0.5) + 2
    for b in range(-bound, bound + 1):
        for a in range(-bound - abs(b), bound + abs(b) + 1):
            if a * a - a * b + b * b == n and (not shifted or (a + b) % 3 == 1):
                out.append((a, b))
    return tuple(sorted(out))


def _weight(beta, kind):
    a, b = beta
    if kind == "one":
        return (1, 0)
    if kind == "trace":  # rho^(-Tr beta), Tr(a + b rho) = 2a - b
        return _RHO_POW[(-(2 * a - b)) % 3]
    if kind == "rho_y":
        return _RHO_POW[b % 3]
    raise KeyError(kind)


@functools.lru_cache(maxsize=None)
def _power_sums(n, shifted, kind, kmax):
    """(S0, S1) with S0[k] = sum w(alpha) alpha^k and S1[k] = sum w(alpha) conj(alpha) alpha^k for k < kmax."""
    s0 = [(0, 0)] * kmax
    s1 = [(0, 0)] * kmax
    for beta in _shell(n, shifted):
        w = _weight(beta, kind)
        cur = w
        cb = _iconj(beta)
        for k in range(kmax):
            s0[k] = (s0[k][0] + cur[0], s0[k][1] + cur[1])
            c1 = _imul(cur, cb)
            s1[k] = (s1[k][0] + c1[0], s1[k][1] + c1[1])
            cur = _imul(cur, beta)
    S0 = [EisRat(*v) for v in s0]
    S1 = [EisRat(*v) for v in s1]
    if shifted:
        xp = EisRat(1)
        xc = XI.conj()
        for k in range(kmax):
            S0[k] = S0[k] * xp
            S1[k] = S1[k] * xp * xc
            xp = xp * XI
    return S0, S1


def _taylor_coeffs(fname, n):
    """r-values f_k (f = sum f_k c1^k u^k) for k < n."""
    tab = tables(n + 1)
    out = [EisRat(0)] * n
    if fname == "X":
        for j, v in enumerate(tab.x):
            if 6 * j + 1 < n:
                out[6 * j + 1] = v
    else:
        s = 1 if fname == "Y" else -1
        for j, v in enumerate(tab.y):
            if 3 * j < n:
                out[3 * j] = v * s ** j
    return out


_LATTICES = {
    # name: (shifted lattice, weight kind, theta function)
    "P": (False, "one", "X"),
    "Q": (False, "trace", "X"),
    "R": (True, "one", "X"),
    "S": (True, "rho_y", "Y"),
    "T": (True, "rho_y", "Z"),
}


def block_series(kind, n, utrunc):
    """sum over the shell of w(alpha) conj(alpha) f(alpha u), as a ULaurent in u."""
    shifted, wkind, fname = _LATTICES[kind]
    f = _taylor_coeffs(fname, utrunc)
    _, S1 = _power_sums(n, shifted, wkind, utrunc)
    d = {}
    for k in range(utrunc):
        r = f[k] * S1[k]
        if r:
            d[k] = CoeffScalar.monomial(r, k)
    return ULaurent.from_dict(d, utrunc)


@functools.lru_cache(maxsize=None)
def build_block(kind, n):
    """The polynomial P_n, Q_n, R_n, S_n or T_n in the theta functions."""
    if kind not in _LATTICES:
        raise KeyError("block kind must be one of P, Q, R, S, T")
    if n < 1:
        raise ValueError("n must be >= 1")
    shifted = _LATTICES[kind][0]
    ut = 3 * n + 16
    s = block_series(kind, n, ut)
    return basis_convert(s, n, shifted=shifted, allow_x=True if kind == "R" else None)


# ------------------------------------------------------------- basic forms


def _vector_pair(lattice, wkind, fname, qtrunc, utrunc, sign=1):
    """[f'(alpha u); gam conj(alpha) f(alpha u)] summed with q_v^N(alpha)."""
    f = _taylor_coeffs(fname, utrunc + 1)
    c0 = {}
    c1 = {}
    shifted = lattice == "shifted"
    step = 1 if shifted else 3
    n = 0
    while n * step < qtrunc:
        t = n * step
        if _shell(n, shifted):
            S0, S1 = _power_sums(n, shifted, wkind, utrunc + 1)
            v0 = [EisRat(0)] * utrunc
            v1 = [EisRat(0)] * utrunc
            for k in range(1, utrunc + 1):
                if f[k]:
                    v0[k - 1] = f[k] * k * S0[k - 1] * sign
            for k in range(utrunc):
                if f[k]:
                    v1[k] = f[k] * S1[k] * sign
            c0[t] = pp_from_list(v0)
            c1[t] = pp_from_list(v1)
        n += 1
    return [FJSeries(c0, 0, utrunc, qtrunc, (1, 0)), FJSeries(c1, 0, utrunc, qtrunc, (0, 1))]


_F_SPECS = {
    "F0": ("full", "trace", "X", 1),
    "F1": ("shifted", "one", "X", 1),
    "F2": ("shifted", "rho_y", "Y", 1),
    "F3": ("shifted", "rho_y", "Z", -1),
    "F4": ("full", "one", "X", 1),
}


def _zeta(qtrunc, utrunc):
    f = _taylor_coeffs("X", utrunc)
    terms = {}
    n = 1
    while 3 * n < qtrunc:
        if _shell(n, False):
            S0, _ = _power_sums(n, False, "one", utrunc + 5)
            vals = [f[k] * S0[k + 5] / 6 if f[k] else EisRat(0) for k in range(utrunc)]
            terms[3 * n] = pp_from_list(vals)
        n += 1
    return FJSeries(terms, 0, utrunc, qtrunc, (0, 0))


_BASIC_CACHE = {}


CHI44_MIN_QTRUNC = 9


def build_basic(name, qtrunc=DEFAULT_QTRUNC, utrunc=DEFAULT_UTRUNC):
    """F0..F4, E11, zeta, chi44, chi4m2 to O(q_v^(qtrunc/3)), O(u^utrunc)."""
    key = (name, qtrunc, utrunc)
    hit = _BASIC_CACHE.get(key)
    if hit is not None:
        return hit
    # reuse a deeper build when one exists
    for (nm, qt, ut), v in list(_BASIC_CACHE.items()):
        if nm == name and qt >= qtrunc and ut >= utrunc:
            out = _truncate_any(v, qtrunc, utrunc)
            _BASIC_CACHE[key] = out
            return out
    out = _build_basic(name, qtrunc, utrunc)
    _BASIC_CACHE[key] = out
    return out


def _truncate_any(v, qt, ut):
    return v.truncate(qt, ut)


def _build_basic(name, qtrunc, utrunc):
    if name in _F_SPECS:
        lat, wk, fn, sign = _F_SPECS[name]
        comps = _vector_pair(lat, wk, fn, qtrunc, utrunc, sign)
        if name == "F4":
            return VectorFJ(comps, (1, 1), 1, -1, "E11")
        return VectorFJ(comps, (1, 1), None, None, name)
    if name == "E11":
        v = build_basic("F4", qtrunc, utrunc)
        return VectorFJ(v.components, (1, 1), 1, -1, "E11")
    if name == "zeta":
        return VectorFJ([_zeta(qtrunc, utrunc)], (0, 6), 1, -1, "zeta")
    if name == "chi44":
        if qtrunc < CHI44_MIN_QTRUNC:
            # the normalizing cell sits at q_v^2
            out = build_basic("chi44", CHI44_MIN_QTRUNC, utrunc).truncate(qtrunc, utrunc)
            out.name = "chi44"
            return out
        fs = [build_basic("F%d" % i, qtrunc, utrunc) for i in range(4)]
        prod = sym_product(fs)
        lead = prod.components[4].first_cell()
        if lead is None:
            raise ArithmeticError("component 4 of the Sym product vanishes to the working depth")
        t, m, c = lead
        r, e, g = c.lead()
        factor = CoeffScalar.monomial(r, 0, g)
        log.info("chi44: Sym product divided by %s (leading cell q^(%d/3) u^%d)", factor, t, m)
        comps = [cp / factor for cp in prod.components]
        out = VectorFJ(comps, (4, 4), 2, 1, "chi44")
        out.notes.append("normalized by %s" % factor)
        return out
    if name == "chi4m2":
        chi = build_basic("chi44", qtrunc + 3, utrunc + 8)
        out = div_by_zeta(chi, 1)
        out = out.truncate(qtrunc, utrunc)
        out.name = "chi4m2"
        return out
    raise KeyError("unknown basic form %r" % name)


# ----------------------------------------------------------------- division


class _Cell:
    """u-Laurent piece: pair with coefficient k at u^(lo+k), exact below u^tr."""

    __slots__ = ("p", "lo", "tr")

    def __init__(self, p, lo, tr):
        p = pp_trunc(p, max(0, tr - lo))
        v = pp_val(p)
        if v is None:
            self.p, self.lo = (p[0] * 0, p[1] * 0), tr
        else:
            self.p, self.lo = pp_shift(p, -v), lo + v
        self.tr = tr

    def zero(self):
        return self.lo >= self.tr

    def __sub__(self, other):
        tr = min(self.tr, other.tr)
        lo = min(self.lo, other.lo)
        a = pp_shift(self.p, self.lo - lo) if not self.zero() else self.p
        b = pp_shift(other.p, other.lo - lo) if not other.zero() else other.p
        return _Cell(pp_sub(a, b), lo, tr)

    def mul(self, other):
        tr = min(self.tr + other.lo, other.tr + self.lo)
        lo = self.lo + other.lo
        if self.zero() or other.zero():
            return _Cell(pp_from_list([]), tr, tr)
        return _Cell(pp_mul(self.p, other.p, tr - lo), lo, tr)


def divide_series(G, Z, allow_negative=False):
    """H with Z*H = G, solved q-term by q-term.

    Z must have a leading q-term whose u-series has a nonzero leading coefficient
    (always true for powers of zeta).  Without allow_negative the quotient must
    start at q_v^0, so G may not have terms below the leading exponent of Z.
    """
    if Z.is_zero():
        raise ZeroDivisionError("divisor vanishes to its truncation")
    if G.grading is not None and Z.grading is not None:
        grading = (G.grading[0] - Z.grading[0], G.grading[1] - Z.grading[1])
    else:
        grading = G.grading
    vZ = Z.qval()
    Zc = {s: _Cell(p, Z.lo, Z.utrunc) for s, p in Z.terms.items()}
    Z0 = Zc[vZ]
    uZ = Z0.lo
    inv_len = Z0.tr - Z0.lo
    Z0inv = pp_inv(Z0.p, inv_len)
    vG = G.qval()
    if G.is_zero():
        return FJSeries.zero(G.qtrunc - vZ, G.utrunc - uZ, grading)
    start = vG - vZ
    if start < 0 and not allow_negative:
        bad = G.first_cell()
        raise DivisionError(
            "remainder: q^(%d/3) u^%d term %s lies below the divisor's leading q^(%d/3)" % (bad[0], bad[1], bad[2], vZ)
        )
    qt = min(G.qtrunc - vZ, Z.qtrunc + start - vZ)
    H = {}
    for t in range(start, qt):
        src = G.terms.get(t + vZ)
        num = _Cell(src, G.lo, G.utrunc) if src is not None else _Cell(pp_from_list([]), G.utrunc, G.utrunc)
        for s, zc in Zc.items():
            if s == vZ:
                continue
            tp = t + vZ - s
            if tp < start:
                continue
            h = H.get(tp)
            if h is None:
                continue
            num = num - zc.mul(h)
        if num.zero():
            H[t] = _Cell(pp_from_list([]), num.tr - uZ, num.tr - uZ)
            continue
        rel = min(num.tr - num.lo, inv_len)
        q = pp_mul(num.p, Z0inv, rel)
        H[t] = _Cell(q, num.lo - uZ, num.lo - uZ + rel)
    ut = min(c.tr for c in H.values()) if H else G.utrunc - uZ
    nonzero = {t: c for t, c in H.items() if not c.zero() and c.lo < ut}
    lo = min((c.lo for c in nonzero.values()), default=ut)
    terms = {t: pp_shift(c.p, c.lo - lo) for t, c in nonzero.items()}
    return FJSeries(terms, lo, ut, qt, grading)


@functools.lru_cache(maxsize=None)
def _zeta_power(a, qtrunc, utrunc):
    z = build_basic("zeta", qtrunc, utrunc).components[0]
    return z ** a


def div_by_zeta(F, a, allow_negative=False):
    """F / zeta^a componentwise; raises DivisionError on a remainder."""
    if a < 1:
        raise ValueError("a must be positive")
    # zeta is computed deeper in u so that poles in the quotient cost no precision
    zq = F.qtrunc + 3 * a
    zu = F.utrunc + 2 * a + 24
    Za = _zeta_power(a, zq, zu)
    comps = [divide_series(c, Za, allow_negative) for c in F.components]
    w = (F.weight[0], F.weight[1] - 6 * a)
    det = None if F.det_char is None else (F.det_char - a) % 3
    s4 = None if F.s4_sign is None else F.s4_sign * (-1) ** a
    return VectorFJ(comps, w, det, s4, None if F.name is None else "%s/zeta^%d" % (F.name, a))


# ---------------------------------------------------------------------- nu


def nu_metadata(deg):
    a, b, c = deg
    return (c, Fraction(3 * b - c, 2)), (2 * (a + b + c)) % 3, (-1) ** (a + b)


def _int_weight(w):
    j, k = w
    return (j, int(k)) if Fraction(k).denominator == 1 else (j, k)


def nu(expr, qtrunc=DEFAULT_QTRUNC, utrunc=32):
    """Substitute chi44 for f and E11 for h in a covariant expression, then divide once by zeta^a."""
    node = parse_expr(expr, homogeneous=True) if isinstance(expr, str) else expr
    deg = tri_degree(node)
    if deg is None:
        raise ValueError("expression has no generators")
    a = deg[0]
    # extra depth absorbed by the zeta division
    qw = qtrunc + 3 * a
    uw = utrunc + 2 * a + 8
    chi = build_basic("chi44", qw, uw)
    e11 = build_basic("E11", qw, uw)
    f = chi.form()
    h = e11.form()
    cache = {}

    def gen(d):
        if d not in cache:
            cache[d] = covariant_form(d, f, h)
        return cache[d]

    def const(v):
        return Fraction(v)

    val = evaluate(node, gen, const)
    if isinstance(val, Fraction):
        raise ValueError("expression is a constant")
    comps = list(val.coeffs)
    w, det, s4 = nu_metadata(deg)
    sub = VectorFJ(comps, _int_weight((w[0], w[1] + 6 * a)), (det + a) % 3, s4 * (-1) ** a)
    if a:
        out = div_by_zeta(sub, a, allow_negative=True)
    else:
        out = sub
    out = out.truncate(qtrunc, utrunc)
    out.weight = _int_weight(w)
    out.det_char = det
    out.s4_sign = s4
    out.name = expr if isinstance(expr, str) else None
    return out


# ----------------------------------------------------------- restriction


@dataclass
class RestrictionRow:
    component: int
    m: int
    weight: int
    decomposition: object  # Quasimodular


def restrict_T1(F, u_depth=None, components=None, start=None):
    """Decompose each u^m coefficient in theta, psi, e2 at weight k + m + i."""
    k = F.weight[1]
    out = []
    comps = range(len(F.components)) if components is None else components
    for i in comps:
        c = F.components[i]
        lo = c.uval() if start is None else start
        hi = c.utrunc if u_depth is None else min(c.utrunc, lo + u_depth)
        for m in range(lo, hi):
            col = c.column(m)
            w = k + m + i
            if not col.coeffs:
                out.append(RestrictionRow(i, m, w, None))
                continue
            if w < 0:
                raise DecompositionError("negative weight %d at component %d, u^%d" % (w, i, m))
            out.append(RestrictionRow(i, m, w, decompose(col, w)))
    return out


def orders_T1(F):
    """(order, certified_to) per component; order is None when the component vanishes to u^certified_to."""
    out = []
    for c in F.components:
        if c.is_zero():
            out.append((None, c.utrunc))
        else:
            out.append((c.uval(), c.utrunc))
    return out


# ------------------------------------------------------------------- rank


def rank(forms):
    """Rank over Q(rho) of the cell matrix.

    Cells are keyed by (component, t, m, c1 exponent, gam exponent); c1 and gam
    are algebraically independent over Q(rho), so distinct monomials never mix.
    """
    forms = [f for f in forms if f is not None]
    if not forms:
        return 0
    keys = {}
    cols = []
    for f in forms:
        col = {}
        comps = f.components if isinstance(f, VectorFJ) else [f]
        for i, c in enumerate(comps):
            if c.is_zero():
                continue
            e, g = c.grading
            for t, m, r in c.cells():
                key = (i, t, m, m + e, g)
                keys.setdefault(key, len(keys))
                col[key] = r
        cols.append(col)
    if not keys:
        return 0
    rows = [[col.get(key, EisRat(0)) for col in cols] for key in keys]
    return rank_qrho(rows)


# ------------------------------------------------------------ rendering


def row_poly(series, t, degree=None, shifted=None):
    """The q_v^(t/3) coefficient as an EllipticPoly, or None when it is not a theta polynomial."""
    if t % 3 and shifted is None:
        shifted = True
    if degree is None:
        degree = t if shifted else t // 3
    try:
        return basis_convert(series.row(t), degree, shifted=bool(shifted))
    except BasisError:
        return None
