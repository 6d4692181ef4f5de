"""
Named Picard modular forms built from nu-recipes, and the verification suites.

Every suite returns a SuiteReport; failures are data, each carrying the first
cell where the two sides differ.
"""

from __future__ import annotations

import functools
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial

from flint import fmpq_mpoly_ctx, fmpq_poly

from . import fjcore
from .arith import XI, CoeffScalar, EisRat, RHO
from .covariants import GENERATOR_DEGREES, jname, verify_identity
from .ellcurve import EllipticPoly, tables
from .fjcore import FJSeries, VectorFJ, build_basic, build_block, nu, orders_T1, rank, restrict_T1, row_poly
from .qrho import InconsistentSystem, solve_qrho
from .level3 import Quasimodular, f_series, q_expansion, required_thirds

C = CoeffScalar.monomial


@dataclass(frozen=True)
class FormRecipe:
    name: str
    expr: str | None
    prefactor: CoeffScalar
    rule: str = ""


RECIPES = {
    "E6": FormRecipe("E6", "J240", C(-5040, -6, 2)),
    "E9": FormRecipe("E9", "J360", C(798336, -9, 3)),
    "chi12": FormRecipe("chi12", "J200", C(6, -4, 4), "times zeta^2"),
    "E12": FormRecipe("E12", None, C(1), "E6^2 - 5184*chi12"),
    "chi18": FormRecipe("chi18", "J300", C(864, -6, 6), "times zeta^3, plus E6*chi12"),
    "chi44": FormRecipe("chi44", "J104*J140", C(Fraction(4900, 3), -4, 0)),
    "chi4_10": FormRecipe("chi4_10", "J140^2*J204", C(-2744000, -10, 2)),
    "chi4_16": FormRecipe("chi4_16", "J140^2*(6*J213*J231 - J200*J113*J131)", C(2304960000, -16, 4)),
    "chi4_22": FormRecipe("chi4_22", "J140^3*J113*(J300*J131 - J200*J231)", C(Fraction(53782400000, 3), -22, 6)),
    "chi4_28": FormRecipe("chi4_28", "J140^3*J011*J342*(J300*J131 - J200*J231)", C(-51114792960000, -28, 8)),
}

CATALOG_NAMES = tuple(RECIPES)

# (weight, det_char, s4_sign); E9 carries the sign character
CATALOG_METADATA = {
    "E6": ((0, 6), 0, 1), "E9": ((0, 9), 0, -1), "chi12": ((0, 12), 0, 1), "E12": ((0, 12), 0, 1),
    "chi18": ((0, 18), 0, 1), "chi44": ((4, 4), 2, 1), "chi4_10": ((4, 10), 2, 1), "chi4_16": ((4, 16), 2, 1),
    "chi4_22": ((4, 22), 2, 1), "chi4_28": ((4, 28), 2, 1),
}

_CACHE = {}


def catalog(name, qtrunc=fjcore.DEFAULT_QTRUNC, utrunc=24):
    """Build a named form; scalar forms come back as one-component VectorFJs."""
    if name not in RECIPES:
        raise KeyError("unknown catalog form %r (known: %s)" % (name, ", ".join(CATALOG_NAMES)))
    key = (name, qtrunc, utrunc)
    if key in _CACHE:
        return _CACHE[key]
    for (nm, qt, ut), v in list(_CACHE.items()):
        if nm == name and qt >= qtrunc and ut >= utrunc:
            out = v.truncate(qtrunc, utrunc)
            out.name = name
            _CACHE[key] = out
            return out
    out = _build(name, qtrunc, utrunc)
    out.name = name
    _CACHE[key] = out
    return out


BASIC_NAMES = ("F0", "F1", "F2", "F3", "F4", "E11", "zeta", "chi44", "chi4m2")
FORM_NAMES = tuple(dict.fromkeys(BASIC_NAMES + CATALOG_NAMES))


def form_by_name(name, qtrunc=fjcore.DEFAULT_QTRUNC, utrunc=24, cache=None):
    """Basic or catalog form by name, optionally through a DiskCache."""
    if name not in FORM_NAMES:
        raise KeyError("unknown form %r (known: %s)" % (name, ", ".join(FORM_NAMES)))

    def build():
        F = build_basic(name, qtrunc, utrunc) if name in BASIC_NAMES else catalog(name, qtrunc, utrunc)
        if isinstance(F, FJSeries):
            F = VectorFJ([F], (0, 0))
        F.name = name
        return F

    if cache is None:
        return build()
    return cache.form("form", build, name=name, qtrunc=qtrunc, utrunc=utrunc)


def restriction_rows(F, u_depth=2):
    """Lowest u_depth rows of every nonzero component, decomposed in theta, psi, e2."""
    rows = []
    for i, c in enumerate(F.components):
        if not c.is_zero():
            rows += restrict_T1(F, components=[i], u_depth=u_depth)
    return rows


def restrict_named(name, u_rows=2, qtrunc=None, cache=None):
    """Restriction rows of a named form with the q-depth chosen from the row weights."""
    probe = form_by_name(name, 12, 24, cache)
    k = probe.weight[1]
    need, top = 0, 1
    for i, c in enumerate(probe.components):
        if c.is_zero():
            continue
        lo = c.uval()
        top = max(top, lo + u_rows)
        for m in range(lo, lo + u_rows):
            if k + m + i >= 0:
                need = max(need, required_thirds(k + m + i))
    F = form_by_name(name, max(need, qtrunc or 0), max(top, 1), cache)
    return F, restriction_rows(F, u_rows)


def _zeta(qtrunc, utrunc):
    return build_basic("zeta", qtrunc, utrunc)


def _build(name, qt, ut):
    r = RECIPES[name]
    if name == "E12":
        e6 = catalog("E6", qt, ut)
        return e6 * e6 - catalog("chi12", qt, ut).scale(5184)
    if name == "chi12":
        v = nu(r.expr, qt, ut).scale(r.prefactor)
        return _zeta(qt, ut) * _zeta(qt, ut) * v
    if name == "chi18":
        v = nu(r.expr, qt, ut).scale(r.prefactor)
        z = _zeta(qt, ut)
        return z * z * z * v + catalog("E6", qt, ut) * catalog("chi12", qt, ut)
    if name == "chi44":
        return build_basic("chi44", qt, ut)
    return nu(r.expr, qt, ut).scale(r.prefactor)


def clear_cache():
    _CACHE.clear()
    fjcore._BASIC_CACHE.clear()


# --------------------------------------------------------------- reports


@dataclass
class Check:
    id: str
    status: str  # pass | fail | depth-limited
    witness: str | None = None
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def add(self, cid, passed, witness=None, detail=""):
        self.checks.append(Check(cid, "pass" if passed else "fail", witness, detail))

    def to_dict(self):
        return {"suite": self.suite, "ok": self.ok, "checks": [asdict(c) for c in self.checks]}

    def render(self):
        w = max([len(c.id) for c in self.checks] + [5])
        lines = ["suite %s: %s" % (self.suite, "PASS" if self.ok else "FAIL")]
        for c in self.checks:
            line = "  %-*s  %-13s %s" % (w, c.id, c.status, c.detail)
            if c.witness:
                line += "  [witness: %s]" % c.witness
            lines.append(line.rstrip())
        return "\n".join(lines)


def qv_label(thirds):
    return "q_v^%d" % (thirds // 3) if thirds % 3 == 0 else "q_v^(%d/3)" % thirds


def _depth(s):
    return "verified to depth (%s, u^%d)" % (qv_label(s.qtrunc), s.utrunc)


def compare_series(A, B):
    """(equal, witness, detail) on the common range of A and B."""
    qt = min(A.qtrunc, B.qtrunc)
    ut = min(A.utrunc, B.utrunc)
    a = A.truncate(qt, ut)
    b = B.truncate(qt, ut)
    try:
        d = a - b
    except fjcore.GradingError as exc:
        return False, None, "grading mismatch: %s" % exc
    if d.is_zero():
        return True, None, _depth(d)
    t, m, c = d.first_cell()
    witness = "q^(%d/3) u^%d: %s vs %s" % (t, m, a.cell(t, m), b.cell(t, m))
    detail = "differs"
    # report a measured constant when the two sides are proportional
    la, lb = a.first_cell(), b.first_cell()
    if la and lb and la[:2] == lb[:2]:
        ratio = la[2] / lb[2]
        if (a - b.scale(ratio)).is_zero():
            detail = "proportional with measured constant %s" % ratio
    return False, witness, detail


def compare_vectors(A, B):
    if len(A.components) != len(B.components):
        return False, None, "component counts differ"
    for i, (a, b) in enumerate(zip(A.components, B.components)):
        ok, w, det = compare_series(a, b)
        if not ok:
            return False, "component %d, %s" % (i, w), det
    c = A.components[0]
    return True, None, _depth(c.truncate(B.qtrunc, B.utrunc))


# ------------------------------------------------------ printed expansions

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[XYZ](?:\^\d+)?\*?)*)")


def parse_theta_poly(text, degree=None):
    """'54*Y*Z - 272*Y^3 - 272*Z^3' -> EllipticPoly (integer coefficients)."""
    text = text.replace(" ", "")
    terms = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse %r at %d" % (text, pos))
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        mon = [0, 0, 0]
        for v, e in re.findall(r"([XYZ])(?:\^(\d+))?", m.group(3)):
            mon["XYZ".index(v)] += int(e) if e else 1
        terms[tuple(mon)] = terms.get(tuple(mon), 0) + sign * coef
        pos = m.end()
    deg = degree if degree is not None else sum(next(iter(terms)))
    return EllipticPoly(deg, terms)


CHI44_DISPLAY = {
    2: "1", 3: "0", 4: "-6*Y*Z", 5: "-20*Y^3 - 20*Z^3", 6: "81*Y^2*Z^2", 7: "132*Y^4*Z + 132*Y*Z^4",
    8: "122*Y^6 - 800*Y^3*Z^3 + 122*Z^6", 9: "0",
    10: "-1020*Y^7*Z + 1470*Y^4*Z^4 - 1020*Y*Z^7",
    11: "-76*Y^9 + 1140*Y^6*Z^3 + 1140*Y^3*Z^6 - 76*Z^9",
    12: "-486*Y^8*Z^2 + 486*Y^5*Z^5 - 486*Y^2*Z^8",
    13: "3012*Y^10*Z - 3924*Y^7*Z^4 - 3924*Y^4*Z^7 + 3012*Y*Z^10",
    14: "-1261*Y^12 + 266*Y^9*Z^3 + 4782*Y^6*Z^6 + 266*Y^3*Z^9 - 1261*Z^12",
}

SIGMA42_DISPLAYS = {
    "chi4_10": {
        2: "1", 3: "0", 4: "54*Y*Z", 5: "-272*Y^3 - 272*Z^3", 6: "405*Y^2*Z^2", 7: "3024*Y^4*Z + 3024*Y*Z^4",
        8: "4406*Y^6 - 15560*Y^3*Z^3 + 4406*Z^6", 9: "-23328*Y^5*Z^2 - 23328*Y^2*Z^5",
        10: "-62748*Y^7*Z + 221022*Y^4*Z^4 - 62748*Y*Z^7",
        11: "-22000*Y^9 + 16368*Y^6*Z^3 + 16368*Y^3*Z^6 - 22000*Z^9",
    },
    "chi4_16": {
        2: "1", 3: "0", 4: "162*Y*Z", 5: "3040*Y^3 + 3040*Z^3", 6: "43497*Y^2*Z^2", 7: "-2592*Y^4*Z - 2592*Y*Z^4",
        8: "-298462*Y^6 - 263600*Y^3*Z^3 - 298462*Z^6", 9: "-839808*Y^5*Z^2 - 839808*Y^2*Z^5",
        10: "2185380*Y^7*Z - 127170*Y^4*Z^4 + 2185380*Y*Z^7",
        11: "4366688*Y^9 + 8413152*Y^6*Z^3 + 8413152*Y^3*Z^6 + 4366688*Z^9",
    },
    "chi4_22": {
        2: "0", 3: "0", 4: "Y*Z", 5: "9*Y^3 + 9*Z^3", 6: "60*Y^2*Z^2", 7: "-277*Y^4*Z - 277*Y*Z^4",
        8: "-6363*Y^6 + 9468*Y^3*Z^3 - 6363*Z^6", 9: "2106*Y^5*Z^2 + 2106*Y^2*Z^5",
        10: "15128*Y^7*Z + 27844*Y^4*Z^4 + 15128*Y*Z^7",
        11: "276471*Y^9 - 212895*Y^6*Z^3 - 212895*Y^3*Z^6 + 276471*Z^9",
    },
    "chi4_28": {
        2: "0", 3: "0", 4: "Y*Z", 5: "9*Y^3 + 9*Z^3", 6: "-384*Y^2*Z^2", 7: "-7117*Y^4*Z - 7117*Y*Z^4",
        8: "-31959*Y^6 - 92592*Y^3*Z^3 - 31959*Z^6", 9: "-274698*Y^5*Z^2 - 274698*Y^2*Z^5",
        10: "3511880*Y^7*Z - 4338416*Y^4*Z^4 + 3511880*Y*Z^7",
        11: "18226071*Y^9 - 5450355*Y^6*Z^3 - 5450355*Y^3*Z^6 + 18226071*Z^9",
    },
}

# leading terms of products printed next to the generators
PRODUCT_DISPLAYS = {
    ("E6", "chi44"): {2: "1", 4: "750*Y*Z"},
    ("E6^2", "chi44"): {2: "1", 4: "1506*Y*Z", 5: "4012*Y^3 + 4012*Z^3", 6: "603369*Y^2*Z^2"},
    ("E12", "chi44"): {2: "1", 4: "-3678*Y*Z", 5: "35116*Y^3 + 35116*Z^3", 6: "354537*Y^2*Z^2"},
    ("E6", "chi4_10"): {2: "1", 4: "810*Y*Z", 5: "1744*Y^3 + 1744*Z^3", 6: "61641*Y^2*Z^2"},
}


def display_poly(n, body):
    """X^2 * body as a degree-n EllipticPoly."""
    inner = parse_theta_poly(body, n - 2) if body != "0" else EllipticPoly(n - 2, {})
    return EllipticPoly.monomial(2, 0, 0) * inner


def check_display(series, display, cid):
    """Compare component rows at q_v^n with the printed polynomials."""
    for n in sorted(display):
        t = 3 * n
        if t >= series.qtrunc:
            return False, "q_v^%d beyond truncation" % n, "depth"
        got = row_poly(series, t, degree=n, shifted=False)
        want = display_poly(n, display[n])
        if got is None:
            return False, "q_v^%d row is not a theta polynomial at u-depth %d" % (n, series.utrunc), "depth"
        if got != want:
            return False, "q_v^%d: got %s, printed %s" % (n, got.render(), want.render()), "mismatch"
    return True, None, "through q_v^%d" % max(display)


# ------------------------------------------------------------------ orders

ORDERS_TABLE = {
    (2, 0, 0): [-2], (0, 1, 1): [0, 1], (3, 0, 0): [-3], (1, 4, 0): [1], (1, 3, 1): [0, 1],
    (1, 2, 2): [-1, 0, 1], (1, 1, 3): [4, -1, 0, 1], (1, 0, 4): [3, 4, -1, 0, 1], (2, 4, 0): [0],
    (2, 3, 1): [-1, 0], (2, 2, 2): [-2, -1, 0], (2, 1, 3): [3, -2, -1, 0], (2, 0, 4): [2, 3, -2, -1, 0],
    (3, 6, 0): [0], (3, 5, 1): [-1, 0], (3, 4, 2): [4, -1, 0], (3, 3, 3): [3, 4, -1, 0],
    (3, 2, 4): [2, 3, 4, -1, 0], (3, 1, 5): [1, 2, 3, 4, -1, 0], (3, 0, 6): [6, 1, 2, 3, 4, -1, 0],
}

# (j, k, l, e) columns of the generator table
WEIGHT_TABLE = {
    (2, 0, 0): (0, 0, 1, 0), (0, 1, 1): (1, 1, 1, 1), (3, 0, 0): (0, 0, 0, 1), (1, 4, 0): (0, 6, 1, 1),
    (1, 3, 1): (1, 4, 1, 0), (1, 2, 2): (2, 2, 1, 1), (1, 1, 3): (3, 0, 1, 0), (1, 0, 4): (4, -2, 1, 1),
    (2, 4, 0): (0, 6, 0, 0), (2, 3, 1): (1, 4, 0, 1), (2, 2, 2): (2, 2, 0, 0), (2, 1, 3): (3, 0, 0, 1),
    (2, 0, 4): (4, -2, 0, 0), (3, 6, 0): (0, 9, 0, 1), (3, 5, 1): (1, 7, 0, 0), (3, 4, 2): (2, 5, 0, 1),
    (3, 3, 3): (3, 3, 0, 0), (3, 2, 4): (4, 1, 0, 1), (3, 1, 5): (5, -1, 0, 0), (3, 0, 6): (6, -3, 0, 1),
}


def generator_orders(qtrunc=12, utrunc=16):
    out = {}
    for deg in GENERATOR_DEGREES:
        v = nu(jname(deg), qtrunc, utrunc)
        out[deg] = (v, orders_T1(v))
    return out


# ------------------------------------------------------------ restrictions

_QM = fmpq_mpoly_ctx.get(("theta", "psi", "e2"), "lex")
TH, PS, E2 = _QM.gens()
ETA8 = PS * (TH ** 3 - 27 * PS ** 3)


def quasimodular_from(poly, weight, prefactor, c1_exp, gam_exp):
    """prefactor (EisRat) * poly(theta, psi, e2) with the c1/gam scale of the column."""
    coeffs = {}
    for mon, c in zip(poly.monoms(), poly.coeffs()):
        coeffs[tuple(mon)] = EisRat(Fraction(int(c.p), int(c.q))) * prefactor
    return Quasimodular(weight, coeffs, (c1_exp, gam_exp))


def expected_restrictions():
    """(form, component, u-exponent) -> expected Quasimodular of that column."""
    r = RHO
    one = EisRat(1)
    th, ps, e2, eta8 = TH, PS, E2, ETA8
    return {
        ("zeta", 0, 1): quasimodular_from(th * eta8 * ps ** 2, 7, one, 1, 0),
        ("zeta", 0, 7): quasimodular_from(th * eta8 * (eta8 ** 2 + 18 * ps ** 4 * eta8 + 729 * ps ** 8), 13, r / 840, 7, 0),
        ("E11", 0, 0): quasimodular_from(th, 1, one, 1, 0),
        ("E11", 0, 6): quasimodular_from(th * ps ** 2 * eta8, 7, r / 20, 7, 0),
        ("E11", 1, 1): quasimodular_from(108 * ps ** 3 + th * (e2 - th ** 2), 3, EisRat(Fraction(1, 12)), 1, 1),
        ("E11", 1, 7): quasimodular_from(ps * eta8 * (5 * eta8 + 243 * ps ** 4 + 7 * e2 * ps * th), 9, r / 1680, 7, 1),
        ("chi44", 2, 0): quasimodular_from(eta8 * ps ** 2, 6, EisRat(-1), 2, -2),
        ("chi44", 3, 1): quasimodular_from(eta8 * ps ** 2 * (th ** 2 + e2), 8, EisRat(Fraction(-1, 6)), 2, -1),
        ("chi44", 4, 2): quasimodular_from(eta8 * ps ** 2 * (3 * th ** 2 + e2) * (th ** 2 - e2), 10, EisRat(Fraction(1, 144)), 2, 0),
        ("chi44", 0, 4): quasimodular_from(eta8 * ps ** 2 * th ** 2, 8, -r / 12, 8, -4),
        ("chi44", 1, 5): quasimodular_from(eta8 * ps ** 2 * th * (4 * th ** 3 + 5 * th * e2 + 54 * ps ** 3), 10, r / 180, 8, -3),
    }


def level3_identities(depth=50):
    """[(id, ok, detail)] for the eta^8 relation, Theta_6, Theta_12 and F, exact below q^depth."""
    from .level3 import eta8_poly, psi_poly, theta_poly
    from .qrho import fq

    n = 3 * depth
    th, ps = theta_poly(n), psi_poly(n)
    eta8 = eta8_poly(n)

    def low(*fs):
        out = fs[0]
        for f in fs[1:]:
            out = out.mul_low(f, n)
        return out

    def lattice_poly(name):
        vals = [0] * n
        for t, c in q_expansion(name, depth).series.coeffs.items():
            r = c.lead()[0]
            if r.rh:
                raise ValueError("%s has an irrational coefficient" % name)
            vals[t] = fq(r.re)
        return fmpq_poly(vals)

    out = []
    cubic = low(th, th, th) - 27 * low(ps, ps, ps)
    out.append(("eta^8 = psi*(theta^3 - 27*psi^3)", eta8 == low(ps, cubic), ""))
    printed = low(ps, low(th, th, th) - low(ps, ps, ps))
    out.append(("psi*(theta^3 - psi^3) differs from eta^8", eta8 != printed, "the printed variant fails at q^(4/3)"))
    t6 = lattice_poly("Theta_6")
    out.append(("Theta_6 = 6*theta*psi^3*(theta^3 - 27*psi^3)", t6 == 6 * low(th, ps, ps, ps, cubic), ""))
    out.append(("Theta_6 = 6*theta*psi^2*eta^8", t6 == 6 * low(th, ps, ps, eta8), ""))
    t12 = lattice_poly("Theta_12")
    prod = low(th, eta8, low(eta8, eta8) + 18 * low(ps, ps, ps, ps, eta8) + 729 * low(*[ps] * 8))
    ratio = Fraction(int(t12[3].p), int(t12[3].q)) / Fraction(int(prod[3].p), int(prod[3].q))
    ok = t12 == prod
    out.append(("Theta_12 = theta*eta^8*(eta^16 + 18*psi^4*eta^8 + 729*psi^8)", ok,
                "" if ok else "Theta_12 = %s times the product" % ratio + (" exactly" if t12 == prod * int(ratio) else "")))
    out.append(("Theta_12 = 6*theta*eta^8*(eta^16 + 18*psi^4*eta^8 + 729*psi^8)", t12 == 6 * prod, ""))
    F = f_series(depth)
    want = {0: Fraction(-1, 6), 3: 6, 6: 9, 9: 42, 12: 78}
    out.append(("F = -1/6 + 6q + 9q^2 + 42q^3 + 78q^4", all(F[t].lead()[0] == EisRat(v) for t, v in want.items()), ""))
    return out


def printed_chi44_component1_lead(u_power=5):
    """(2 + rho) c1 gam^-3 (X0 Y0' Z0' + X0' Y0 Z0' + X0' Y0' Z0) at q_v u^u_power, from the Taylor tables.

    X0 = X(xi u) and X0' = X'(xi u).  This is the printed leading term of
    component 1 of chi44, evaluated independently of the Fourier-Jacobi code.
    """
    from .ellcurve import tables
    from .qrho import pp_add, pp_coeff, pp_derive, pp_eval_scale, pp_mul

    n = u_power + 2
    T = tables(n + 2)
    f = {v: pp_eval_scale(T.series(v), XI, n) for v in "XYZ"}
    d = {v: pp_eval_scale(pp_derive(T.series(v)), XI, n) for v in "XYZ"}
    acc = None
    for a, b, c in ((f, d, d), (d, f, d), (d, d, f)):
        term = pp_mul(pp_mul(a["X"], b["Y"], n), c["Z"], n)
        acc = term if acc is None else pp_add(acc, term)
    r = pp_coeff(acc, u_power) * (RHO + 2)
    # u^k carries c1^(k + 2) from the two derivatives, times the outer c1
    return C(r, u_power + 3, -3)


# ------------------------------------------------------------ congruences


def congruence_violations(F, rule):
    """First cell breaking the rule, or None.  rule(i, m, t) -> bool."""
    for i, c in enumerate(F.components):
        for t, m, _ in c.cells():
            if not rule(i, m, t):
                return "component %d, q^(%d/3) u^%d" % (i, t, m)
    return None


def mod3_rule(F):
    j = F.j
    l = F.det_char

    def rule(i, m, t):
        return (m + j - i - l) % 3 == 0

    return rule


# ----------------------------------------------------------------- wedge


def wedge(forms):
    """Determinant of the 5x5 matrix whose columns are the components of five quartic forms."""
    n = len(forms)
    cols = [f.components for f in forms]

    @functools.lru_cache(maxsize=None)
    def minor(k, rows):
        # determinant of columns k.. against the row tuple
        if k == n:
            return None
        out = None
        for pos, i in enumerate(rows):
            rest = rows[:pos] + rows[pos + 1 :]
            sub = minor(k + 1, rest)
            term = cols[k][i] if sub is None else cols[k][i] * sub
            if pos % 2:
                term = -term
            out = term if out is None else out + term
        return out

    return minor(0, tuple(range(n)))


# ------------------------------------------------------------------ suites


# printed Taylor coefficients: (table, index) -> (integer, rho power, n) meaning integer*rho^k*c1^n/n!
PRINTED_TAYLOR = {
    ("c", 7): (6, 1), ("c", 13): (-6 ** 3, 2), ("c", 19): (-(2 ** 7) * 3 ** 4 * 5 * 23, 0),
    ("d", 3): (1, 2), ("d", 6): (-2, 1), ("d", 9): (-8, 0), ("d", 12): (-(2 ** 3) * 19, 2),
    ("d", 15): (2 ** 3 * 5 * 31, 1),
}

# printed blocks; S_n carries conj(xi) and the shifted variables
PRINTED_BLOCKS = {
    ("P", 1): (1, "6*X"), ("P", 3): (1, "18*X*Y*Z"), ("P", 4): (1, "12*X*Y^3 + 12*X*Z^3"),
    ("P", 7): (1, "-6*X*Y^6 + 96*X*Y^3*Z^3 - 6*X*Z^6"),
    ("P", 9): (1, "54*X*Y^7*Z - 54*X*Y^4*Z^4 + 54*X*Y*Z^7"),
    # printed with 2YZ^9 in the last term, which is not of degree 12
    ("P", 12): (1, "-72*X*Y^10*Z + 108*X*Y^7*Z^4 + 108*X*Y^4*Z^7 - 72*X*Y*Z^10"),
    ("P", 13): (1, "30*X*Y^12 - 42*X*Y^9*Z^3 + 180*X*Y^6*Z^6 - 42*X*Y^3*Z^9 + 30*X*Z^12"),
    ("S", 1): (XI.conj(), "3*Y"), ("S", 4): (XI.conj(), "6*Y^4 - 12*Y*Z^3"),
    ("S", 7): (XI.conj(), "-3*Y^7 - 42*Y^4*Z^3 + 42*Y*Z^6"),
    ("S", 13): (XI.conj(), "15*Y^13 - 39*Y^10*Z^3 + 117*Y^7*Z^6 - 156*Y^4*Z^9 + 78*Y*Z^12"),
}


def printed_taylor(table, n):
    k, e = PRINTED_TAYLOR[(table, n)]
    return C(EisRat(Fraction(k, factorial(n))) * RHO ** e, n)


def suite_taylor_blocks():
    rep = SuiteReport("taylor-blocks")
    tab = tables(20)
    for (name, n), _ in PRINTED_TAYLOR.items():
        got = tab.c[(n - 1) // 6] if name == "c" else tab.d[n // 3]
        want = printed_taylor(name, n)
        ok = got == want
        rep.add("%s_%d" % (name, n), ok, None if ok else "computed %s" % got, "printed %s" % want)
    for (kind, n), (pre, body) in PRINTED_BLOCKS.items():
        got = build_block(kind, n)
        want = parse_theta_poly(body, n) * C(pre)
        if kind == "S":
            want = EllipticPoly(n, want.terms, shifted=True)
        ok = got == want
        rep.add("%s_%d" % (kind, n), ok, None if ok else got.render(), want.render())
    for n, factor in ((4, Fraction(-1, 2)), (3, Fraction(1))):
        got = build_block("Q", n)
        want = build_block("P", n) * C(factor)
        rep.add("Q_%d = %s P_%d" % (n, factor, n), got == want, None if got == want else got.render())
    return rep


def suite_covariant_relations():
    rep = SuiteReport("covariant-relations")
    rels = {
        "J240^3, J360^2 relation": "5250*J240^3 + 26136*J360^2 + 1750*J140^3*J300 - 2625*J140^2*J200*J240",
        "same relation, rescaled": "3*J240^3 + 13068/875*J360^2 + J140^3*J300 - 3/2*J240*J140^2*J200",
        "weight-10 relation": "132*J011*J333 + 175*(J240*J104 - J140*J204)",
    }
    for cid, expr in rels.items():
        res = verify_identity(expr)
        rep.add(cid, bool(res), res.witness, "expands to exact zero" if res else "%d terms survive" % res.n_terms)
    return rep


def suite_nu_images(qtrunc=39, utrunc=16):
    rep = SuiteReport("nu-images")
    z = build_basic("zeta", qtrunc, utrunc)
    v = nu("J140", qtrunc, utrunc)
    ok, w, d = compare_vectors(v, z.scale(C(Fraction(3, 70), 4, 0)))
    rep.add("nu(J140) = (3 c1^4/70) zeta", ok, w, d)
    disc = nu("32*(J200^3 - 6*J300^2)", qtrunc, utrunc)
    const = fjcore.one_series(disc.qtrunc, disc.utrunc).scale(C(-RHO / 27, 12, -12))
    ok, w, d = compare_series(disc.components[0], const)
    rep.add("nu(32(J200^3 - 6 J300^2)) = -rho c1^12/(27 gam^12)", ok, w, d)
    e11 = build_basic("E11", qtrunc, utrunc)
    ok, w, d = compare_vectors(nu("J011", qtrunc, utrunc), e11)
    rep.add("nu(J011) = E11", ok, w, d)
    chi = build_basic("chi44", qtrunc, utrunc)
    ok, w, d = compare_vectors(nu("J104*J140", qtrunc, utrunc).scale(C(Fraction(4900, 3), -4, 0)), chi)
    rep.add("chi44 = 4900/(3 c1^4) nu(J104 J140)", ok, w, d)
    for name, want in CATALOG_METADATA.items():
        F = catalog(name, 9, 8)
        got = (tuple(F.weight), F.det_char, F.s4_sign)
        rep.add("%s weight, det_char, s4_sign" % name, got == want, None if got == want else str(got), str(want))
    for name in ("E6", "E9"):
        f = catalog(name, qtrunc, utrunc).components[0]
        lead = f.first_cell()
        good = lead is not None and lead[:2] == (0, 0) and lead[2] == CoeffScalar(1)
        rep.add("%s has constant term 1" % name, good, None if good else str(lead), "leading cell %s" % (lead[2] if lead else None))
    return rep


def suite_relation18(qtrunc=39, utrunc=12):
    rep = SuiteReport("relation18")
    e6 = catalog("E6", qtrunc, utrunc)
    e9 = catalog("E9", qtrunc, utrunc)
    c18 = catalog("chi18", qtrunc, utrunc)
    res = (e6 * e6 * e6 - e9 * e9 - c18.scale(3888)).components[0]
    if res.is_zero():
        rep.add("E6^3 - E9^2 - 3888 chi18 = 0", True, None, _depth(res))
    else:
        t, m, c = res.first_cell()
        rep.add("E6^3 - E9^2 - 3888 chi18 = 0", False, "q^(%d/3) u^%d: %s" % (t, m, c), "residual nonzero")
    return rep


def suite_orders_table(qtrunc=12, utrunc=16):
    rep = SuiteReport("orders-table")
    for deg, (v, orders) in generator_orders(qtrunc, utrunc).items():
        got = [o for o, _ in orders]
        want = ORDERS_TABLE[deg]
        j, k, l, e = WEIGHT_TABLE[deg]
        meta = (v.weight[0], v.weight[1], v.det_char, (1 - v.s4_sign) // 2)
        ok = got == want and meta == (j, k, l, e)
        rep.add(jname(deg), ok, None if ok else "orders %s weight %s" % (got, meta), "orders %s, (j,k,l,e) = %s" % (got, meta))
    for name, want in (("chi44", [4, 5, 0, 1, 2]), ("E11", [0, 1]), ("chi4m2", [3, 4, -1, 0, 1])):
        got = [o for o, _ in orders_T1(build_basic(name, qtrunc, utrunc))]
        rep.add(name, got == want, None if got == want else str(got), "orders %s" % got)
    return rep


def suite_restrictions(qtrunc=90, utrunc=9):
    rep = SuiteReport("restrictions")
    for cid, ok, detail in level3_identities():
        rep.add(cid, ok, None, detail)
    forms = {name: build_basic(name, qtrunc, utrunc) for name in ("zeta", "E11", "chi44")}
    for (name, i, m), want in expected_restrictions().items():
        rows = restrict_T1(forms[name], components=[i], start=m, u_depth=1)
        got = rows[0].decomposition
        ok = got is not None and got == want
        detail = want.render()
        if not ok and got is not None and got.weight == want.weight and got.scale == want.scale:
            ratios = {got.coeffs.get(k, EisRat(0)) / c for k, c in want.coeffs.items()}
            if len(ratios) == 1 and set(got.coeffs) == set(want.coeffs):
                detail = "proportional to the printed row with measured constant %s" % ratios.pop().pretty()
        rep.add("%s component %d at u^%d" % (name, i, m), ok, None if ok else "got %s" % got.render(), detail)
    lead = forms["chi44"].components[1].cell(3, 5)
    want = printed_chi44_component1_lead(5)
    rep.add("chi44 component 1 at q_v u^5 equals the printed leading term", lead == want,
            None if lead == want else "%s vs %s" % (lead, want), "%s" % want)
    # u^0 rows and the lowest row of component 0 are modular
    for name, F in forms.items():
        for i, c in enumerate(F.components):
            ms = {0}
            if i == 0 and not c.is_zero():
                ms.add(c.uval())
            for m in sorted(ms):
                rows = restrict_T1(F, components=[i], start=m, u_depth=1)
                d = rows[0].decomposition
                ok = d is None or d.e2_degree == 0
                rep.add("%s component %d u^%d modular" % (name, i, m), ok, None if ok else d.render())
    return rep


def suite_congruences(qtrunc=36, utrunc=24, include_catalog=True):
    rep = SuiteReport("congruences")
    e11 = build_basic("E11", qtrunc, utrunc)
    rep.add("E11: u-exponent = component mod 6", congruence_violations(e11, lambda i, m, t: (m - i) % 6 == 0) is None)
    c42 = build_basic("chi4m2", qtrunc, utrunc)
    w = congruence_violations(c42, lambda i, m, t: (m - i - 3) % 6 == 0)
    rep.add("chi4m2: u-exponent = component + 3 mod 6", w is None, w)
    z = build_basic("zeta", qtrunc, utrunc)
    w = congruence_violations(z, lambda i, m, t: m % 6 == 1)
    rep.add("zeta: u-exponents = 1 mod 6", w is None, w)
    forms = [e11, z, build_basic("chi44", qtrunc, utrunc), c42]
    if include_catalog:
        forms += [catalog(n, min(qtrunc, 24), min(utrunc, 16)) for n in ("E6", "E9", "chi12", "E12", "chi18", "chi4_10")]
        forms += [nu(jname(d), 12, 12) for d in GENERATOR_DEGREES]
    for F in forms:
        w = congruence_violations(F, mod3_rule(F))
        rep.add("%s: u + j - i = l mod 3" % F.name, w is None, w)
        if F.name not in ("zeta",):
            rep.add("%s: integral q_v-exponents" % F.name, F.integral())
    return rep


def suite_sigma42(qtrunc=45, utrunc=56, rank_qtrunc=36, rank_utrunc=20):
    rep = SuiteReport("sigma42")
    chi = build_basic("chi44", qtrunc, utrunc)
    ok, w, d = check_display(chi.components[4], CHI44_DISPLAY, "chi44")
    rep.add("chi44 component 4 through q_v^14", ok, w, d)
    for name, disp in SIGMA42_DISPLAYS.items():
        f = catalog(name, 36, 46)
        ok, w, d = check_display(f.components[4], disp, name)
        rep.add("%s component 4 through q_v^11" % name, ok, w, d)

    # products of scalar and vector forms
    for (sc, vec), disp in PRODUCT_DISPLAYS.items():
        base, _, power = sc.partition("^")
        s = catalog(base, 36, 46)
        for _ in range(int(power or 1) - 1):
            s = s * catalog(base, 36, 46)
        v = catalog(vec, 36, 46)
        ok, w, d = check_display((s * v).components[4], disp, sc + vec)
        rep.add("%s*%s component 4 leading terms" % (sc, vec), ok, w, d)
    # rank checks on the last components
    qt, ut = rank_qtrunc, rank_utrunc
    E6, E9, E12 = (catalog(n, qt, ut) for n in ("E6", "E9", "E12"))
    x = {n: catalog(n, qt, ut) for n in ("chi44", "chi4_10", "chi4_16", "chi4_22", "chi4_28")}
    spans = {
        "S_{4,10}": [E6 * x["chi44"], x["chi4_10"]],
        "S_{4,16}": [E6 * E6 * x["chi44"], E12 * x["chi44"], E6 * x["chi4_10"], x["chi4_16"]],
        "S_{4,22}": [E6 * E6 * E6 * x["chi44"], E6 * E12 * x["chi44"], E9 * E9 * x["chi44"], E6 * E6 * x["chi4_10"],
                     E12 * x["chi4_10"], E6 * x["chi4_16"], x["chi4_22"]],
        "S_{4,28}": [E6 * E6 * E6 * E6 * x["chi44"], E6 * E6 * E12 * x["chi44"],
                     E6 * E9 * E9 * x["chi44"], E12 * E12 * x["chi44"], E6 * E6 * E6 * x["chi4_10"],
                     E6 * E12 * x["chi4_10"], E9 * E9 * x["chi4_10"], E6 * E6 * x["chi4_16"], E12 * x["chi4_16"],
                     E6 * x["chi4_22"], x["chi4_28"]],
    }
    for label, fs in spans.items():
        r = rank([f.components[4] for f in fs])
        rep.add("rank %s" % label, r == len(fs), None if r == len(fs) else "rank %d" % r, "rank %d of %d" % (r, len(fs)))
    return rep


def suite_wedge(qtrunc=39, utrunc=20):
    rep = SuiteReport("wedge")
    forms = [build_basic("chi44", qtrunc, utrunc)] + [catalog(n, qtrunc, utrunc) for n in ("chi4_10", "chi4_16", "chi4_22", "chi4_28")]
    det = wedge(forms)
    z = build_basic("zeta", det.qtrunc, det.utrunc + 12).components[0]
    e9 = catalog("E9", det.qtrunc, det.utrunc).components[0]
    rhs = (z ** 12) * e9 * e9
    rhs = rhs.scale(C(-RHO * RHO / 2, 10, -10))
    ok, w, d = compare_series(det, rhs)
    reach = (min(det.qtrunc, rhs.qtrunc) - 1) // 3
    rep.add("wedge = -(rho^2 c1^10 / 2 gam^10) zeta^12 E9^2", ok, w, "%s; through q_v^%d" % (d, reach))
    return rep


WEIGHT36_MONOMIALS = (
    ("E6^6", (6, 0, 0)), ("E6^4*E12", (4, 1, 0)), ("E6^2*E12^2", (2, 2, 0)), ("E12^3", (0, 3, 0)),
    ("E6^3*E9^2", (3, 0, 2)), ("E6*E12*E9^2", (1, 1, 2)), ("E9^4", (0, 0, 4)),
)


def zeta6_relation(qtrunc=24, utrunc=14):
    """Coefficients x with rho 2^16 3^12 zeta^6 = sum x_i M_i over the weight-36 monomials in E6, E12, E9.

    Solved by exact linear algebra on the common truncation; raises
    InconsistentSystem if no such combination exists there.
    """
    E = {n: catalog(n, qtrunc, utrunc).components[0] for n in ("E6", "E12", "E9")}
    cols = []
    for _, (a, b, c) in WEIGHT36_MONOMIALS:
        cols.append(E["E6"] ** a * E["E12"] ** b * E["E9"] ** c if a else E["E12"] ** b * E["E9"] ** c)
    qt = min(x.qtrunc for x in cols)
    ut = min(x.utrunc for x in cols)
    z = build_basic("zeta", qtrunc, utrunc).components[0]
    target = (z ** 6).truncate(qt, ut).scale(C(RHO * 2 ** 16 * 3 ** 12))

    def cells(x):
        e, g = x.grading if x.grading is not None else (0, 0)
        return {(t, m, m + e, g): r for t, m, r in x.cells()}

    cmaps = [cells(x) for x in cols]
    tmap = cells(target)
    keys = sorted(set(tmap).union(*cmaps))
    rows = [[cm.get(k, EisRat(0)) for cm in cmaps] for k in keys]
    sol, _ = solve_qrho(rows, [tmap.get(k, EisRat(0)) for k in keys])
    return {name: x for (name, _), x in zip(WEIGHT36_MONOMIALS, sol)}, qt, ut


def suite_zeta6_relation(qtrunc=24, utrunc=14):
    """Exploratory: solve for zeta^6 in the weight-36 monomials and confirm the solution one level deeper."""
    rep = SuiteReport("zeta6-relation")
    try:
        sol, qt, ut = zeta6_relation(qtrunc, utrunc)
    except InconsistentSystem:
        rep.add("rho 2^16 3^12 zeta^6 in C[E6, E12, E9^2]", False, "no combination", "below %s" % qv_label(qtrunc))
        return rep
    text = " + ".join(n if v == EisRat(1) else "%s*%s" % (v.pretty(), n) for n, v in sol.items() if v)
    text = text.replace("+ -", "- ")
    rep.add("rho 2^16 3^12 zeta^6 in C[E6, E12, E9^2]", True, None, "= " + text)
    deeper, _, _ = zeta6_relation(qtrunc + 9, utrunc + 6)
    rep.add("same coefficients at greater depth", deeper == sol, None if deeper == sol else str(deeper),
            "below %s, u^%d" % (qv_label(qtrunc + 9), utrunc + 6))
    return rep


SUITES = {
    "taylor-blocks": suite_taylor_blocks,
    "covariant-relations": suite_covariant_relations,
    "nu-images": suite_nu_images,
    "relation18": suite_relation18,
    "orders-table": suite_orders_table,
    "restrictions": suite_restrictions,
    "congruences": suite_congruences,
    "sigma42": suite_sigma42,
    "wedge": suite_wedge,
    "zeta6-relation": suite_zeta6_relation,
}


def run_suite(name, **depths):
    if name not in SUITES:
        raise KeyError("unknown suite %r (known: %s)" % (name, ", ".join(SUITES)))
    return SUITES[name](**depths)
