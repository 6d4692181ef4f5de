"""
S4 characters, Molien series for Sym^k(s[2,1,1]), and the Hilbert series
bookkeeping for vector-valued cusp forms of weight (4, 6k-2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from flint import fmpq_poly

# classes: identity, transpositions, double transpositions, 3-cycles, 4-cycles
CLASS_NAMES = ("1", "(12)", "(12)(34)", "(123)", "(1234)")
CLASS_SIZES = (1, 6, 3, 8, 6)
ORDER = 24


@dataclass(frozen=True)
class S4Character:
    name: str
    values: tuple

    @property
    def dim(self):
        return self.values[0]

    def inner(self, other):
        # all S4 characters are real
        s = sum(n * a * b for n, a, b in zip(CLASS_SIZES, self.values, other.values))
        return Fraction(s, ORDER)

    def __mul__(self, other):
        return S4Character("%s*%s" % (self.name, other.name), tuple(a * b for a, b in zip(self.values, other.values)))


IRREPS = {
    "s[4]": S4Character("s[4]", (1, 1, 1, 1, 1)),
    "s[3,1]": S4Character("s[3,1]", (3, 1, -1, 0, -1)),
    "s[2,2]": S4Character("s[2,2]", (2, 0, 2, -1, 0)),
    "s[2,1,1]": S4Character("s[2,1,1]", (3, -1, -1, 0, 1)),
    "s[1,1,1,1]": S4Character("s[1,1,1,1]", (1, -1, 1, 1, -1)),
}
IRREP_ORDER = tuple(IRREPS)
LETTERS = dict(zip(IRREP_ORDER, "abcde"))

T = fmpq_poly([0, 1])
ONE = fmpq_poly([1])

# det(1 - t g) on s[2,1,1], from its eigenvalues on each class:
# (1,1,1), (-1,-1,1), (1,-1,-1), (1,w,w^2), (-i,1,i)
CHAR_POLYS = (
    (ONE - T) ** 3,
    (ONE - T) * (ONE + T) ** 2,
    (ONE - T) * (ONE + T) ** 2,
    ONE - T ** 3,
    (ONE - T) * (ONE + T ** 2),
)

MOLIEN_DENOMINATOR = (ONE - T) * (ONE - T ** 2) * (ONE - T ** 3) * (ONE - T ** 4)

PRINTED_NUMERATORS = {
    "s[4]": (ONE - T) * (ONE - T ** 3 + T ** 6),
    "s[3,1]": T ** 2 * (ONE - T ** 3),
    "s[2,2]": (ONE - T) * T ** 2 * (ONE + T ** 2),
    "s[2,1,1]": (T - T ** 2 + T ** 3) * (ONE - T ** 3),
    "s[1,1,1,1]": T ** 3 * (ONE - T),
}


def _exact_div(p, q):
    quo, rem = divmod(p, q)
    if rem != 0:
        raise ArithmeticError("%s is not divisible by %s" % (p, q))
    return quo


def molien_numerator(irrep):
    """N with sum_k mult(irrep, Sym^k s[2,1,1]) t^k = N / ((1-t)(1-t^2)(1-t^3)(1-t^4))."""
    chi = IRREPS[irrep]
    acc = fmpq_poly([])
    for size, val, cp in zip(CLASS_SIZES, chi.values, CHAR_POLYS):
        if val:
            acc += _exact_div(MOLIEN_DENOMINATOR, cp) * (size * val)
    return acc / ORDER


def series(num, den, depth):
    """Coefficients of num/den below t^depth."""
    inv = den.inv_series_trunc(depth) if hasattr(den, "inv_series_trunc") else _inv(den, depth)
    p = num.mul_low(inv, depth)
    return [Fraction(int(p[i].p), int(p[i].q)) for i in range(depth)]


def _inv(den, n):
    c0 = den[0]
    out = [Fraction(0)] * n
    d = [Fraction(int(den[i].p), int(den[i].q)) for i in range(den.length())]
    out[0] = 1 / Fraction(int(c0.p), int(c0.q))
    for k in range(1, n):
        s = sum(d[j] * out[k - j] for j in range(1, min(k, len(d) - 1) + 1))
        out[k] = -s * out[0]
    from .qrho import fq

    return fmpq_poly([fq(x) for x in out])


def sym_multiplicity_series(irrep, depth):
    return series(molien_numerator(irrep), MOLIEN_DENOMINATOR, depth)


def sym_multiplicity_direct(irrep, k):
    """<chi, Sym^k> through the characters of Sym^k on each class (independent of the Molien sum)."""
    chi = IRREPS[irrep]
    eig = ((1, 1, 1), (-1, -1, 1), (1, -1, -1), ("w0", "w1", "w2"), ("-i", "1", "i"))
    vals = []
    for e in eig:
        vals.append(_sym_trace(e, k))
    s = sum(n * a * b for n, a, b in zip(CLASS_SIZES, chi.values, vals))
    return Fraction(s, ORDER)


def _sym_trace(eigs, k):
    """complete homogeneous symmetric polynomial h_k at the eigenvalues (exact, all real at the end)."""
    import cmath

    z = []
    for e in eigs:
        if e == "w0":
            z.append(1)
        elif e == "w1":
            z.append(cmath.exp(2j * cmath.pi / 3))
        elif e == "w2":
            z.append(cmath.exp(-2j * cmath.pi / 3))
        elif e == "-i":
            z.append(-1j)
        elif e == "i":
            z.append(1j)
        elif e == "1":
            z.append(1)
        else:
            z.append(e)
    tot = 0
    for a in range(k + 1):
        for b in range(k + 1 - a):
            tot += z[0] ** a * z[1] ** b * z[2] ** (k - a - b)
    val = round(tot.real) if isinstance(tot, complex) else tot
    return int(val)


# ------------------------------------------------------------- Hilbert series


@dataclass
class HilbertSeries:
    target: str
    numerator: fmpq_poly
    denominator: fmpq_poly
    coefficients: list  # dimension of weight k at index k
    routes: dict  # route name -> coefficient list
    agree: bool

    def nonzero_terms(self):
        return [(k, int(c)) for k, c in enumerate(self.coefficients) if c]

    def render(self, limit=None):
        terms = self.nonzero_terms()[:limit]
        return " + ".join(("t^%d" % k) if c == 1 else "%d*t^%d" % (c, k) for k, c in terms) + " + ..."


def poly_text(p):
    """ascending, in t: '1 - t + t^3'."""
    out = ""
    for k in range(p.degree() + 1):
        c = Fraction(int(p[k].p), int(p[k].q))
        if not c:
            continue
        mon = "" if k == 0 else ("t" if k == 1 else "t^%d" % k)
        mag = abs(c)
        body = str(mag) if (not mon or mag != 1) else ""
        body = body + ("*" if body and mon else "") + mon
        out += ("-" if c < 0 else "") + body if not out else (" - " if c < 0 else " + ") + body
    return out or "0"


def _poly(exps):
    p = fmpq_poly([])
    for e, c in exps:
        p += c * T ** e
    return p


SIGMA42_NUM = _poly([(4, 1), (10, 1), (16, 1), (22, 1), (28, 1)])
SCALAR_DEN = (ONE - T ** 6) * (ONE - T ** 12) * (ONE - T ** 18)
SCALAR_CUSP_NUM = _poly([(12, 1), (18, 1), (30, -1)])
BRACKET_NUM = _poly([(4, 1), (7, 6), (10, -2)])
BRACKET_DEN = (ONE - T ** 3) ** 3


def _at(lst, i):
    return lst[i] if 0 <= i < len(lst) else 0


def sigma42_from_isotypic(depth):
    """dim S_{4,6k-2}(Gamma, det^2) = a_{2k-2} + b_{2k-3} + d_{2k-3} - c_{2k-4}, placed at t^(6k-2)."""
    n = depth // 3 + 2
    a, b, c, d = (sym_multiplicity_series(r, n) for r in ("s[4]", "s[3,1]", "s[2,2]", "s[2,1,1]"))
    out = [Fraction(0)] * depth
    k = 1
    while 6 * k - 2 < depth:
        out[6 * k - 2] = _at(a, 2 * k - 2) + _at(b, 2 * k - 3) + _at(d, 2 * k - 3) - _at(c, 2 * k - 4)
        k += 1
    return out


def bracket_from_formula(depth):
    """k(5k+1)/2 - 2 at t^(1+3k) for k >= 1; zero at t^1."""
    out = [Fraction(0)] * depth
    k = 1
    while 1 + 3 * k < depth:
        out[1 + 3 * k] = Fraction(k * (5 * k + 1), 2) - 2
        k += 1
    return out


def bracket_from_module(depth):
    """Free M(Gamma[sqrt-3])-module: s[4] in weight 4, s[3,1] + s[2,1,1] in weight 7, relation s[2,2] in weight 10."""
    out = [Fraction(0)] * depth
    for w, mult in ((4, 1), (7, 3 + 3), (10, -2)):
        j = 0
        while w + 3 * j < depth:
            out[w + 3 * j] += mult * comb(j + 2, 2)
            j += 1
    return out


def scalar_cusp_from_ring(depth):
    """dim M_k(Gamma) - 1 for 0 < k = 0 mod 6, with M(Gamma) = C[E6, E12, E9^2]."""
    m = series(ONE, SCALAR_DEN, depth)
    return [(c - 1) if (k and k % 6 == 0) else 0 for k, c in enumerate(m)]


def hilbert_series(target, depth=40):
    if target == "sigma42":
        closed = series(SIGMA42_NUM, SCALAR_DEN, depth)
        routes = {"closed form": closed, "isotypic": sigma42_from_isotypic(depth)}
        return HilbertSeries(target, SIGMA42_NUM, SCALAR_DEN, closed, routes, _agree(routes))
    if target == "scalar_cusp":
        closed = series(SCALAR_CUSP_NUM, SCALAR_DEN, depth)
        routes = {"closed form": closed, "ring": scalar_cusp_from_ring(depth)}
        return HilbertSeries(target, SCALAR_CUSP_NUM, SCALAR_DEN, closed, routes, _agree(routes))
    if target == "gamma_bracket_dims":
        closed = series(BRACKET_NUM, BRACKET_DEN, depth)
        routes = {"closed form": closed, "formula": bracket_from_formula(depth), "module": bracket_from_module(depth)}
        return HilbertSeries(target, BRACKET_NUM, BRACKET_DEN, closed, routes, _agree(routes))
    raise KeyError("unknown target %r (known: sigma42, scalar_cusp, gamma_bracket_dims)" % target)


TARGETS = ("sigma42", "scalar_cusp", "gamma_bracket_dims")


def _agree(routes):
    vals = list(routes.values())
    return all(v == vals[0] for v in vals[1:])
