"""
Covariants of a binary quartic f and a binary linear form h.

A binary form of degree n is a list [f_0, ..., f_n], f_i the coefficient of
x1^(n-i) x2^i.  Coefficients may live in any commutative ring whose elements
support +, -, * and multiplication by Fractions, so the same transvectant code
serves polynomial identities here and Fourier-Jacobi substitution in fjcore.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial

from flint import fmpq, fmpq_mpoly_ctx

VARS = ("a0", "a1", "a2", "a3", "a4", "b0", "b1", "l0", "l1", "x1", "x2")
CTX = fmpq_mpoly_ctx.get(VARS, "lex")
_G = CTX.gens()
A = _G[0:5]
B = _G[5:7]
L0, L1, X1, X2 = _G[7:11]


def _ff(n, k):
    r = 1
    for i in range(k):
        r *= n - i
    return r


def _scale(x, c):
    if isinstance(c, Fraction):
        if hasattr(x, "context"):
            return x * fmpq(c.numerator, c.denominator)
        return x * c
    return x * c


class BinaryForm:
    """Coefficient list in the basis x1^(n-i) x2^i."""

    def __init__(self, coeffs, zero=None):
        self.coeffs = list(coeffs)
        self.zero = zero if zero is not None else self.coeffs[0] * 0

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.zero)

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        return BinaryForm([a - b for a, b in zip(self.coeffs, other.coeffs)], self.zero)

    def __neg__(self):
        return BinaryForm([-a for a in self.coeffs], self.zero)

    def scale(self, c):
        return BinaryForm([_scale(a, Fraction(c)) for a in self.coeffs], self.zero)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        out = [None] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return BinaryForm(out, self.zero)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, e):
        out = None
        for _ in range(e):
            out = self if out is None else out * self
        if out is None:
            return BinaryForm([self.zero + 1], self.zero)
        return out

    def __repr__(self):
        return "BinaryForm(%r)" % (self.coeffs,)


def transvectant(f, g, k):
    """(f, g)_k with prefactor (m-k)!(n-k)!/(m! n!)."""
    m, n = f.degree, g.degree
    if k < 0 or k > min(m, n):
        raise ValueError("transvectant order %d exceeds min degree %d" % (k, min(m, n)))
    pref = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    out = [None] * (m + n - 2 * k + 1)
    for j in range(k + 1):
        s = (-1) ** j * comb(k, j)
        # d^k f / dx1^(k-j) dx2^j  and  d^k g / dx1^j dx2^(k-j)
        for i in range(j, m + 1):
            cf = _ff(m - i, k - j) * _ff(i, j)
            if cf == 0:
                continue
            for i2 in range(k - j, n + 1):
                cg = _ff(n - i2, j) * _ff(i2, k - j)
                if cg == 0:
                    continue
                e = (i - j) + (i2 - k + j)
                t = _scale(f.coeffs[i] * g.coeffs[i2], pref * s * cf * cg)
                out[e] = t if out[e] is None else out[e] + t
    zero = f.zero
    return BinaryForm([zero if c is None else c for c in out], zero)


# --------------------------------------------------------------- generators

UNIVERSAL_F = BinaryForm(list(A), CTX.constant(0))
UNIVERSAL_H = BinaryForm(list(B), CTX.constant(0))
UNIVERSAL_L = BinaryForm([L0, L1], CTX.constant(0))

# I_{d,i}  ->  (a, b, c) of the covariant obtained by l0 = -x2, l1 = x1
GENERATOR_TABLE = {
    "I21": (2, 0, 0), "I22": (0, 1, 1), "I31": (3, 0, 0),
    "I51": (1, 4, 0), "I52": (1, 3, 1), "I53": (1, 2, 2), "I54": (1, 1, 3), "I55": (1, 0, 4),
    "I61": (2, 4, 0), "I62": (2, 3, 1), "I63": (2, 2, 2), "I64": (2, 1, 3), "I65": (2, 0, 4),
    "I91": (3, 6, 0), "I92": (3, 5, 1), "I93": (3, 4, 2), "I94": (3, 3, 3),
    "I95": (3, 2, 4), "I96": (3, 1, 5), "I97": (3, 0, 6),
}
J_TO_I = {v: k for k, v in GENERATOR_TABLE.items()}
GENERATOR_DEGREES = sorted(GENERATOR_TABLE.values(), key=lambda t: (t[0] + t[1], t))

# Scalars relating the raw transvectant invariants to the generators J.  Every
# generator built as an outer k-th transvectant against h^b l^c is divided by
# binomial(2k, k): 1/70 for the (.., h^b l^c)_4 families and 1/924 for the
# (.., h^b l^c)_6 family.  J200, J300 and J011 are left raw.
def _default_normalization():
    out = {}
    for name, deg in GENERATOR_TABLE.items():
        if name[1] in "56":
            out[deg] = Fraction(1, comb(8, 4))
        elif name[1] == "9":
            out[deg] = Fraction(1, comb(12, 6))
        else:
            out[deg] = Fraction(1)
    return out


NORMALIZATION = _default_normalization()


def set_normalization(table):
    NORMALIZATION.update({k: Fraction(v) for k, v in table.items()})
    _GEN_CACHE.clear()


def reset_normalization():
    set_normalization(_default_normalization())


def jname(deg):
    return "J%d%d%d" % deg


def parse_jname(name):
    name = name.strip()
    if name in GENERATOR_TABLE:
        return GENERATOR_TABLE[name]
    if len(name) == 4 and name[0] == "J" and name[1:].isdigit():
        deg = tuple(int(ch) for ch in name[1:])
        if deg in J_TO_I:
            return deg
    if name.startswith("J_{") or name.startswith("J{"):
        body = name[name.index("{") + 1 : name.rindex("}")]
        deg = tuple(int(s) for s in body.split(","))
        if deg in J_TO_I:
            return deg
    raise KeyError("unknown generator %r" % name)


def raw_invariant(deg, f, h, l):
    """The invariant I_{d,i} of (f, h, l) before the substitution for l."""
    a, b, c = deg
    if deg == (2, 0, 0):
        return transvectant(f, f, 4)
    if deg == (3, 0, 0):
        return transvectant(f, transvectant(f, f, 2), 4)
    if deg == (0, 1, 1):
        return transvectant(h, l, 1)
    g = h ** b * l ** c if b and c else (h ** b if b else l ** c)
    if a == 1:
        return transvectant(f, g, 4)
    if a == 2:
        return transvectant(transvectant(f, f, 2), g, 4)
    if a == 3:
        T = transvectant(f, transvectant(f, f, 2), 1)
        return transvectant(T, g, 6)
    raise KeyError(deg)


def covariant_form(deg, f, h):
    """J_{a,b,c}(f, h) as a binary form of degree c in x.

    Pairing against l^c and then setting l = (-x2, x1) turns the order-(b+c)
    transvectant into the order-b transvectant with h^b; that shortcut is what
    runs on series coefficients, the polynomial path below goes the long way.
    """
    a, b, c = deg
    lam = NORMALIZATION[deg]
    if deg == (2, 0, 0):
        out = transvectant(f, f, 4)
    elif deg == (3, 0, 0):
        out = transvectant(f, transvectant(f, f, 2), 4)
    elif deg == (0, 1, 1):
        out = h
    else:
        hb = h ** b if b else None
        if a == 1:
            base = f
        elif a == 2:
            base = transvectant(f, f, 2)
        else:
            base = transvectant(f, transvectant(f, f, 2), 1)
        out = transvectant(base, hb, b) if hb is not None else base
    return out.scale(lam) if lam != 1 else out


class Covariant:
    def __init__(self, form, tri_degree, name=None):
        self.form = form
        self.tri_degree = tri_degree
        self.name = name

    @property
    def poly(self):
        """the covariant as one polynomial in a, b, x."""
        c = self.tri_degree[2]
        out = CTX.constant(0)
        for i, co in enumerate(self.form.coeffs):
            out += co * X1 ** (c - i) * X2 ** i
        return out

    def __repr__(self):
        return "Covariant(%s, %s)" % (self.name, self.tri_degree)


def _substitute_l(p):
    # l0 = -x2, l1 = x1
    return p.compose(*_G[:7], -X2, X1, X1, X2)


def _as_form(p, c):
    """polynomial homogeneous of degree c in x -> BinaryForm over a, b."""
    coeffs = [CTX.constant(0) for _ in range(c + 1)]
    ix1, ix2 = VARS.index("x1"), VARS.index("x2")
    for mon, co in zip(p.monoms(), p.coeffs()):
        e1, e2 = mon[ix1], mon[ix2]
        if e1 + e2 != c:
            raise ValueError("covariant not homogeneous in x")
        rest = list(mon)
        rest[ix1] = rest[ix2] = 0
        coeffs[e2] += CTX.from_dict({tuple(rest): co})
    return BinaryForm(coeffs, CTX.constant(0))


_GEN_CACHE = {}


def build_generator(name):
    """Covariant J_{a,b,c} from the invariant I_{d,i} via l0 = -x2, l1 = x1."""
    if isinstance(name, tuple):
        deg = name
    else:
        deg = parse_jname(name)
    key = (deg, NORMALIZATION[deg])
    if key not in _GEN_CACHE:
        inv = raw_invariant(deg, UNIVERSAL_F, UNIVERSAL_H, UNIVERSAL_L)
        assert inv.degree == 0
        p = _substitute_l(inv.coeffs[0])
        lam = NORMALIZATION[deg]
        if lam != 1:
            p = p * fmpq(lam.numerator, lam.denominator)
        _GEN_CACHE[key] = Covariant(_as_form(p, deg[2]), deg, jname(deg))
    return _GEN_CACHE[key]


def tri_degree_of(p):
    """(a, b, c) if p is tri-homogeneous, else None."""
    degs = set()
    for mon in p.monoms():
        degs.add((sum(mon[0:5]), sum(mon[5:7]), mon[9] + mon[10]))
    if len(degs) == 1:
        return degs.pop()
    return None


def expand_expression(expr):
    """Expand a parsed expression into one polynomial in a, b, x."""
    from .exprparse import evaluate

    return evaluate(expr, lambda deg: build_generator(deg).poly, lambda q: CTX.constant(fmpq(q.numerator, q.denominator)))


class IdentityResult:
    def __init__(self, zero, witness=None, n_terms=0):
        self.zero = zero
        self.witness = witness
        self.n_terms = n_terms

    def __bool__(self):
        return self.zero

    def __repr__(self):
        if self.zero:
            return "IdentityResult(zero)"
        return "IdentityResult(nonzero, witness=%s, terms=%d)" % (self.witness, self.n_terms)


def verify_identity(expr):
    """Expand fully and report exact zero or a nonzero witness monomial."""
    if isinstance(expr, str):
        from .exprparse import parse_expr

        expr = parse_expr(expr)
    p = expand_expression(expr) if not hasattr(expr, "monoms") else expr
    if p.is_zero():
        return IdentityResult(True)
    mons = list(p.monoms())
    coeffs = list(p.coeffs())
    k = min(range(len(mons)), key=lambda i: mons[i])
    pieces = ["%s^%d" % (v, e) if e > 1 else v for v, e in zip(VARS, mons[k]) if e]
    witness = "%s*%s" % (coeffs[k], "*".join(pieces) or "1")
    return IdentityResult(False, witness, len(mons))


# -------------------------------------------------------------- evaluation


def _eval_poly(p, f4, f1):
    vals = [fmpq(Fraction(v).numerator, Fraction(v).denominator) for v in list(f4) + list(f1)]
    ctx2 = fmpq_mpoly_ctx.get(("x1", "x2"), "lex")
    y1, y2 = ctx2.gens()
    args = [ctx2.constant(v) for v in vals] + [ctx2.constant(0), ctx2.constant(0), y1, y2]
    return p.compose(*args, ctx=ctx2)


def eval_covariant(cov, f4, f1):
    """Substitute numeric a_i, b_i; return {x2-exponent i: coefficient of x1^(c-i) x2^i}."""
    if isinstance(cov, str):
        cov = build_generator(cov)
    c = cov.tri_degree[2]
    q = _eval_poly(cov.poly, f4, f1)
    out = {}
    for mon, co in zip(q.monoms(), q.coeffs()):
        out[mon[1]] = Fraction(int(co.p), int(co.q))
    return {i: out.get(i, Fraction(0)) for i in range(c + 1)}


def eval_expression(expr, f4, f1):
    """Evaluate a homogeneous covariant expression at numeric forms; same layout as eval_covariant."""
    from .exprparse import parse_expr, tri_degree

    node = parse_expr(expr, homogeneous=True) if isinstance(expr, str) else expr
    deg = tri_degree(node) or (0, 0, 0)
    return eval_covariant(Covariant(_as_form(expand_expression(node), deg[2]), deg), f4, f1)


def discriminant_quartic(f4):
    """32 (J200^3 - 6 J300^2) at numeric a_i."""
    j2 = eval_covariant(build_generator((2, 0, 0)), f4, (0, 0))[0]
    j3 = eval_covariant(build_generator((3, 0, 0)), f4, (0, 0))[0]
    l2 = NORMALIZATION[(2, 0, 0)]
    l3 = NORMALIZATION[(3, 0, 0)]
    return 32 * ((j2 / l2) ** 3 - 6 * (j3 / l3) ** 2)


def sylvester_discriminant(f4):
    """Resultant of f(x, 1) and f'(x, 1) by the Sylvester determinant (oracle)."""
    from flint import fmpq_mat

    a = [Fraction(v) for v in f4]
    # f(x,1) = a0 x^4 + a1 x^3 + a2 x^2 + a3 x + a4
    p = a
    dp = [4 * a[0], 3 * a[1], 2 * a[2], a[3]]
    m, n = 4, 3
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + p + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + dp + [Fraction(0)] * (size - n - 1 - i))
    M = fmpq_mat(size, size, [fmpq(v.numerator, v.denominator) for r in rows for v in r])
    d = M.det()
    return Fraction(int(d.p), int(d.q))


def act(g, f4, f1):
    """Substitute (x1, x2) -> (x1, x2) g^T into the forms: (g.f)(x) = f(g^{-1} x) convention-free helper."""
    (p, q), (r, s) = g
    ctx2 = fmpq_mpoly_ctx.get(("x1", "x2"), "lex")
    y1, y2 = ctx2.gens()
    nx1 = y1 * int(p) + y2 * int(q)
    nx2 = y1 * int(r) + y2 * int(s)

    def transform(coeffs):
        n = len(coeffs) - 1
        out = ctx2.constant(0)
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            out += nx1 ** (n - i) * nx2 ** i * fmpq(c.numerator, c.denominator)
        res = [Fraction(0)] * (n + 1)
        for mon, co in zip(out.monoms(), out.coeffs()):
            res[mon[1]] += Fraction(int(co.p), int(co.q))
        return res

    return transform(f4), transform(f1)


def random_unimodular(rng, size=3):
    while True:
        p, q, r, s = (rng.randint(-size, size) for _ in range(4))
        if p * s - q * r == 1:
            return ((p, q), (r, s))
