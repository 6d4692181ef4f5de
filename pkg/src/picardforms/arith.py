"""
Exact scalars and truncated series over Q(rho), rho a primitive cube root of unity.

EisRat         a + b*rho with rational a, b
CoeffScalar    Laurent polynomial in the formal constants c1 and gam with EisRat coefficients
ULaurent       truncated Laurent series in the ball coordinate u
ThirdsQSeries  q-series indexed by thirds of integers (t stands for q^(t/3))
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def _q(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class EisRat:
    """re + rh*rho, reduced with rho^2 = -1 - rho."""

    __slots__ = ("re", "rh")

    def __init__(self, re=0, rh=0):
        self.re = _q(re)
        self.rh = _q(rh)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, EisRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError("cannot coerce %r to EisRat" % (x,))

    def __add__(self, other):
        try:
            o = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return EisRat(self.re + o.re, self.rh + o.rh)

    __radd__ = __add__

    def __neg__(self):
        return EisRat(-self.re, -self.rh)

    def __sub__(self, other):
        try:
            o = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return EisRat(self.re - o.re, self.rh - o.rh)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.rh, o.re, o.rh
        # (a + b r)(c + d r) = ac + (ad + bc) r + bd r^2,  r^2 = -1 - r
        bd = b * d
        return EisRat(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conj(self):
        # rho -> rho^2 = -1 - rho
        return EisRat(self.re - self.rh, -self.rh)

    def norm(self):
        a, b = self.re, self.rh
        return a * a - a * b + b * b

    def trace(self):
        return 2 * self.re - self.rh

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("EisRat zero has no inverse")
        c = self.conj()
        return EisRat(c.re / n, c.rh / n)

    def __truediv__(self, other):
        try:
            o = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return EisRat.coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = EisRat(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self):
        return self.re == 0 and self.rh == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.rh == o.rh

    def __hash__(self):
        if self.rh == 0:
            return hash(self.re)
        return hash((self.re, self.rh))

    def __complex__(self):
        # rho = (-1 + i sqrt3)/2
        return complex(float(self.re) - float(self.rh) / 2, float(self.rh) * 3 ** 0.5 / 2)

    def __repr__(self):
        return "EisRat(%s)" % self

    def __str__(self):
        return "%s + %s*rho" % (self.re, self.rh)

    def pretty(self):
        if self.rh == 0:
            return str(self.re)
        if self.re == 0:
            return "%s*rho" % self.rh
        return "(%s + %s*rho)" % (self.re, self.rh)


RHO = EisRat(0, 1)
RHO2 = EisRat(-1, -1)
SQRT_M3 = EisRat(1, 2)  # rho - rho^2 = 1 + 2 rho
XI = EisRat(Fraction(-2, 3), Fraction(-1, 3))  # (rho^2 - 1)/3
UNITS = [EisRat(1), -RHO2, RHO, EisRat(-1), RHO2, -RHO]  # exp(2 pi i k / 6), k = 0..5


def eis_norm_trace_conj(alpha):
    a = EisRat.coerce(alpha)
    return a.norm(), a.trace(), a.conj()


def enumerate_norm(n, mode="full"):
    """All a + b rho of norm n (full), or xi*{alpha : N(alpha)=n, alpha = 1 mod sqrt(-3)} (shifted).

    In shifted mode the returned elements have norm n/3.
    """
    if n < 0:
        return []
    if n == 0:
        return [EisRat(0)] if mode == "full" else []
    # a^2 - ab + b^2 = n  =>  |b| <= 2 sqrt(n/3)
    bmax = isqrt(4 * n // 3) + 1
    pts = []
    for b in range(-bmax, bmax + 1):
        # a^2 - b a + (b^2 - n) = 0
        disc = 4 * n - 3 * b * b
        if disc < 0:
            continue
        s = isqrt(disc)
        if s * s != disc:
            continue
        for a in {(b + s) // 2, (b - s) // 2} if (b + s) % 2 == 0 else ():
            pts.append((a, b))
    pts.sort()
    if mode == "full":
        return [EisRat(a, b) for a, b in pts]
    if mode != "shifted":
        raise ValueError("mode must be 'full' or 'shifted'")
    # alpha = a + b rho = 1 mod (1 - rho)  <=>  a + b = 1 mod 3
    return [XI * EisRat(a, b) for a, b in pts if (a + b) % 3 == 1]


class CoeffScalar:
    """Finite sum of r * c1^e1 * gam^e2 with r in Q(rho)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms is not None and not isinstance(terms, dict):
            terms = {(0, 0): terms}
        if terms:
            for k, v in terms.items():
                v = EisRat.coerce(v)
                if v:
                    out[(int(k[0]), int(k[1]))] = v
        self.terms = out

    @classmethod
    def monomial(cls, r, c1_exp=0, gam_exp=0):
        return cls({(c1_exp, gam_exp): r})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, CoeffScalar):
            return x
        return cls({(0, 0): EisRat.coerce(x)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def lead(self):
        """(r, e1, e2) for a monomial."""
        if len(self.terms) != 1:
            raise ValueError("not a single monomial")
        (e1, e2), r = next(iter(self.terms.items()))
        return r, e1, e2

    def __add__(self, other):
        try:
            o = CoeffScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return CoeffScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-CoeffScalar.coerce(other))

    def __rsub__(self, other):
        return CoeffScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = CoeffScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = {}
        for (a1, a2), x in self.terms.items():
            for (b1, b2), y in o.terms.items():
                k = (a1 + b1, a2 + b2)
                out[k] = out[k] + x * y if k in out else x * y
        return CoeffScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CoeffScalar.coerce(other)
        if len(o.terms) != 1:
            raise ZeroDivisionError("division only by a single nonzero monomial")
        r, e1, e2 = o.lead()
        inv = r.inverse()
        return CoeffScalar({(a1 - e1, a2 - e2): x * inv for (a1, a2), x in self.terms.items()})

    def __pow__(self, e):
        if e < 0:
            return CoeffScalar(1) / (self ** (-e))
        out = CoeffScalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = CoeffScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "CoeffScalar(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e1, e2), r in sorted(self.terms.items()):
            mon = []
            if e1:
                mon.append("c1^%d" % e1)
            if e2:
                mon.append("gam^%d" % e2)
            parts.append("*".join([r.pretty()] + mon))
        return " + ".join(parts)


C1 = CoeffScalar.monomial(1, 1, 0)
GAM = CoeffScalar.monomial(1, 0, 1)


class ULaurent:
    """sum_{m >= floor} coeffs[m - floor] u^m + O(u^trunc)."""

    __slots__ = ("floor", "coeffs", "trunc")

    def __init__(self, floor, coeffs, trunc):
        coeffs = [CoeffScalar.coerce(c) for c in coeffs]
        coeffs = coeffs[: max(0, trunc - floor)]
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        coeffs = coeffs[k:]
        floor += k
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            floor = trunc
        self.floor = floor
        self.coeffs = coeffs
        self.trunc = trunc

    @classmethod
    def from_dict(cls, d, trunc):
        if not d:
            return cls(trunc, [], trunc)
        lo = min(d)
        hi = max(d)
        return cls(lo, [d.get(m, CoeffScalar()) for m in range(lo, hi + 1)], trunc)

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        return self.floor if self.coeffs else None

    def __getitem__(self, m):
        if m >= self.trunc:
            raise IndexError("u^%d beyond truncation %d" % (m, self.trunc))
        k = m - self.floor
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CoeffScalar()

    def items(self):
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.floor + k, c

    def __add__(self, other):
        t = min(self.trunc, other.trunc)
        d = {}
        for m, c in self.items():
            d[m] = c
        for m, c in other.items():
            d[m] = d[m] + c if m in d else c
        return ULaurent.from_dict({m: c for m, c in d.items() if m < t}, t)

    def __neg__(self):
        return ULaurent(self.floor, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = CoeffScalar.coerce(s)
        return ULaurent(self.floor, [c * s for c in self.coeffs], self.trunc)

    def __mul__(self, other):
        if not isinstance(other, ULaurent):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            va = self.floor if self.coeffs else self.trunc
            vb = other.floor if other.coeffs else other.trunc
            t = min(self.trunc + vb, other.trunc + va)
            return ULaurent(t, [], t)
        t = min(self.trunc + other.floor, other.trunc + self.floor)
        lo = self.floor + other.floor
        out = [CoeffScalar() for _ in range(max(0, t - lo))]
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                if i + j < len(out):
                    out[i + j] = out[i + j] + x * y
        return ULaurent(lo, out, t)

    __rmul__ = scale

    def __truediv__(self, other):
        if not isinstance(other, ULaurent):
            return self.scale(CoeffScalar(1) / CoeffScalar.coerce(other))
        if other.is_zero():
            raise ZeroDivisionError("division by a series that vanishes to its truncation")
        lead = other.coeffs[0]
        if not lead.is_monomial():
            raise ZeroDivisionError("leading coefficient of divisor is not a single monomial")
        # relative precision of the quotient is the smaller of the two
        rel = min(self.trunc - (self.floor if self.coeffs else self.trunc), other.trunc - other.floor)
        if self.is_zero():
            t = self.trunc - other.floor
            return ULaurent(t, [], t)
        lo = self.floor - other.floor
        n = rel
        num = list(self.coeffs) + [CoeffScalar()] * max(0, n - len(self.coeffs))
        out = []
        for k in range(n):
            acc = num[k]
            for j in range(1, min(k, len(other.coeffs) - 1) + 1):
                acc = acc - other.coeffs[j] * out[k - j]
            out.append(acc / lead)
        return ULaurent(lo, out, lo + n)

    def derive(self):
        d = {m - 1: c * m for m, c in self.items() if m != 0}
        return ULaurent.from_dict(d, self.trunc - 1)

    def __eq__(self, other):
        if not isinstance(other, ULaurent):
            return NotImplemented
        return (self.trunc, self.floor, self.coeffs) == (other.trunc, other.floor, other.coeffs)

    def agrees_with(self, other):
        t = min(self.trunc, other.trunc)
        return all(self[m] == other[m] for m in range(min(self.floor, other.floor, t), t))

    def __repr__(self):
        body = " + ".join("(%s)*u^%d" % (c, m) for m, c in self.items())
        return "ULaurent(%s + O(u^%d))" % (body or "0", self.trunc)


def ul_arith(A, B, op):
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    if op == "div":
        return A / B
    if op == "derive":
        return A.derive()
    raise ValueError("unknown op %r" % op)


class ThirdsQSeries:
    """sum_t coeffs[t] q^(t/3) + O(q^(trunc/3))."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc):
        out = {}
        for t, c in coeffs.items():
            if t < 0:
                raise ValueError("negative q-exponent %d/3" % t)
            c = CoeffScalar.coerce(c)
            if c and t < trunc:
                out[int(t)] = c
        self.coeffs = out
        self.trunc = trunc

    def __getitem__(self, t):
        if t >= self.trunc:
            raise IndexError("q^(%d/3) beyond truncation" % t)
        return self.coeffs.get(t, CoeffScalar())

    def __add__(self, other):
        t = min(self.trunc, other.trunc)
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            d[k] = d[k] + v if k in d else v
        return ThirdsQSeries(d, t)

    def __neg__(self):
        return ThirdsQSeries({k: -v for k, v in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ThirdsQSeries):
            s = CoeffScalar.coerce(other)
            return ThirdsQSeries({k: v * s for k, v in self.coeffs.items()}, self.trunc)
        va = min(self.coeffs, default=self.trunc)
        vb = min(other.coeffs, default=other.trunc)
        t = min(self.trunc + vb, other.trunc + va)
        d = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                if i + j < t:
                    d[i + j] = d[i + j] + x * y if i + j in d else x * y
        return ThirdsQSeries(d, t)

    __rmul__ = __mul__

    def qderive(self):
        # q d/dq, with the gam factor that turns d/dtau into a q-derivative
        return ThirdsQSeries(
            {t: c * Fraction(t, 3) * GAM for t, c in self.coeffs.items() if t}, self.trunc
        )

    def integral_only(self):
        return all(t % 3 == 0 for t in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ThirdsQSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __repr__(self):
        body = " + ".join("(%s)*q^(%d/3)" % (self.coeffs[t], t) for t in sorted(self.coeffs))
        return "ThirdsQSeries(%s + O(q^(%d/3)))" % (body or "0", self.trunc)


def tq_arith(A, B, op):
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    if op == "qderive":
        return A.qderive()
    raise ValueError("unknown op %r" % op)
