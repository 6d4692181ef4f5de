"""
Level 3 modular and quasi-modular forms as exact q^(1/3)-series.

Series live internally as rational fmpq_poly in x = q^(1/3); the public face is
ThirdsQSeries.  The ring generated by theta, psi, e2 is free, so decomposition
is an exact linear solve against the monomials theta^a psi^b e2^d.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from flint import fmpq_poly

from .arith import CoeffScalar, EisRat, ThirdsQSeries, enumerate_norm
from .qrho import InconsistentSystem, Underdetermined, fq, frac, solve_rational_two_rhs

WEIGHTS = {"theta": 1, "psi": 1, "e2": 2, "eta8": 4}


@dataclass
class Level3Form:
    series: ThirdsQSeries
    weight: int
    e2_degree: int = 0


def _poly_to_series(p, n, scale=None):
    d = {}
    for t in range(min(n, p.length())):
        c = p[t]
        if c != 0:
            d[t] = CoeffScalar({(0, 0): EisRat(frac(c))})
    s = ThirdsQSeries(d, n)
    return s if scale is None else s * scale


@functools.lru_cache(maxsize=None)
def theta_poly(n):
    """sum over O_F of q^N(alpha), in thirds, mod x^n."""
    c = [0] * n
    for k in range(0, (n - 1) // 3 + 1):
        c[3 * k] = len(enumerate_norm(k, "full"))
    return fmpq_poly(c)


def _euler(n, step, power):
    """prod_{k>=1} (1 - x^(step*k))^power mod x^n."""
    p = fmpq_poly([1])
    k = 1
    while step * k < n:
        f = fmpq_poly([1] + [0] * (step * k - 1) + [-1])
        if power >= 0:
            p = p.mul_low(f.pow_trunc(power, n), n)
        else:
            # 1/(1 - y) = sum y^i
            g = fmpq_poly([1 if i % (step * k) == 0 else 0 for i in range(n)])
            p = p.mul_low(g.pow_trunc(-power, n), n)
        k += 1
    return p.truncate(n)


@functools.lru_cache(maxsize=None)
def psi_poly(n):
    # q^(1/3) prod (1 - q^(3k))^3 / (1 - q^k); in x: x * prod (1-x^(9k))^3 / (1-x^(3k))
    core = _euler(n, 9, 3).mul_low(_euler(n, 3, -1), n)
    return core.left_shift(1).truncate(n)


@functools.lru_cache(maxsize=None)
def eta8_poly(n):
    # q^(1/3) prod (1 - q^k)^8, from the eta product itself
    return _euler(n, 3, 8).left_shift(1).truncate(n)


@functools.lru_cache(maxsize=None)
def e2_poly(n):
    c = [0] * n
    c[0] = 1
    for k in range(1, (n - 1) // 3 + 1):
        c[3 * k] = -24 * sum(d for d in range(1, k + 1) if k % d == 0)
    return fmpq_poly(c)


def _thetaj_general(j, n):
    out = {}
    for k in range(0, (n - 1) // 3 + 1):
        s = EisRat(0)
        for a in enumerate_norm(k, "full"):
            s = s + a ** j
        if s:
            out[3 * k] = s
    return ThirdsQSeries(out, n)


def q_expansion(name, depth):
    """Exact expansion to O(q^depth), i.e. depth*3 thirds."""
    n = 3 * depth
    if name == "theta":
        return Level3Form(_poly_to_series(theta_poly(n), n), 1)
    if name == "psi":
        return Level3Form(_poly_to_series(psi_poly(n), n), 1)
    if name == "eta8":
        return Level3Form(_poly_to_series(eta8_poly(n), n), 4)
    if name == "e2":
        return Level3Form(_poly_to_series(e2_poly(n), n), 2, 1)
    if name.startswith("Theta_"):
        j = int(name.split("_", 1)[1])
        return Level3Form(_thetaj_general(j, n), j + 1)
    raise KeyError("unknown level 3 form %r" % name)


def series_to_poly(s):
    """ThirdsQSeries with rational single-grading coefficients -> (fmpq_poly, fmpq_poly, scale)."""
    grading = None
    re = [0] * s.trunc
    rh = [0] * s.trunc
    for t, c in s.coeffs.items():
        r, e1, e2 = c.lead()
        if grading is None:
            grading = (e1, e2)
        elif grading != (e1, e2):
            raise ValueError("coefficients carry different c1/gam monomials")
        re[t] = fq(r.re)
        rh[t] = fq(r.rh)
    return fmpq_poly(re), fmpq_poly(rh), grading or (0, 0)


# -------------------------------------------------------------- decomposition


def monomial_exponents(weight):
    out = []
    for d in range(weight // 2 + 1):
        for b in range(weight - 2 * d + 1):
            out.append((weight - 2 * d - b, b, d))
    return out


@functools.lru_cache(maxsize=None)
def _power(name, e, n):
    base = {"theta": theta_poly, "psi": psi_poly, "e2": e2_poly}[name](n)
    return base.pow_trunc(e, n) if e else fmpq_poly([1])


@functools.lru_cache(maxsize=None)
def monomial_poly(mon, n):
    a, b, d = mon
    p = _power("theta", a, n).mul_low(_power("psi", b, n), n)
    return p.mul_low(_power("e2", d, n), n)


class DecompositionError(ArithmeticError):
    pass


SLACK = 8


def required_thirds(weight, slack=SLACK):
    """Thirds of q-depth that give every residue class enough rows."""
    mons = monomial_exponents(weight)
    worst = 0
    for r in range(3):
        k = sum(1 for m in mons if m[1] % 3 == r)
        worst = max(worst, k)
    return 3 * (worst + slack) + 3


class Quasimodular:
    """sum coeff * theta^a psi^b e2^d, times a constant c1/gam monomial."""

    def __init__(self, weight, coeffs, scale=(0, 0)):
        self.weight = weight
        self.coeffs = {m: c for m, c in coeffs.items() if c}
        self.scale = scale

    @property
    def e2_degree(self):
        return max((m[2] for m in self.coeffs), default=0)

    def series(self, n):
        re = fmpq_poly([])
        rh = fmpq_poly([])
        for m, c in self.coeffs.items():
            p = monomial_poly(m, n)
            re += p * fq(c.re)
            rh += p * fq(c.rh)
        return re, rh

    def __eq__(self, other):
        return (self.weight, self.coeffs, self.scale) == (other.weight, other.coeffs, other.scale)

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b, d), c in sorted(self.coeffs.items(), reverse=True):
            f = []
            for nm, e in (("theta", a), ("psi", b), ("e2", d)):
                if e:
                    f.append(nm if e == 1 else "%s^%d" % (nm, e))
            co = c.pretty()
            if f and co in ("1", "-1"):
                co = co[:-1]
                parts.append(co + "*".join(f))
            else:
                parts.append("*".join([co] + f))
        pre = ""
        if self.scale != (0, 0):
            pre = "c1^%d*gam^%d*" % self.scale
        return pre + "(" + " + ".join(parts).replace("+ -", "- ") + ")"

    def __repr__(self):
        return "Quasimodular(%s)" % self.render()


def decompose_poly(re, rh, n, weight, scale=(0, 0), slack=SLACK):
    """Decompose the Q(rho)-series re + rho*rh (exact below x^n) at this weight."""
    mons = monomial_exponents(weight)
    coeffs = {}
    for r in range(3):
        cls = [m for m in mons if m[1] % 3 == r]
        rows_t = [t for t in range(n) if t % 3 == r]
        if not cls:
            if any(re[t] != 0 or rh[t] != 0 for t in rows_t):
                raise DecompositionError("nonzero coefficients in residue class %d with no monomials" % r)
            continue
        if len(rows_t) < len(cls) + slack:
            raise DecompositionError(
                "class %d has %d rows for %d monomials (+%d slack); raise the q-depth" % (r, len(rows_t), len(cls), slack)
            )
        cols = [monomial_poly(m, n) for m in cls]
        rows = [[frac(c[t]) for c in cols] for t in rows_t]
        try:
            sol = solve_rational_two_rhs(rows, [frac(re[t]) for t in rows_t], [frac(rh[t]) for t in rows_t])
        except InconsistentSystem as exc:
            raise DecompositionError("series is not quasi-modular of weight %d" % weight) from exc
        except Underdetermined as exc:
            raise DecompositionError("monomials not independent on the available rows") from exc
        for m, v in zip(cls, sol):
            if v:
                coeffs[m] = v
    return Quasimodular(weight, coeffs, scale)


def decompose(series, weight, slack=SLACK):
    re, rh, grading = series_to_poly(series)
    return decompose_poly(re, rh, series.trunc, weight, grading, slack)


def build_monomial(mon, depth):
    n = 3 * depth
    return _poly_to_series(monomial_poly(mon, n), n)


def f_series(depth):
    """(54 psi^3 - theta^3)/6."""
    n = 3 * depth
    p = (psi_poly(n).pow_trunc(3, n) * 54 - theta_poly(n).pow_trunc(3, n)) / 6
    return _poly_to_series(p, n)
