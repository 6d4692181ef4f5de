"""
Fast Q(rho) kernels on top of FLINT.

A polynomial over Q(rho) is a pair (A, B) of fmpq_poly meaning A + rho*B.
Matrices over Q(rho) are solved by passing to the 2x2 real block form.
"""

from fractions import Fraction

from flint import fmpq, fmpq_mat, fmpq_poly

from .arith import EisRat

ZERO = fmpq_poly([])


def fq(x):
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(x)


def frac(x):
    return Fraction(int(x.p), int(x.q))


def eis(x):
    """EisRat -> (fmpq, fmpq)."""
    x = EisRat.coerce(x)
    return fq(x.re), fq(x.rh)


def to_eis(a, b):
    return EisRat(frac(a), frac(b))


def pp_zero():
    return (fmpq_poly([]), fmpq_poly([]))


def pp_const(x, shift=0):
    a, b = eis(x)
    A = fmpq_poly([a]).left_shift(shift) if a else fmpq_poly([])
    B = fmpq_poly([b]).left_shift(shift) if b else fmpq_poly([])
    return (A, B)


def pp_from_list(vals):
    """list of EisRat -> pair."""
    re = [fq(EisRat.coerce(v).re) for v in vals]
    rh = [fq(EisRat.coerce(v).rh) for v in vals]
    return (fmpq_poly(re), fmpq_poly(rh))


def pp_coeff(p, k):
    A, B = p
    return to_eis(A[k], B[k])


def pp_is_zero(p):
    return p[0].is_zero() and p[1].is_zero()


def pp_len(p):
    return max(p[0].length(), p[1].length())


def pp_val(p):
    """lowest k with nonzero coefficient, or None."""
    n = pp_len(p)
    A, B = p
    for k in range(n):
        if A[k] != 0 or B[k] != 0:
            return k
    return None


def pp_add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def pp_sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def pp_neg(p):
    return (-p[0], -p[1])


def pp_trunc(p, n):
    return (p[0].truncate(n), p[1].truncate(n))


def pp_shift(p, k):
    if k >= 0:
        return (p[0].left_shift(k), p[1].left_shift(k))
    return (p[0].right_shift(-k), p[1].right_shift(-k))


def pp_mul(p, q, n):
    """product mod w^n (three real multiplications)."""
    A, B = p
    C, D = q
    if n <= 0:
        return pp_zero()
    AC = A.mul_low(C, n)
    BD = B.mul_low(D, n)
    S = (A + B).mul_low(C + D, n)
    return (AC - BD, S - AC - 2 * BD)


def pp_scale(p, x):
    """multiply by a scalar in Q(rho)."""
    a, b = eis(x)
    A, B = p
    if b == 0:
        return (A * a, B * a)
    # (A + rB)(a + rb) = Aa - Bb + r(Ab + Ba - Bb)
    return (A * a - B * b, A * b + B * a - B * b)


def pp_conj(p):
    A, B = p
    return (A - B, -B)


def pp_inv(p, n):
    """inverse series mod w^n; requires p(0) != 0."""
    A, B = p
    # N = p * conj(p) is rational
    Cj = pp_conj(p)
    Nr = pp_mul(p, Cj, n)[0]
    if Nr[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    inv = _inv_rational(Nr, n)
    return (Cj[0].mul_low(inv, n), Cj[1].mul_low(inv, n))


def _inv_rational(f, n):
    # Newton iteration g <- g (2 - f g)
    g = fmpq_poly([1 / f[0]])
    k = 1
    while k < n:
        k = min(2 * k, n)
        fg = f.mul_low(g, k)
        g = g.mul_low(2 - fg, k)
    return g.truncate(n)


def pp_eval_scale(p, lam, n=None):
    """p(lam*w): multiply coefficient k by lam^k."""
    m = pp_len(p) if n is None else n
    vals = []
    cur = EisRat(1)
    lam = EisRat.coerce(lam)
    for k in range(m):
        vals.append(pp_coeff(p, k) * cur)
        cur = cur * lam
    return pp_from_list(vals)


def pp_derive(p):
    return (p[0].derivative(), p[1].derivative())


def pp_eq(p, q, n):
    d = pp_trunc(pp_sub(p, q), n)
    return pp_is_zero(d)


# ---------------------------------------------------------------- linear algebra


def _realify(rows):
    """rows of EisRat -> rational matrix in 2x2 blocks.

    x = p + rho*q, entry a + rho*b acts as  [[a, -b], [b, a - b]].
    """
    out = []
    for row in rows:
        r1 = []
        r2 = []
        for x in row:
            a, b = x.re, x.rh
            r1 += [a, -b]
            r2 += [b, a - b]
        out.append(r1)
        out.append(r2)
    return out


def rref_fractions(rows, ncols):
    if not rows:
        return fmpq_mat(0, ncols), 0
    M = fmpq_mat(len(rows), ncols, [fq(v) for row in rows for v in row])
    return M.rref()


def rank_qrho(rows):
    """rank over Q(rho) of a list of EisRat rows."""
    if not rows:
        return 0
    R, rk = rref_fractions(_realify(rows), 2 * len(rows[0]))
    return rk // 2


class InconsistentSystem(ArithmeticError):
    pass


class Underdetermined(ArithmeticError):
    pass


def solve_qrho(rows, rhs):
    """Unique solution x over Q(rho) of rows * x = rhs; checks every row."""
    k = len(rows[0]) if rows else 0
    real = _realify([list(r) + [b] for r, b in zip(rows, rhs)])
    R, rk = rref_fractions(real, 2 * k + 2)
    return _read_solution(R, rk, 2 * k, 2)[0], rk


def _read_solution(R, rk, nunk, nrhs):
    piv = []
    for i in range(rk):
        for j in range(nunk + nrhs):
            if R[i, j] != 0:
                piv.append(j)
                break
    if any(p >= nunk for p in piv):
        raise InconsistentSystem("right-hand side is not in the column span")
    if len(piv) < nunk:
        raise Underdetermined("system has %d free unknowns" % (nunk - len(piv)))
    sols = []
    for c in range(nrhs):
        x = [Fraction(0)] * nunk
        for i, p in enumerate(piv):
            x[p] = frac(R[i, nunk + c])
        sols.append(x)
    # back to Q(rho): columns come in (re, rh) pairs
    out = []
    for x in sols:
        out.append([EisRat(x[2 * j], x[2 * j + 1]) for j in range(nunk // 2)])
    return out


def solve_rational_two_rhs(rows, rhs_re, rhs_rh):
    """Rational matrix, Q(rho) right-hand side: solve the re and rh parts together."""
    k = len(rows[0])
    aug = [list(r) + [a, b] for r, a, b in zip(rows, rhs_re, rhs_rh)]
    R, rk = rref_fractions(aug, k + 2)
    piv = []
    for i in range(rk):
        for j in range(k + 2):
            if R[i, j] != 0:
                piv.append(j)
                break
    if any(p >= k for p in piv):
        raise InconsistentSystem("right-hand side is not in the column span")
    if len(piv) < k:
        raise Underdetermined("system has %d free unknowns" % (k - len(piv)))
    out = [EisRat(0)] * k
    for i, p in enumerate(piv):
        out[p] = EisRat(frac(R[i, k]), frac(R[i, k + 1]))
    return out
