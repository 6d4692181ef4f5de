"""
Floating-point oracle: theta functions with characteristics, the modular
embedding iota/sigma, factors of automorphy, and numeric cross-checks of the
exact expansions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath
import numpy as np

SQRT3 = math.sqrt(3.0)
RHO = complex(-0.5, SQRT3 / 2)
RHO2 = RHO * RHO
GAMMA = 2 * math.pi / SQRT3
DEFAULT_WINDOW = 10
DEFAULT_TOL = 1e-8


class NumericError(ArithmeticError):
    pass


# ----------------------------------------------------------------- constants


def c_closed():
    """3^(3/8) Gamma(1/3)^(3/2) exp(5 pi i/72) / (2 pi)."""
    g = float(mpmath.gamma(mpmath.mpf(1) / 3))
    return 3 ** 0.375 * g ** 1.5 * cmath.exp(5j * math.pi / 72) / (2 * math.pi)


def c1_closed():
    """Gamma(1/3)^3 exp(-17 pi i/18) / (2 pi)."""
    g = float(mpmath.gamma(mpmath.mpf(1) / 3))
    return g ** 3 * cmath.exp(-17j * math.pi / 18) / (2 * math.pi)


# ------------------------------------------------------------ characteristics


@dataclass(frozen=True)
class ThetaChar:
    mu: tuple
    nu: tuple

    @classmethod
    def from_klm(cls, k, l, m):
        """[k l m] -> [k/3, (2l+1)/6, -k/3; m/3, (2l+1)/6, m/3]."""
        h = Fraction(2 * l + 1, 6)
        return cls((Fraction(k, 3), h, Fraction(-k, 3)), (Fraction(m, 3), h, Fraction(m, 3)))

    @property
    def genus(self):
        return len(self.mu)


C1_PRIME = ((0, 1, 1), (1, 1, 0), (1, 0, 1), (2, 0, 2), (0, 1, 0))


def window_needed(tau, eps=1e-16):
    """Smallest R whose omitted lattice terms are below eps, from the least eigenvalue of Im(tau)."""
    lam = float(np.linalg.eigvalsh(np.atleast_2d(np.asarray(tau, dtype=complex)).imag).min())
    if lam <= 0:
        raise NumericError("Im(tau) is not positive definite")
    return int(math.ceil(math.sqrt(-math.log(eps) / (math.pi * lam)))) + 1


def _lattice(g, R):
    rng = np.arange(-R, R + 1)
    grids = np.meshgrid(*([rng] * g), indexing="ij")
    return np.stack([x.ravel() for x in grids], axis=1).astype(float)


def theta_eval(char, tau, z, R=DEFAULT_WINDOW, gradient=False):
    """Truncated sum over n in Z^g with max|n_i| <= R of exp(pi i (n+mu) tau (n+mu)^t + 2 pi i (n+mu)(z+nu)^t).

    With gradient=True returns the vector of d/dz_i instead.
    """
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    g = tau.shape[0]
    if R < 1:
        raise ValueError("window R must be >= 1")
    try:
        np.linalg.cholesky(tau.imag)
    except np.linalg.LinAlgError:
        raise NumericError("Im(tau) is not positive definite") from None
    mu = np.array([float(x) for x in char.mu])
    nu = np.array([float(x) for x in char.nu])
    n = _lattice(g, R) + mu
    quad = np.einsum("ki,ij,kj->k", n, tau, n)
    lin = n @ (z + nu)
    e = np.exp(1j * math.pi * quad + 2j * math.pi * lin)
    if gradient:
        return (2j * math.pi * n * e[:, None]).sum(axis=0)
    return e.sum()


# --------------------------------------------------------------- embedding


def in_ball(u, v):
    return (v + v.conjugate()).real + abs(u) ** 2 < 0 if isinstance(v, complex) else 2 * v + abs(u) ** 2 < 0


def iota(u, v):
    u, v = complex(u), complex(v)
    if not (2 * v.real + abs(u) ** 2 < 0):
        raise NumericError("(u, v) = (%s, %s) is outside the ball" % (u, v))
    d = 1 - RHO
    return np.array(
        [
            [(u * u + 2 * RHO2 * v) / d, RHO2 * u, (RHO * u * u - RHO2 * v) / d],
            [RHO2 * u, -RHO2, u],
            [(RHO * u * u - RHO2 * v) / d, u, (RHO2 * u * u + 2 * RHO2 * v) / d],
        ]
    )


@dataclass(frozen=True)
class GroupElement:
    """3x3 matrix over O_F; entry (a, b) stands for a + b*rho."""

    name: str
    entries: tuple

    def complex(self):
        return np.array([[a + b * RHO for a, b in row] for row in self.entries])

    def sigma(self):
        a = [[e[0] for e in row] for row in self.entries]
        b = [[e[1] for e in row] for row in self.entries]
        A = lambda i, j: a[i - 1][j - 1]  # noqa: E731
        B = lambda i, j: b[i - 1][j - 1]  # noqa: E731
        return np.array(
            [
                [A(1, 1) - B(1, 1), A(1, 3) - B(1, 3), -B(1, 1), B(1, 2), B(1, 3), A(1, 2) - B(1, 2)],
                [A(3, 1) - B(3, 1), A(3, 3) - B(3, 3), -B(3, 1), B(3, 2), B(3, 3), A(3, 2) - B(3, 2)],
                [B(1, 1), B(1, 3), A(1, 1), -A(1, 2), -A(1, 3), B(1, 2)],
                [-B(2, 1), -B(2, 3), -A(2, 1), A(2, 2), A(2, 3), -B(2, 2)],
                [-B(3, 1), -B(3, 3), -A(3, 1), A(3, 2), A(3, 3), -B(3, 2)],
                [A(2, 1) - B(2, 1), A(2, 3) - B(2, 3), -B(2, 1), B(2, 2), B(2, 3), A(2, 2) - B(2, 2)],
            ],
            dtype=np.int64,
        )


def _ge(name, rows):
    return GroupElement(name, tuple(tuple(tuple(e) for e in row) for row in rows))


_0, _1, _R, _S3 = (0, 0), (1, 0), (0, 1), (1, 2)  # 0, 1, rho, sqrt(-3) = 1 + 2 rho
_RM1 = (-1, 1)  # rho - 1
_1MR2 = (2, 1)  # 1 - rho^2 = 2 + rho

GENERATORS = {
    "g0": _ge("g0", [[_R, _0, _0], [_0, _R, _0], [_0, _0, _R]]),
    "g1": _ge("g1", [[_1, _0, _0], [_0, _1, _0], [_0, _0, _R]]),
    "g2": _ge("g2", [[_1, _0, _0], [_S3, _1, _0], [_0, _0, _1]]),
    "g3": _ge("g3", [[_1, _0, _0], [_RM1, _1, _RM1], [_1MR2, _0, _1]]),
    "g4": _ge("g4", [[_1, _S3, _0], [_0, _1, _0], [_0, _0, _1]]),
    "g5": _ge("g5", [[_1, _RM1, _RM1], [_0, _1, _0], [_0, _1MR2, _1]]),
}

S4_GENERATORS = {
    "r1": _ge("r1", [[_0, (-1, 0), _0], [(-1, 0), _0, _0], [_0, _0, (-1, 0)]]),
    "r2": _ge("r2", [[(-1, 0), _0, _0], [_0, (-1, 0), _0], [_0, _0, _1]]),
    "r3": _ge("r3", [[_1, (-1, -1), _1], [_0, _1, _0], [_0, (-1, 0), _1]]),
}

HERMITIAN = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
J6 = np.block([[np.zeros((3, 3)), np.eye(3)], [-np.eye(3), np.zeros((3, 3))]])


def preserves_hermitian(g, tol=1e-12):
    M = g.complex() if isinstance(g, GroupElement) else np.asarray(g)
    return np.abs(M.conj().T @ HERMITIAN @ M - HERMITIAN).max() < tol


def is_symplectic(M):
    M = np.asarray(M)
    return np.array_equal(M.T @ J6 @ M, J6)


def congruent_to_one(g):
    """entrywise g = 1 mod sqrt(-3); a + b rho is divisible by sqrt(-3) iff a + b = 0 mod 3."""
    for i, row in enumerate(g.entries):
        for j, (a, b) in enumerate(row):
            a0 = a - (1 if i == j else 0)
            if (a0 + b) % 3:
                return False
    return True


def act(g, u, v):
    M = g.complex() if isinstance(g, GroupElement) else np.asarray(g)
    den = M[1, 0] * v + M[1, 1] + M[1, 2] * u
    return (M[2, 0] * v + M[2, 1] + M[2, 2] * u) / den, (M[0, 0] * v + M[0, 1] + M[0, 2] * u) / den


def _minor(M, i, j):
    sub = np.delete(np.delete(M, i, axis=0), j, axis=1)
    return sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0]


def slash_factors(g, u, v):
    """(j1, j2) with j1 = g21 v + g22 + g23 u and j2 = det(g)^-1 [[G32 u + G33, G32 v + G31], [G12 u + G13, G12 v + G11]]."""
    M = g.complex() if isinstance(g, GroupElement) else np.asarray(g, dtype=complex)
    G = lambda i, j: _minor(M, i - 1, j - 1)  # noqa: E731
    j1 = M[1, 0] * v + M[1, 1] + M[1, 2] * u
    j2 = np.array([[G(3, 2) * u + G(3, 3), G(3, 2) * v + G(3, 1)], [G(1, 2) * u + G(1, 3), G(1, 2) * v + G(1, 1)]]) / np.linalg.det(M)
    return j1, j2


# ------------------------------------------------------------ F_i directly


def c_numeric(R=DEFAULT_WINDOW):
    return theta_eval(ThetaChar((Fraction(1, 6),), (Fraction(1, 6),)), [[-RHO2]], [0], R)


def F_direct(i, u, v, R=DEFAULT_WINDOW):
    """c^-1 [d theta/dz2, d theta/dz1] at (iota(u, v), 0) for the i-th characteristic of C1'."""
    ch = ThetaChar.from_klm(*C1_PRIME[i])
    grad = theta_eval(ch, iota(u, v), np.zeros(3), R, gradient=True)
    return np.array([grad[1], grad[0]]) / c_numeric(R)


def gradient_relation_residual(i, u, v, R=DEFAULT_WINDOW):
    """|d/dz3 + rho^2 d/dz1| relative to |grad| at an iota-point."""
    ch = ThetaChar.from_klm(*C1_PRIME[i])
    grad = theta_eval(ch, iota(u, v), np.zeros(3), R, gradient=True)
    return abs(grad[2] + RHO2 * grad[0]) / max(np.abs(grad).max(), 1e-300)


def theta_on_iota(i, u, v, R=DEFAULT_WINDOW):
    return theta_eval(ThetaChar.from_klm(*C1_PRIME[i]), iota(u, v), np.zeros(3), R)


def slash_ratio(i, g, u, v, R=DEFAULT_WINDOW):
    """(F_i |_{1,1} g)(u, v) / F_i(u, v), componentwise."""
    j1, j2 = slash_factors(g, u, v)
    gu, gv = act(g, u, v)
    Fg = np.linalg.solve(j2, F_direct(i, gu, gv, R)) / j1
    return Fg / F_direct(i, u, v, R)


def slash(i, g, u, v, R=DEFAULT_WINDOW):
    j1, j2 = slash_factors(g, u, v)
    gu, gv = act(g, u, v)
    return np.linalg.solve(j2, F_direct(i, gu, gv, R)) / j1


# c(i, j): F_i |_{1,1} g_j = c(i, j) F_i
CHARACTER_TABLE = {
    0: ("1", "rho", "rho", "rho2", "1", "1"),
    1: ("1", "rho", "1", "1", "rho", "rho2"),
    2: ("1", "1", "rho", "rho", "rho", "rho"),
    3: ("1", "1", "rho", "1", "rho", "1"),
    4: ("1", "rho", "1", "1", "1", "1"),
}
_UNIT = {"1": 1, "rho": RHO, "rho2": RHO2}

# F_i |_{1,1} r_k^{-1} = factor * F_target
R_ACTION = {
    "r1": [(-1, 1), (-1, 0), (-1, 2), (-1, 3), (-1, 4)],
    "r2": [(-1, 0), (-1, 1), (-1, 3), (-1, 2), (-1, 4)],
    "r3": [(1, 0), (cmath.exp(5j * math.pi / 9), 2), (cmath.exp(-2j * math.pi / 3), 3), (cmath.exp(1j * math.pi / 9), 1), (1, 4)],
}


def character_table_errors(points, R=DEFAULT_WINDOW):
    """max |ratio - c(i, j)| over points, per (i, j)."""
    out = {}
    for i in range(5):
        for j in range(6):
            g = GENERATORS["g%d" % j]
            want = _UNIT[CHARACTER_TABLE[i][j]]
            err = 0.0
            for u, v in points:
                err = max(err, float(np.abs(slash_ratio(i, g, u, v, R) - want).max()))
            out[(i, j)] = err
    return out


def r_action_errors(points, R=DEFAULT_WINDOW):
    out = {}
    for k, row in R_ACTION.items():
        rinv = np.linalg.inv(S4_GENERATORS[k].complex())
        for i, (factor, target) in enumerate(row):
            err = 0.0
            for u, v in points:
                lhs = slash(i, rinv, u, v, R)
                rhs = factor * F_direct(target, u, v, R)
                err = max(err, float(np.abs(lhs - rhs).max() / np.abs(rhs).max()))
            out[(k, i)] = err
    return out


# ------------------------------------------- one-variable X, Y, Z and Taylor


def X_numeric(z, R=30):
    ch = ThetaChar((Fraction(1, 2),), (Fraction(1, 2),))
    return cmath.exp(math.pi * z * z / SQRT3) * theta_eval(ch, [[-RHO2]], [z], R) / c_numeric(R)


def Y_numeric(z, R=30):
    ch = ThetaChar((Fraction(1, 6),), (Fraction(1, 6),))
    return cmath.exp(math.pi * z * z / SQRT3) * theta_eval(ch, [[-RHO2]], [z], R) / c_numeric(R)


def Z_numeric(z, R=30):
    return Y_numeric(-z, R)


def c1_numeric(R=30):
    """X'(0) from the theta gradient."""
    ch = ThetaChar((Fraction(1, 2),), (Fraction(1, 2),))
    return theta_eval(ch, [[-RHO2]], [0], R, gradient=True)[0] / c_numeric(R)


def taylor_numeric(f, n_max, radius=0.8, points=128):
    """Taylor coefficients of an entire function by the trapezoidal Cauchy integral."""
    zs = [radius * cmath.exp(2j * math.pi * k / points) for k in range(points)]
    vals = [f(z) for z in zs]
    out = []
    for n in range(n_max + 1):
        s = sum(v * (z ** -n) for v, z in zip(vals, zs)) / points
        out.append(s)
    return out


def normalized_taylor(f, n_max, scale, radius=0.8, points=128):
    """coefficients a_n n! / scale^n, which the exact tables predict to be in Q(rho)."""
    raw = taylor_numeric(f, n_max, radius, points)
    return [a * math.factorial(n) / scale ** n for n, a in enumerate(raw)]


# --------------------------------------------------- evaluating exact series


def eval_fjseries(series, u, v, c1=None):
    """Sum of r c1^(m+e) gam^g u^m q_v^(t/3) over the cells."""
    if series.is_zero():
        return 0j
    c1 = c1_closed() if c1 is None else c1
    e, g = series.grading
    qv3 = cmath.exp(2 * math.pi * complex(v) / (3 * SQRT3))
    tot = 0j
    for t, m, r in series.cells():
        tot += complex(r) * c1 ** (m + e) * GAMMA ** g * complex(u) ** m * qv3 ** t
    return tot


def eval_vector(F, u, v, c1=None):
    return np.array([eval_fjseries(c, u, v, c1) for c in F.components])


def numeric_compare(form, u=0.05, v=-3.0, R=DEFAULT_WINDOW, qtrunc=48, utrunc=40):
    """max relative error between the exact truncation and direct evaluation.

    form: 'F0'..'F4', 'E11' (= F4) or 'zeta'.
    """
    from .fjcore import build_basic

    if abs(cmath.exp(2 * math.pi * complex(v) / SQRT3)) > 0.01:
        raise NumericError("|q_v| must be < 0.01 for the truncated expansion to converge quickly")
    if form in ("E11", "F4", "F0", "F1", "F2", "F3"):
        idx = 4 if form == "E11" else int(form[1])
        exact = eval_vector(build_basic(form, qtrunc, utrunc), u, v)
        direct = F_direct(idx, u, v, R)
    elif form == "zeta":
        exact = eval_vector(build_basic("zeta", qtrunc, utrunc), u, v)
        direct = np.array([zeta_direct(u, v)])
    else:
        raise KeyError("no direct evaluation for %r" % form)
    return float(np.abs(exact - direct).max() / np.abs(direct).max())


def zeta_direct(u, v, nmax=40):
    """(1/6) sum over alpha in O_F of alpha^5 X(alpha u) q_v^N(alpha), with X from theta."""
    qv = cmath.exp(2 * math.pi * complex(v) / SQRT3)
    tot = 0j
    B = int(math.isqrt(4 * nmax // 3) + 2)
    for a, b in product(range(-B, B + 1), repeat=2):
        n = a * a - a * b + b * b
        if n == 0 or n > nmax:
            continue
        al = a + b * RHO
        tot += al ** 5 * X_numeric(al * u) * qv ** n
    return tot / 6


# ------------------------------------------------------------ named checks

NUMERIC_CHECKS = ("theta-vanishing", "jacobian", "constants", "character-table", "r-action",
                  "F0", "F1", "F2", "F3", "E11", "zeta")

SAMPLE_POINTS = ((0.1 + 0.05j, -0.4 + 0.2j), (-0.2j, -0.6 - 0.1j), (0.3, -0.9 + 0.3j))


def numeric_check(name, u=0.05, v=-3.0, R=DEFAULT_WINDOW, tol=DEFAULT_TOL):
    """(passed, error, detail) for one named numeric check at the point (u, v).

    Errors are absolute for the vanishing, jacobian and constant checks and
    relative for the expansion comparisons.
    """
    u, v = complex(u), complex(v)
    if name == "theta-vanishing":
        err = max(abs(theta_on_iota(i, u, v, R)) for i in range(5))
        return err <= tol, err, "max |theta_lambda(iota(u,v), 0)| over C1'"
    if name == "jacobian":
        err = 0.0
        for g in list(GENERATORS.values()) + list(S4_GENERATORS.values()):
            j1, j2 = slash_factors(g, u, v)
            err = max(err, abs(np.linalg.det(j2) - j1 / np.linalg.det(g.complex())))
        return err <= tol, err, "max |det j2 - j1/det g| over g0..g5, r1..r3"
    if name == "constants":
        err = max(abs(c_numeric(R) - c_closed()), abs(c1_numeric() - c1_closed()))
        return err <= tol, err, "c and c1 against their closed forms"
    if name == "character-table":
        pts = [(u, v)] if in_ball(u, v) else list(SAMPLE_POINTS)
        err = max(character_table_errors(pts, R).values())
        need = max(window_needed(iota(*act(g, a, b))) for a, b in pts for g in GENERATORS.values())
        hint = "" if need <= R else "; images of the point need window R >= %d" % need
        return err <= tol, err, "max |F_i|g_j / F_i - c(i,j)|" + hint
    if name == "r-action":
        pts = [(u, v)] if in_ball(u, v) else list(SAMPLE_POINTS)
        err = max(r_action_errors(pts, R).values())
        return err <= tol, err, "max relative error of F_i|r_k^-1 against the table"
    if name in ("F0", "F1", "F2", "F3", "E11", "zeta"):
        err = numeric_compare(name, u, v, R)
        return err <= tol, err, "relative error of the truncated expansion against direct evaluation"
    raise KeyError("unknown numeric check %r (known: %s)" % (name, ", ".join(NUMERIC_CHECKS)))
