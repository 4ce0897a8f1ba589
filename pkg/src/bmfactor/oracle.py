"""Brute-force Bernstein-Markov factors as maximal Rayleigh quotients over P_n.

Two independent routes are provided.

``gram_matrices`` assembles the monomial-basis Gram pair (G, S) straight from
the moment table; it is exact but Hankel-conditioned, which limits eigensolves
to moderate degree.  ``rayleigh_factor`` therefore assembles the same
symmetric-definite eigenproblem in a basis that is orthonormal by construction:
the weight's three-term recurrence coefficients are known in closed form
(Laguerre chain on the half line, Jacobi chain on [0,1], spliced through the
even-weight decomposition), a Gauss rule of matching accuracy comes from the
tridiagonal Jacobi matrix, and the stiffness entries are exact quadrature sums.
The generalized eigenvalues are invariant under the basis change, and the
identity-Gram formulation keeps them accurate at degrees where the raw Hankel
matrix is numerically singular.  Neither route uses the closed-form factor
theorems or the determinant pencils.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from .core import OperatorSpec, Polynomial, WeightSpec
from .dunkl import dunkl_apply, monomial_factor
from .special import moment_table

logger = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 14


class ConditioningError(RuntimeError):
    """Raised when the Gram matrix is numerically indefinite or the eigensolve fails."""

    def __init__(self, message: str, condition: float):
        super().__init__(f"{message} (estimated condition {condition:.3e})")
        self.condition = condition


def _a_quad(weight: WeightSpec, op: OperatorSpec) -> float:
    # The damping factor sqrt(A) only differs from 1 on [-1,1], where A = 1 - x^2.
    return 1.0 if (weight.is_gegenbauer and op.damped) else 0.0


@dataclass(frozen=True)
class GramPair:
    """Monomial-basis matrices G_ij = <x^i, x^j>_W and S_ij = <sqrt(A) D x^i, sqrt(A) D x^j>_W."""

    g: np.ndarray
    s: np.ndarray


def gram_matrices(n: int, weight: WeightSpec, op: OperatorSpec) -> GramPair:
    if n < 1:
        raise ValueError("degree must be >= 1")
    table = moment_table(weight, 2 * n)
    aq = _a_quad(weight, op)
    lam = weight.lam if op.is_dunkl else 0.0
    g = np.zeros((n + 1, n + 1))
    s = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(n + 1):
            if (i + j) % 2:
                continue
            g[i, j] = table.moment(i + j)
            if i >= 1 and j >= 1:
                val = table.moment(i + j - 2)
                if aq:
                    val -= table.moment(i + j)
                s[i, j] = monomial_factor(i, lam) * monomial_factor(j, lam) * val
    return GramPair(g, s)


def weighted_inner(p: Polynomial, q: Polynomial, weight: WeightSpec, with_a: bool = False) -> float:
    """<p, q>_W, optionally with the extra factor A(x) = 1 - x^2 on [-1,1]."""
    if p.is_zero or q.is_zero:
        return 0.0
    aq = 1.0 if (with_a and weight.is_gegenbauer) else 0.0
    deg = 8 * ((len(p.coeffs) + len(q.coeffs) + 2) // 8 + 1)  # quantized for table reuse
    table = moment_table(weight, deg)
    terms = []
    for i, a in enumerate(p.coeffs):
        if a == 0.0:
            continue
        for j, b in enumerate(q.coeffs):
            if b == 0.0 or (i + j) % 2:
                continue
            m = table.moment(i + j) - aq * table.moment(i + j + 2)
            terms.append(a * b * m)
    return math.fsum(terms)


def rayleigh_quotient(p: Polynomial, weight: WeightSpec, op: OperatorSpec) -> float:
    """||sqrt(A) D p||^2 / ||p||^2 through moment-table bilinear forms."""
    if p.is_zero:
        raise ValueError("Rayleigh quotient of the zero polynomial is undefined")
    dp = dunkl_apply(p, weight.lam) if op.is_dunkl else p.derivative()
    num = weighted_inner(dp, dp, weight, with_a=op.damped)
    den = weighted_inner(p, p, weight)
    return num / den


# ---------------------------------------------------------------------------
# Recurrence/quadrature assembly


def _half_line_recurrence(count: int, weight: WeightSpec) -> tuple[np.ndarray, np.ndarray]:
    """Monic recurrence (alpha_j, beta_j) of the x^2-image measure, mass normalized to 1."""
    lam, mu = weight.lam, weight.mu
    j = np.arange(count, dtype=float)
    if not weight.is_gegenbauer:
        # Laguerre weight t^(lam-1/2) e^-t on [0, inf)
        kappa = lam - 0.5
        return 2 * j + kappa + 1, j * (j + kappa)
    # Jacobi weight (1-y)^(mu-1/2) (1+y)^(lam-1/2) on [-1,1], mapped to t = (y+1)/2
    a, b = mu - 0.5, lam - 0.5
    alpha = np.empty(count)
    beta = np.zeros(count)
    alpha[0] = (b - a) / (a + b + 2)
    for k in range(1, count):
        d = 2 * k + a + b
        alpha[k] = (b * b - a * a) / (d * (d + 2))
        if k == 1:
            beta[1] = 4 * (a + 1) * (b + 1) / ((a + b + 2) ** 2 * (a + b + 3))
        else:
            beta[k] = 4 * k * (k + a) * (k + b) * (k + a + b) / (d * d * (d + 1) * (d - 1))
    return (alpha + 1) / 2, beta / 4


def recurrence_betas(count: int, weight: WeightSpec) -> np.ndarray:
    """Coefficients of x p_k = p_(k+1) + beta_k p_(k-1) for the even weight, beta_0 := 1.

    Splicing an even weight through t = x^2: beta_1 = alpha_0, then
    beta_(2j) = b_j / beta_(2j-1) and beta_(2j+1) = alpha_j - beta_(2j).
    """
    alpha, b = _half_line_recurrence(count // 2 + 2, weight)
    beta = np.zeros(count + 1)
    beta[0] = 1.0
    if count >= 1:
        beta[1] = alpha[0]
    for j in range(1, count // 2 + 1):
        if 2 * j > count:
            break
        beta[2 * j] = b[j] / beta[2 * j - 1]
        if 2 * j + 1 > count:
            break
        beta[2 * j + 1] = alpha[j] - beta[2 * j]
    return beta


def gauss_rule(npoints: int, weight: WeightSpec) -> tuple[np.ndarray, np.ndarray]:
    """Gauss nodes and weights for W via Golub-Welsch; total mass normalized to 1."""
    beta = recurrence_betas(npoints, weight)
    nodes, vectors = eigh_tridiagonal(np.zeros(npoints), np.sqrt(beta[1:npoints]))
    return nodes, vectors[0, :] ** 2


def _orthonormal_basis(nmax: int, x: np.ndarray, weight: WeightSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Values and derivatives of the orthonormal basis at the nodes, plus sqrt(beta)."""
    rb = np.sqrt(recurrence_betas(nmax + 1, weight))
    q = np.zeros((nmax + 1, len(x)))
    dq = np.zeros_like(q)
    q[0] = 1.0
    if nmax >= 1:
        q[1] = x / rb[1]
        dq[1] = 1.0 / rb[1]
    for k in range(1, nmax):
        q[k + 1] = (x * q[k] - rb[k] * q[k - 1]) / rb[k + 1]
        dq[k + 1] = (q[k] + x * dq[k] - rb[k] * dq[k - 1]) / rb[k + 1]
    return q, dq, rb


def _basis_to_monomial(nmax: int, rb: np.ndarray) -> np.ndarray:
    """Monomial coefficient rows of the orthonormal basis (lower triangular)."""
    t = np.zeros((nmax + 1, nmax + 1))
    t[0, 0] = 1.0
    if nmax >= 1:
        t[1, 1] = 1.0 / rb[1]
    for k in range(1, nmax):
        t[k + 1, 1:] = t[k, :-1]
        t[k + 1] -= rb[k] * t[k - 1]
        t[k + 1] /= rb[k + 1]
    return t


def rayleigh_factor(
    n: int,
    weight: WeightSpec,
    op: OperatorSpec,
    max_degree: int | None = None,
) -> tuple[float, Polynomial]:
    """Largest Rayleigh quotient over P_n and its maximizer, unit W-norm.

    ``max_degree`` (default 14) is a guard rail, not a numerical cliff: pass a
    larger value explicitly to study higher degrees.
    """
    cap = DEFAULT_DEGREE_CAP if max_degree is None else max_degree
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n > cap:
        raise ValueError(f"degree {n} above cap {cap}; pass max_degree explicitly to override")

    npoints = n + 4
    if npoints % 2:
        npoints += 1  # even count keeps the origin out of the node set
    x, w = gauss_rule(npoints, weight)
    q, dq, rb = _orthonormal_basis(n, x, weight)

    d = dq.copy()
    if op.is_dunkl and weight.lam > 0:
        # sigma(q_k) = 2 q_k / x for odd k and 0 for even k, by parity of the basis
        for k in range(1, n + 1, 2):
            d[k] += 2.0 * weight.lam * q[k] / x
    a_vals = 1.0 - x * x if (weight.is_gegenbauer and op.damped) else np.ones_like(x)

    s = (d * (w * a_vals)) @ d.T
    g = (q * w) @ q.T
    cond = float(np.linalg.cond(g))
    logger.debug("rayleigh_factor n=%d: Gram condition %.3e", n, cond)
    try:
        vals, vecs = eigh(s, g)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(f"generalized eigensolve failed: {exc}", cond) from exc

    top = vals[-1]
    coeffs = vecs[:, -1] @ _basis_to_monomial(n, rb)
    extremal = Polynomial(coeffs)
    norm = math.sqrt(weighted_inner(extremal, extremal, weight))
    extremal = (1.0 / norm) * extremal
    return float(math.sqrt(top)), extremal
