"""Characterization inequalities whose equality cases pick out the orthogonal polynomials.

For any p of degree at most n the gap (right side minus left side) equals the
squared weighted norm of A D^2 p + B D p + lambda_n^2 p, so the gap is
nonnegative and vanishes exactly on multiples of the degree-n orthogonal
polynomial.  The reflection and sigma terms make the identity exact for both
parities; with lambda = 0 all of them drop and the classical derivative bound
in terms of ||p||, ||p''|| remains.  Every term is computed through the moment
table bilinear forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Polynomial, WeightFamily, WeightSpec, reflect
from .dunkl import dunkl_apply, dunkl_laplacian, mul_by_one_minus_x2, sigma
from .oracle import weighted_inner
from .orthopoly import eigenvalue_sq

EQUALITY_REL_TOL = 1e-8


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    rhs: float
    gap: float
    terms: dict[str, float]
    equality: bool

    @property
    def scale(self) -> float:
        return abs(self.lhs) + abs(self.rhs)


def _report(lhs: float, rhs: float, terms: dict[str, float], tol: float) -> InequalityReport:
    gap = rhs - lhs
    return InequalityReport(lhs, rhs, gap, terms, abs(gap) <= tol * (abs(lhs) + abs(rhs)))


def gegenbauer_inequality(p: Polynomial, n: int, lam: float, mu: float,
                          tol: float = EQUALITY_REL_TOL) -> InequalityReport:
    """(2 lam_n^2 - 2 mu - 1) ||sqrt(1-x^2) D p||^2 against the curvature side.

    The right side carries 2 lam (2 mu + 1) <(1-x^2) p', p'(-.)>,
    2 lam^3 (2 mu + 1) ||sqrt(1-x^2) sigma(p)||^2,
    4 lam^2 (2 mu + 1) <(1-x^2) sigma(p), p'>, lam_n^4 ||p||^2 and
    ||(1-x^2) D^2 p||^2; equality holds exactly at multiples of the degree-n
    generalized Gegenbauer polynomial.
    """
    if p.degree is not None and p.degree > n:
        raise ValueError(f"polynomial degree {p.degree} exceeds n={n}")
    w = WeightSpec.gegenbauer(lam, mu)
    lam_n2 = eigenvalue_sq(WeightFamily.GENERALIZED_GEGENBAUER, n, lam, mu)
    dp = dunkl_apply(p, lam)
    d2p = dunkl_laplacian(p, lam)
    pp = p.derivative()
    sg = sigma(p)
    terms = {
        "eigenvalue_sq": lam_n2,
        "damped_dunkl_norm_sq": weighted_inner(dp, dp, w, with_a=True),
        "damped_sigma_norm_sq": weighted_inner(sg, sg, w, with_a=True),
        "reflected_derivative_inner": weighted_inner(pp, reflect(pp), w, with_a=True),
        "sigma_derivative_inner": weighted_inner(sg, pp, w, with_a=True),
        "norm_sq": weighted_inner(p, p, w),
        "weighted_laplacian_norm_sq": weighted_inner(
            mul_by_one_minus_x2(d2p), mul_by_one_minus_x2(d2p), w
        ),
    }
    mu1 = 2 * mu + 1
    lhs = (2 * lam_n2 - 2 * mu - 1) * terms["damped_dunkl_norm_sq"]
    rhs = 2 * lam * mu1 * terms["reflected_derivative_inner"] \
        + 2 * lam**3 * mu1 * terms["damped_sigma_norm_sq"] \
        + 4 * lam**2 * mu1 * terms["sigma_derivative_inner"] \
        + lam_n2**2 * terms["norm_sq"] + terms["weighted_laplacian_norm_sq"]
    return _report(lhs, rhs, terms, tol)


def hermite_inequality(p: Polynomial, n: int, lam: float,
                       tol: float = EQUALITY_REL_TOL) -> InequalityReport:
    """(2 lam_n^2 - 2) ||D p||^2 against 4 lam <p', p'(-.)> + 4 lam^3 ||sigma(p)||^2
    + 8 lam^2 <sigma(p), p'> + lam_n^4 ||p||^2 + ||D^2 p||^2.

    Equality holds exactly at multiples of the degree-n generalized Hermite
    polynomial; at lam = 0 this is the classical
    ||p'||^2 <= (2n^2/(2n-1)) ||p||^2 + ||p''||^2 / (4n-2).
    """
    if p.degree is not None and p.degree > n:
        raise ValueError(f"polynomial degree {p.degree} exceeds n={n}")
    w = WeightSpec.hermite(lam)
    lam_n2 = eigenvalue_sq(WeightFamily.GENERALIZED_HERMITE, n, lam)
    dp = dunkl_apply(p, lam)
    d2p = dunkl_laplacian(p, lam)
    pp = p.derivative()
    sg = sigma(p)
    terms = {
        "eigenvalue_sq": lam_n2,
        "dunkl_norm_sq": weighted_inner(dp, dp, w),
        "sigma_norm_sq": weighted_inner(sg, sg, w),
        "reflected_derivative_inner": weighted_inner(pp, reflect(pp), w),
        "sigma_derivative_inner": weighted_inner(sg, pp, w),
        "norm_sq": weighted_inner(p, p, w),
        "laplacian_norm_sq": weighted_inner(d2p, d2p, w),
    }
    lhs = (2 * lam_n2 - 2) * terms["dunkl_norm_sq"]
    rhs = 4 * lam * terms["reflected_derivative_inner"] \
        + 4 * lam**3 * terms["sigma_norm_sq"] \
        + 8 * lam**2 * terms["sigma_derivative_inner"] \
        + lam_n2**2 * terms["norm_sq"] + terms["laplacian_norm_sq"]
    return _report(lhs, rhs, terms, tol)
