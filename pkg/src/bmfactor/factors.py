"""Closed-form and determinant-pencil Bernstein-Markov factors with extremal polynomials.

Factor values follow the closed forms where a parity/branch argument settles the
problem, and otherwise come from the largest positive root of a moment pencil
det(P + t Q).  The raw pencil entries as written are asymmetric in (i, j), but
the moment recurrences make them exactly symmetric in real arithmetic, so the
symmetrized pencil is solved as a symmetric-definite problem; for small sizes a
QZ solve of the raw pencil cross-checks the root set.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from math import sqrt

import numpy as np
from scipy.linalg import eig, eigh

from .core import OperatorSpec, Polynomial, WeightSpec
from .orthopoly import gegenbauer_poly, hermite_poly
from .special import moment_table

_SYMMETRY_CHECK_SIZE = 4  # validate symmetrization against QZ up to this pencil size
_TIE_REL_TOL = 1e-9


class Branch(Enum):
    EVEN_CLOSED_FORM = "even_closed_form"
    ODD_PENCIL_ROOT = "odd_pencil_root"
    DUNKL_CLOSED_FORM = "dunkl_closed_form"
    MAX_OF_BOTH = "max_of_both"


@dataclass(frozen=True)
class Pencil:
    """Symmetric pair (P, Q) for det(P + t Q) = 0, with the raw unsymmetrized entries kept.

    Pencils coming from the moment builders also remember their weight
    parameters, which lets the root solver re-derive the entries in long
    double: at unfriendly parameters cond(Q) reaches 1e10..1e12 and the root
    of the double-rounded entries can sit ~1e-5 away from the true root.
    """

    p: np.ndarray
    q: np.ndarray
    p_raw: np.ndarray
    q_raw: np.ndarray
    kind: str | None = None  # "hermite" or "gegenbauer" for builder-made pencils
    lam: float = 0.0
    mu: float = 0.0

    @property
    def size(self) -> int:
        return self.p.shape[0]


@dataclass(frozen=True)
class FactorResult:
    factor: float
    factor_sq: float
    branch: Branch
    extremal: Polynomial
    n: int
    weight: WeightSpec
    operator: OperatorSpec


def build_pencil_F(n_odd: int, lam: float) -> Pencil:
    """Pencil of the odd-degree extremal system for |x|^(2 lam) exp(-x^2) and d/dx.

    Entry (i, j) of P + t Q is (2j+1)(2j+2 lam) d_(2i+2j) + (t - 4j - 2) d_(2i+2j+2)
    with d the even weight moments; i, j = 0 .. (n-1)/2.  The moment recurrence
    d_(2s+2) = (s + lam + 1/2) d_(2s) collapses the P entry to the equivalent
    -(2i+1)(2j+1) d_(2i+2j), which is how it is evaluated: the textbook form
    subtracts two nearly equal products and would shed digits, while the
    collapsed form is cancellation-free (and manifestly symmetric).  The raw
    textbook entries are kept alongside for validation.
    """
    if n_odd % 2 == 0:
        raise ValueError(f"pencil is defined for odd degrees, got {n_odd}")
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    m = (n_odd - 1) // 2
    table = moment_table(WeightSpec.hermite(lam), 4 * m + 6, normalized=True)
    d = [table.moment(2 * s) for s in range(2 * m + 3)]
    p = np.empty((m + 1, m + 1))
    p_raw = np.empty((m + 1, m + 1))
    q = np.empty((m + 1, m + 1))
    for i in range(m + 1):
        for j in range(m + 1):
            p[i, j] = -(2 * i + 1) * (2 * j + 1) * d[i + j]
            p_raw[i, j] = (2 * j + 1) * (2 * j + 2 * lam) * d[i + j] - (4 * j + 2) * d[i + j + 1]
            q[i, j] = d[i + j + 1]
    return Pencil(p, (q + q.T) / 2.0, p_raw, q, kind="hermite", lam=lam)


def build_pencil_G(n: int, lam: float, mu: float) -> Pencil:
    """Pencil of the odd-part extremal system for the [-1,1] weight and sqrt(1-x^2) d/dx.

    Entry (i, j) is (2j+1)(2j+2 lam) c_(2i+2j) + [t - (2j+1)(2j+2 lam+2 mu+1)] c_(2i+2j+2)
    with c the even weight moments; the size is n/2 for even n and (n+1)/2 for odd n.
    As in ``build_pencil_F``, the moment recurrence collapses the P entry to a
    symmetric cancellation-free product, which is the form actually evaluated;
    the raw textbook entries ride along for validation.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    if mu <= -0.5:
        raise ValueError("mu must be > -1/2")
    m = (n - 2) // 2 if n % 2 == 0 else (n - 1) // 2
    table = moment_table(WeightSpec.gegenbauer(lam, mu), 4 * m + 6, normalized=True)
    c = [table.moment(2 * s) for s in range(2 * m + 3)]
    p = np.empty((m + 1, m + 1))
    p_raw = np.empty((m + 1, m + 1))
    q = np.empty((m + 1, m + 1))
    for i in range(m + 1):
        for j in range(m + 1):
            # c_(2s) - c_(2s+2) = c_(2s) (mu + 1/2)/(s + lam + mu + 1) collapses the
            # entry to -(2i+1)(2j+1)(c_(2i+2j) - c_(2i+2j+2)), evaluated without the
            # near-total cancellation of the two textbook products
            p[i, j] = -(2 * i + 1) * (2 * j + 1) * c[i + j] \
                * (mu + 0.5) / (i + j + lam + mu + 1.0)
            p_raw[i, j] = (2 * j + 1) * (2 * j + 2 * lam) * c[i + j] \
                - (2 * j + 1) * (2 * j + 2 * lam + 2 * mu + 1) * c[i + j + 1]
            q[i, j] = c[i + j + 1]
    return Pencil(p, (q + q.T) / 2.0, p_raw, q, kind="gegenbauer", lam=lam, mu=mu)


def _positive_threshold(pencil: Pencil) -> float:
    return 1e-10 * np.linalg.norm(pencil.p, 2) / np.linalg.norm(pencil.q, 2)


def _solve_lu(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Partial-pivot solve in the matrices' own (long double) dtype."""
    a = a.copy()
    b = b.copy()
    size = len(b)
    for k in range(size - 1):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        for i in range(k + 1, size):
            f = a[i, k] / a[k, k]
            a[i, k + 1:] -= f * a[k, k + 1:]
            b[i] -= f * b[k]
    x = np.zeros(size, dtype=a.dtype)
    for i in range(size - 1, -1, -1):
        x[i] = (b[i] - a[i, i + 1:] @ x[i + 1:]) / a[i, i]
    return x


def _long_double_pencil(pencil: Pencil) -> tuple[np.ndarray, np.ndarray] | None:
    """(-P, Q) rebuilt in long double from the weight parameters, when known.

    Normalized even moments have pure product forms, d_(2s)/d_0 = prod (k+lam+1/2)
    and c_(2s)/c_0 = prod (k+lam+1/2)/(k+lam+mu+1), so no special functions and
    no cancellation are involved at any precision.
    """
    if pencil.kind is None:
        return None
    ld = np.longdouble
    size = pencil.size
    lam, mu = ld(pencil.lam), ld(pencil.mu)
    mom = np.ones(2 * size + 1, dtype=np.longdouble)
    for s in range(2 * size):
        step = (s + lam + 0.5) / (s + lam + mu + 1.0) if pencil.kind == "gegenbauer" else s + lam + 0.5
        mom[s + 1] = mom[s] * step
    a = np.empty((size, size), dtype=np.longdouble)
    b = np.empty((size, size), dtype=np.longdouble)
    for i in range(size):
        for j in range(size):
            if pencil.kind == "gegenbauer":
                diff = mom[i + j] * (mu + 0.5) / (i + j + lam + mu + 1.0)
            else:
                diff = mom[i + j]
            a[i, j] = (2 * i + 1) * (2 * j + 1) * diff
            b[i, j] = mom[i + j + 1]
    return a, b


def _refine_pair(pencil: Pencil, t: float, v: np.ndarray) -> tuple[float, np.ndarray]:
    """Sharpen an eigenpair of -P v = t Q v by inverse iteration in long double.

    The double-precision symmetric-definite solve loses digits with the Hankel
    conditioning of Q at unfriendly parameters; rebuilding the entries and
    iterating in long double recovers the root to roughly eps_80bit * cond(Q).
    """
    rebuilt = _long_double_pencil(pencil)
    if rebuilt is not None:
        a, b = rebuilt
    else:
        a = (-pencil.p).astype(np.longdouble)
        b = pencil.q.astype(np.longdouble)
    t_ld = np.longdouble(t)
    v_ld = v.astype(np.longdouble)
    v_ld /= np.sqrt(v_ld @ b @ v_ld)
    for _ in range(3):
        with np.errstate(all="ignore"):
            z = _solve_lu(a - t_ld * b, b @ v_ld)
            if not np.all(np.isfinite(z)):
                break
            bnorm_sq = z @ b @ z
            if not np.isfinite(bnorm_sq) or bnorm_sq <= 0:
                break
            cand_v = z / np.sqrt(bnorm_sq)
            cand_t = (cand_v @ a @ cand_v) / (cand_v @ b @ cand_v)
        if not np.isfinite(cand_t):
            break
        t_ld, v_ld = cand_t, cand_v
    return float(t_ld), v_ld.astype(float)


def _solve_pencil(pencil: Pencil) -> tuple[np.ndarray, np.ndarray]:
    """All roots of det(P + t Q) with eigenvectors, as the symmetric-definite problem -P v = t Q v."""
    scale = 1.0 / np.sqrt(np.diag(pencil.q))
    d = np.diag(scale)
    q_scaled = d @ pencil.q @ d
    try:
        vals, vecs = eigh(-d @ pencil.p @ d, q_scaled)
    except np.linalg.LinAlgError as exc:
        cond = float(np.linalg.cond(q_scaled))
        raise RuntimeError(
            f"pencil eigensolve failed, Q numerically indefinite "
            f"(estimated condition {cond:.3e}): {exc}") from exc
    vecs = scale[:, None] * vecs

    if pencil.size <= _SYMMETRY_CHECK_SIZE:
        raw = eig(-pencil.p_raw, pencil.q_raw, right=False)
        raw = np.sort(raw.real)
        ref = np.sort(vals)
        tol = 1e-8 * max(1.0, np.max(np.abs(ref)))
        if np.max(np.abs(raw - ref)) > tol:
            warnings.warn(
                "symmetrized pencil roots disagree with the raw QZ roots; using the raw result",
                RuntimeWarning,
            )
            vals, vecs_c = eig(-pencil.p_raw, pencil.q_raw)
            order = np.argsort(vals.real)
            vals = vals.real[order]
            vecs = vecs_c.real[:, order]
    return vals, vecs


def _top_positive(pencil: Pencil) -> tuple[float, np.ndarray] | None:
    vals, vecs = _solve_pencil(pencil)
    thr = _positive_threshold(pencil)
    idx = [i for i, t in enumerate(vals) if t > thr]
    if not idx:
        return None
    best = max(idx, key=lambda i: vals[i])
    return _refine_pair(pencil, float(vals[best]), vecs[:, best])


def pencil_largest_positive_root(pencil: Pencil) -> float | None:
    """Largest strictly positive root of det(P + t Q), or None when no positive root exists."""
    top = _top_positive(pencil)
    return None if top is None else top[0]


def _odd_polynomial(vec: np.ndarray) -> Polynomial:
    coeffs = [0.0] * (2 * len(vec))
    for j, a in enumerate(vec):
        coeffs[2 * j + 1] = a
    # monic for a deterministic sign/scale; fall back to the largest entry if
    # the eigenvector happens to carry a negligible leading coefficient
    lead = vec[-1] if abs(vec[-1]) > 1e-12 * np.max(np.abs(vec)) else vec[np.argmax(np.abs(vec))]
    return (1.0 / lead) * Polynomial(coeffs)


def factor_hermite_ddx(n: int, lam: float) -> FactorResult:
    """M_n for |x|^(2 lam) exp(-x^2) under d/dx: sqrt(2n) at even n, pencil root at odd n."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    weight = WeightSpec.hermite(lam)
    op = OperatorSpec.ddx()
    if n % 2 == 0:
        fsq = 2.0 * n
        return FactorResult(sqrt(fsq), fsq, Branch.EVEN_CLOSED_FORM, hermite_poly(n, lam), n, weight, op)
    if n == 1:
        fsq = 2.0 / (2.0 * lam + 1.0)
        return FactorResult(sqrt(fsq), fsq, Branch.ODD_PENCIL_ROOT, Polynomial((0.0, 1.0)), n, weight, op)
    top = _top_positive(build_pencil_F(n, lam))
    if top is None:
        raise RuntimeError("odd-degree pencil unexpectedly has no positive root")
    nu, vec = top
    return FactorResult(sqrt(nu), nu, Branch.ODD_PENCIL_ROOT, _odd_polynomial(vec), n, weight, op)


def factor_gegenbauer_ddx(n: int, lam: float, mu: float) -> FactorResult:
    """M_n for |x|^(2 lam)(1-x^2)^(mu-1/2) under sqrt(1-x^2) d/dx.

    The even-polynomial branch has the closed value n(n+2 lam+2 mu) (even n) or
    (n-1)(n+2 lam+2 mu-1) (odd n); the odd-polynomial branch is the largest
    positive pencil root, taken as 0 when none exists.  The factor is the max.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    if mu <= -0.5:
        raise ValueError("mu must be > -1/2")
    weight = WeightSpec.gegenbauer(lam, mu)
    op = OperatorSpec.ddx(damped=True)

    if n == 1:
        fsq = (2.0 * mu + 1.0) / (2.0 * lam + 1.0)
        return FactorResult(sqrt(fsq), fsq, Branch.ODD_PENCIL_ROOT, Polynomial((0.0, 1.0)), n, weight, op)

    even_degree = n if n % 2 == 0 else n - 1
    closed = float(even_degree * (even_degree + 2 * lam + 2 * mu))
    top = _top_positive(build_pencil_G(n, lam, mu))
    nu = 0.0 if top is None else top[0]

    if abs(nu - closed) <= _TIE_REL_TOL * max(abs(nu), abs(closed)):
        fsq, branch = closed, Branch.MAX_OF_BOTH
        extremal = gegenbauer_poly(even_degree, lam, mu)
    elif nu > closed:
        fsq, branch = nu, Branch.ODD_PENCIL_ROOT
        extremal = _odd_polynomial(top[1])
    else:
        fsq, branch = closed, Branch.EVEN_CLOSED_FORM
        extremal = gegenbauer_poly(even_degree, lam, mu)
    return FactorResult(sqrt(fsq), fsq, branch, extremal, n, weight, op)


def factor_hermite_dunkl(n: int, lam: float) -> FactorResult:
    """M_n for |x|^(2 lam) exp(-x^2) under the Dunkl operator, all closed-form."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    weight = WeightSpec.hermite(lam)
    op = OperatorSpec.dunkl()
    if n % 2:
        fsq = 2.0 * (n + 2 * lam)
        extremal = hermite_poly(n, lam)
    elif lam <= 0.5:
        fsq = 2.0 * n
        extremal = hermite_poly(n, lam)
    else:
        fsq = 2.0 * (n + 2 * lam - 1)
        extremal = hermite_poly(n - 1, lam)
    return FactorResult(sqrt(fsq), fsq, Branch.DUNKL_CLOSED_FORM, extremal, n, weight, op)


def dunkl_gegenbauer_threshold(lam: float, mu: float) -> float:
    """Degree threshold n0 = (lam - 1/2)(2 mu - 1) where the even-degree branch switches."""
    return (lam - 0.5) * (2.0 * mu - 1.0)


def factor_gegenbauer_dunkl(n: int, lam: float, mu: float) -> FactorResult:
    """M_n for |x|^(2 lam)(1-x^2)^(mu-1/2) under sqrt(1-x^2) D_lam, all closed-form."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    if mu <= -0.5:
        raise ValueError("mu must be > -1/2")
    weight = WeightSpec.gegenbauer(lam, mu)
    op = OperatorSpec.dunkl(damped=True)
    base = float(n * (n + 2 * lam + 2 * mu))
    if n % 2:
        fsq = base + 4.0 * lam * mu
        extremal = gegenbauer_poly(n, lam, mu)
    else:
        n0 = dunkl_gegenbauer_threshold(lam, mu)
        if (2 * lam - 1) * (2 * mu - 1) > 4 and n < n0:
            fsq = base + 2.0 * (n0 - n)
            extremal = gegenbauer_poly(n - 1, lam, mu)
        else:
            fsq = base
            extremal = gegenbauer_poly(n, lam, mu)
    return FactorResult(sqrt(fsq), fsq, Branch.DUNKL_CLOSED_FORM, extremal, n, weight, op)
