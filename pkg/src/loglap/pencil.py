"""Symmetric-definite reduction of the indefinite pencil EL u = lambda Mw u.

With an SPD shift sigma (EL - sigma Mw = L L^T) the pencil becomes the
standard symmetric problem S w = nu w, S = L^{-1} Mw L^{-T}, and every
eigenpair maps back through lambda = sigma + 1/nu, u = L^{-T} w. Pairs with
nu > 0 have u^T Mw u > 0 and form the ordered spectrum lambda_1 <= lambda_2 <= ...
on the constraint manifold {u^T Mw u = 1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cholesky, solve_triangular

from .errors import NumericError
from .mesh import FunctionVec, Mesh, coeffs_of

logger = logging.getLogger(__name__)

NULL_NU = 1e-14


@dataclass(frozen=True, eq=False)
class EigenResult:
    lambdas: np.ndarray
    vectors: np.ndarray  # columns, J-normalized
    residuals: np.ndarray
    negative_branch: np.ndarray
    shift_used: float
    mesh: Mesh | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.lambdas)

    def vector(self, k: int) -> np.ndarray:
        """Eigenvector of the k-th eigenvalue, k counted from 1."""
        return self.vectors[:, k - 1]

    def function(self, k: int) -> FunctionVec:
        if self.mesh is None:
            raise ValueError("result carries no mesh")
        return FunctionVec(self.mesh, self.vector(k))

    def truncated(self, kmax: int) -> "EigenResult":
        return EigenResult(self.lambdas[:kmax], self.vectors[:, :kmax], self.residuals[:kmax],
                           self.negative_branch, self.shift_used, self.mesh)


def is_spd(C: np.ndarray) -> bool:
    try:
        cholesky(C, lower=True)
    except np.linalg.LinAlgError:
        return False
    return True


def _shift_candidates(hint: float, attempts: int):
    """hint, then hint scaled by 2^-k and 2^k, the midpoint toward zero, and the mirror."""
    base = hint if hint != 0 else -1.0
    yield base
    for k in range(1, attempts):
        yield base * 2.0**-k
        yield base * 2.0**k
        yield base * 0.75 * 2.0**-k
        yield -base * 2.0**-k


def find_spd_shift(EL, Mw, hint: float = -1.0, max_attempts: int = 64) -> float:
    """A sigma with EL - sigma Mw positive definite, searched outward from ``hint``."""
    EL = np.asarray(EL, dtype=float)
    Mw = np.asarray(Mw, dtype=float)
    tried = []
    for cand in _shift_candidates(float(hint), max_attempts):
        if len(tried) >= max_attempts:
            break
        if cand in tried:
            continue
        tried.append(cand)
        if is_spd(EL - cand * Mw):
            return float(cand)
    raise NumericError("pencil not definitizable at this discretization: "
                       f"no SPD shift among {len(tried)} candidates around {hint:g}", stage="shift")


def _orient(v: np.ndarray) -> np.ndarray:
    total = v.sum()
    scale = np.max(np.abs(v))
    if abs(total) > 1e-10 * scale * v.size:
        return v if total > 0 else -v
    lead = v[np.argmax(np.abs(v) > 1e-8 * scale)]
    return v if lead > 0 else -v


def solve(EL, Mw, sigma: float, mesh: Mesh | None = None, eig=None) -> EigenResult:
    """All eigenpairs of EL u = lambda Mw u via the shifted Cholesky reduction.

    ``eig`` may replace the dense symmetric eigensolver (``numpy.linalg.eigh``
    by default, :func:`jacobi_eigh` as an alternative).
    """
    EL = np.asarray(EL, dtype=float)
    Mw = np.asarray(Mw, dtype=float)
    try:
        L = cholesky(EL - sigma * Mw, lower=True)
    except np.linalg.LinAlgError:
        raise NumericError(f"EL - sigma*Mw is not positive definite for sigma={sigma:g}; re-shift",
                           stage="factorization") from None
    X = solve_triangular(L, Mw, lower=True)
    S = solve_triangular(L, X.T, lower=True)
    S = 0.5 * (S + S.T)
    nu, W = (eig or np.linalg.eigh)(S)
    U = solve_triangular(L.T, W, lower=False)

    null = np.abs(nu) <= NULL_NU * max(1.0, float(np.max(np.abs(nu))))
    if np.any(null):
        logger.warning("dropping %d null direction(s) of the weight (u^T Mw u = 0)", int(null.sum()))
    pos = np.flatnonzero((nu > 0) & ~null)
    neg = np.flatnonzero((nu < 0) & ~null)
    pos = pos[np.argsort(-nu[pos])]  # ascending lambda
    lambdas = sigma + 1.0 / nu[pos]
    vecs = U[:, pos]
    J = np.einsum("ik,ij,jk->k", vecs, Mw, vecs)
    vecs = vecs / np.sqrt(J)
    vecs = np.column_stack([_orient(vecs[:, k]) for k in range(vecs.shape[1])]) if pos.size else vecs
    norm_EL = np.max(np.sum(np.abs(EL), axis=1))
    resid = EL @ vecs - (Mw @ vecs) * lambdas
    residuals = np.max(np.abs(resid), axis=0) / (norm_EL * np.max(np.abs(vecs), axis=0))
    negative = np.sort(sigma + 1.0 / nu[neg])
    return EigenResult(lambdas=lambdas, vectors=vecs, residuals=residuals,
                       negative_branch=negative, shift_used=float(sigma), mesh=mesh)


def rayleigh(EL, Mw, u) -> float:
    x = coeffs_of(u)
    J = float(x @ np.asarray(Mw) @ x)
    if J <= 0:
        raise ValueError("u lies outside the positive cone of the weight (u^T Mw u <= 0)")
    return float(x @ np.asarray(EL) @ x) / J


def jacobi_eigh(A: np.ndarray, tol: float = 1e-13, max_sweeps: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps until the off-diagonal Frobenius norm drops below ``tol * ||A||_F``.
    Returns ascending eigenvalues and orthonormal eigenvector columns.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    target = tol * np.linalg.norm(A)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        if sweep == max_sweeps:
            raise NumericError("Jacobi sweeps did not converge", stage="eigensolver")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * ap - s * aq, s * ap + c * aq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * vp - s * vq, s * vp + c * vq
    w = np.diag(A)
    order = np.argsort(w)
    return w[order], V[:, order]
