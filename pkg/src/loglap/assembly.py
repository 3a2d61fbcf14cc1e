"""Closed-form P0 Galerkin assembly of the logarithmic-Laplacian quadratic forms.

For cells A = (a1, a2) left of B = (b1, b2) and a kernel f(|x - y|),

    int_A int_B f(y - x) dy dx = G(b2 - a1) - G(b2 - a2) - G(b1 - a1) + G(b1 - a2)

with G'' = f. The truncated kernels 1/|z| on |z| <= 1 (near) and |z| >= 1
(far) have C^1 piecewise second primitives, so the cutoff at |x - y| = 1 is
resolved exactly. On a uniform mesh every entry depends only on |i - j|.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.linalg import toeplitz

from .errors import NumericError
from .mesh import Mesh, WeightSpec, coeffs_of, weight_cell_integrals
from .special import DimConstants, frac_constant

KERNELS = ("near", "far", "frac")


def _G_near(z: float) -> float:
    if z <= 0.0:
        return 0.0
    if z <= 1.0:
        return z * math.log(z) - z
    return -1.0


def _G_far(z: float) -> float:
    if z <= 1.0:
        return 0.0
    return z * math.log1p(z - 1.0) - (z - 1.0)


def _G_frac(z: float, s: float) -> float:
    if z <= 0.0:
        return 0.0
    return -(z ** (1.0 - 2.0 * s)) / (2.0 * s * (1.0 - 2.0 * s))


def _exterior(width: float, kernel: str, s: float) -> float:
    """int_{x in C} int_{y not in C} kernel for a cell C of the given width, both sides."""
    if kernel == "near":
        return 2.0 * width * (1.0 - math.log(width))
    if kernel == "far":
        return 0.0
    return width ** (1.0 - 2.0 * s) / (s * (1.0 - 2.0 * s))


def kernel_cell_pair(cell_a, cell_b, kernel: str = "near", s: float | None = None) -> float:
    """Double integral of a 1-D kernel over the product of two cells.

    ``kernel`` is ``"near"`` (1/|z| on |z| <= 1), ``"far"`` (1/|z| on |z| >= 1)
    or ``"frac"`` (|z|^{-1-2s}). Cells must be disjoint (touching is fine) or
    identical and of width at most 1. For identical cells the singular kernels
    return the exterior integral over x in C, y outside C (the diagonal
    contribution of the Gagliardo form); ``"far"`` returns its self-integral,
    which vanishes for widths <= 1.
    """
    (a1, a2), (b1, b2) = map(lambda c: (float(c[0]), float(c[1])), (cell_a, cell_b))
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}")
    if kernel == "frac" and (s is None or not 0.0 < s < 0.5):
        raise ValueError("frac kernel needs an order s in (0, 1/2)")
    if max(a2 - a1, b2 - b1) > 1.0 or a2 <= a1 or b2 <= b1:
        raise ValueError("cells must be non-empty with width <= 1")
    if (a1, a2) == (b1, b2):
        return _exterior(a2 - a1, kernel, s)
    if b1 < a1:
        (a1, a2), (b1, b2) = (b1, b2), (a1, a2)
    if b1 < a2:
        raise ValueError(f"cells ({a1}, {a2}) and ({b1}, {b2}) overlap")
    if kernel == "near":
        G = _G_near
    elif kernel == "far":
        G = _G_far
    else:
        G = lambda z: _G_frac(z, s)  # noqa: E731
    return G(b2 - a1) - G(b2 - a2) - G(b1 - a1) + G(b1 - a2)


def _offdiag_profiles(n: int, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Near and far cell-pair integrals for cell offsets k = 1..n-1."""
    k = np.arange(1, n, dtype=float)
    # full 1/|z| integral; linear and log h parts of z ln z - z cancel in the second difference
    with np.errstate(divide="ignore", invalid="ignore"):
        total = h * ((k + 1.0) * np.log1p(1.0 / k) + (k - 1.0) * np.log1p(-1.0 / k))
    total[0] = 2.0 * h * math.log(2.0)
    far = np.zeros_like(total)
    straddle = (k + 1.0) * h > 1.0
    beyond = (k - 1.0) * h >= 1.0
    far[beyond] = total[beyond]
    for idx in np.flatnonzero(straddle & ~beyond):
        kk = k[idx]
        far[idx] = _G_far((kk + 1) * h) - 2.0 * _G_far(kk * h) + _G_far((kk - 1) * h)
    return total - far, far


def _frac_profile(n: int, h: float, s: float) -> np.ndarray:
    k = np.arange(1, n, dtype=float)
    p = 1.0 - 2.0 * s
    with np.errstate(divide="ignore"):
        second_diff = k**p * (np.expm1(p * np.log1p(1.0 / k)) + np.expm1(p * np.log1p(-1.0 / k)))
    return -(h**p) * second_diff / (2.0 * s * p)


def _log_primitive(x: np.ndarray) -> np.ndarray:
    """Odd primitive of ln(1/|x|)."""
    ax = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(ax > 0, ax - ax * np.log(ax), 0.0)
    return np.sign(x) * val


def _power_primitive(x: np.ndarray, s: float) -> np.ndarray:
    """Odd primitive of |x|^{-2s}."""
    p = 1.0 - 2.0 * s
    return np.sign(x) * np.abs(x) ** p / p


@dataclass(frozen=True, eq=False)
class FormMatrices:
    mesh: Mesh
    constants: DimConstants
    E: np.ndarray
    F: np.ndarray
    M1: np.ndarray
    Mw: np.ndarray
    Mlog: np.ndarray
    EL: np.ndarray


@dataclass(frozen=True, eq=False)
class FracForm:
    s: float
    Es: np.ndarray


def assemble_profiles(mesh: Mesh, constants: DimConstants) -> tuple[np.ndarray, np.ndarray]:
    """First rows of the Toeplitz matrices E and F."""
    n, h, c = mesh.n, mesh.h, constants.c_N
    near, far = _offdiag_profiles(n, h)
    e_row = np.concatenate(([c * _exterior(h, "near", 0.0)], -c * near))
    f_row = np.concatenate(([0.0], c * far))
    return e_row, f_row


def assemble(mesh: Mesh, w: WeightSpec, constants: DimConstants) -> FormMatrices:
    if mesh.h > 1.0:
        raise ValueError("assembly requires h <= 1")
    e_row, f_row = assemble_profiles(mesh, constants)
    E = toeplitz(e_row)
    F = toeplitz(f_row)
    M1 = np.eye(mesh.n) * mesh.h
    Mw = np.diag(weight_cell_integrals(w, mesh))
    Mlog = np.diag(np.diff(_log_primitive(mesh.edges)))
    EL = E - F + constants.rho_N * M1
    for m in (E, F, M1, Mw, Mlog, EL):
        m.setflags(write=False)
    return FormMatrices(mesh=mesh, constants=constants, E=E, F=F, M1=M1, Mw=Mw, Mlog=Mlog, EL=EL)


def assemble_frac(mesh: Mesh, s: float, constants: DimConstants) -> FracForm:
    """Fractional Gagliardo form (c_{N,s}/2) int int |u(x)-u(y)|^2 / |x-y|^{1+2s} over R x R."""
    if not 0.0 < s <= 0.25:
        raise ValueError(f"s={s!r} outside (0, 1/4]: P0 basis leaves fractional energy space")
    c = frac_constant(constants.N, s)
    h = mesh.h
    diag = c * _exterior(h, "frac", s)
    row = np.concatenate(([diag], -c * _frac_profile(mesh.n, h, s)))
    Es = toeplitz(row)
    Es.setflags(write=False)
    return FracForm(s=s, Es=Es)


def pitt_weight_integrals(mesh: Mesh, s: float) -> np.ndarray:
    """Cell integrals of |x|^{-2s}."""
    return np.diff(_power_primitive(mesh.edges, s))


def quad_oracle(
    f: Callable[[float, float], float],
    region: tuple[tuple[float, float], tuple[float, float]],
    tol: float = 1e-12,
    breaks: Callable[[float], list] | None = None,
    outer_points: list | None = None,
) -> float:
    """Nested adaptive quadrature of f(x, y) over a rectangle.

    ``breaks(x)`` lists y-locations where the inner integrand is singular or
    discontinuous (diagonal, cutoffs, origin); ``outer_points`` does the same
    for the outer integrand. Raises NumericError carrying the best estimate
    when the subdivision budget is exhausted.
    """
    (x0, x1), (y0, y1) = region

    def inner(x):
        pts = []
        for p in breaks(x) if breaks else []:
            if y0 < p < y1:
                pts.append(p)
                continue
            # near-singular just outside the interval: grade geometrically from the closest end
            edge, inward = (y0, 1.0) if p <= y0 else (y1, -1.0)
            dist = abs(edge - p)
            if dist == 0.0:
                continue
            step = dist
            while step < y1 - y0:
                pts.append(edge + inward * step)
                step *= 2.0
        # the outer rule may probe x within one ulp of a singular edge; inner
        # round-off there is local and the outer error estimate absorbs it
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(lambda y: f(x, y), y0, y1, points=pts or None,
                                    epsabs=1e-15, epsrel=min(tol, 1e-13), limit=400)
        return val

    # a break point within round-off of an endpoint only creates a degenerate panel
    margin = 1e-12 * (x1 - x0)
    opts = [p for p in (outer_points or []) if x0 + margin < p < x1 - margin]
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(inner, x0, x1, points=opts or None,
                                      epsabs=tol * 1e-2, epsrel=tol, limit=400)
        except integrate.IntegrationWarning as exc:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                best, _ = integrate.quad(inner, x0, x1, points=opts or None, limit=400)
            raise NumericError(f"quadrature did not converge: {exc}", stage="quadrature",
                               estimate=best) from None
    return val


def _pair_oracle(cell_a, cell_b, kernel: str, s: float | None, tol: float) -> float:
    def kern(x, y):
        z = abs(x - y)
        if z == 0.0:
            return 0.0
        if kernel == "near":
            return 1.0 / z if z <= 1.0 else 0.0
        if kernel == "far":
            return 1.0 / z if z >= 1.0 else 0.0
        return z ** (-1.0 - 2.0 * s)

    def breaks(x):
        return [x, x - 1.0, x + 1.0]

    if tuple(cell_a) != tuple(cell_b):
        (b1, b2) = cell_b
        return quad_oracle(kern, (tuple(cell_a), tuple(cell_b)), tol, breaks,
                           [b1, b2, b1 - 1, b2 - 1, b1 + 1, b2 + 1])
    a1, a2 = cell_a
    if kernel == "far":
        return quad_oracle(kern, ((a1, a2), (a1, a2)), tol, breaks, [a1 + 1, a2 - 1])
    span = 1.0 if kernel == "near" else 60.0
    total = 0.0
    for ys in ((a1 - span, a1), (a2, a2 + span)):
        total += quad_oracle(kern, ((a1, a2), ys), tol, breaks, [ys[0] + 1, ys[1] - 1])
    if kernel == "frac":
        # analytic tail beyond the truncated span on both sides
        width = a2 - a1
        tail = lambda d: (d ** (1 - 2 * s)) / (2 * s * (1 - 2 * s))  # noqa: E731
        total += 2.0 * (tail(span + width) - tail(span))
    return total


def oracle_matrices(mesh: Mesh, constants: DimConstants, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """E and F assembled entry by entry from adaptive quadrature of the kernels."""
    n, c = mesh.n, constants.c_N
    E = np.empty((n, n))
    F = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            ci, cj = mesh.cell(i), mesh.cell(j)
            near = _pair_oracle(ci, cj, "near", None, tol)
            far = _pair_oracle(ci, cj, "far", None, tol)
            E[i, j] = E[j, i] = c * near if i == j else -c * near
            F[i, j] = F[j, i] = c * far
    return E, F


def sandwich_check(mats: FormMatrices, u, constants: DimConstants, rtol: float = 1e-10) -> bool:
    """Both sides of E - (c|Omega| - rho)||u||^2 <= E_L <= E + (c|Omega| + rho)||u||^2."""
    x = coeffs_of(u)
    e = x @ mats.E @ x
    el = x @ mats.EL @ x
    l2 = x @ mats.M1 @ x
    c_omega = constants.c_N * mats.mesh.domain.measure
    lower = e - (c_omega - constants.rho_N) * l2
    upper = e + (c_omega + constants.rho_N) * l2
    slack = rtol * (abs(e) + c_omega * l2 + abs(constants.rho_N) * l2)
    return bool(lower <= el + slack and el <= upper + slack)


def dump_matrix(path, matrix: np.ndarray, mesh: Mesh, constants: DimConstants) -> None:
    """Dense row-major text dump with header line ``n N h``."""
    with open(path, "w") as fh:
        fh.write(f"{mesh.n} {constants.N} {mesh.h:.17g}\n")
        for row in np.asarray(matrix):
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def load_matrix(path) -> tuple[int, int, float, np.ndarray]:
    with open(path) as fh:
        n, N, h = fh.readline().split()
        data = np.loadtxt(fh, ndmin=2)
    return int(n), int(N), float(h), data
