"""Numeric Orlicz toolkit: Phi-functions, modulars, Luxemburg norms, conjugates.

All functions act on piecewise-constant mesh functions, so every modular is a
finite sum ``sum_i zeta(|u_i|) * h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh

from .errors import ConfigurationError, NumericError
from .mesh import FunctionVec, coeffs_of

DEFAULT_BETA = 0.5
LOG_GRID = np.logspace(-6, 6, 241)


@dataclass(frozen=True, eq=False)
class PhiFunctionSpec:
    """A Phi-function t -> [0, inf] with a readable name.

    Build instances with the module-level constructors (:func:`phi`,
    :func:`eta`, :func:`psi`, :func:`power`, :func:`conjugate_of`,
    :func:`square_composed_of`) rather than directly.
    """

    name: str
    scalar: Callable[[float], float] = field(repr=False)
    params: dict = field(default_factory=dict)
    vectorized: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    def __call__(self, t):
        if np.ndim(t) == 0:
            return float(self.scalar(float(t)))
        arr = np.asarray(t, dtype=float)
        if self.vectorized is not None:
            return self.vectorized(arr)
        uniq, inv = np.unique(arr, return_inverse=True)
        return np.array([self.scalar(float(v)) for v in uniq])[inv].reshape(arr.shape)


def _overflow_safe(fn):
    def wrapped(t):
        with np.errstate(over="ignore", invalid="ignore"):
            return fn(t)
    return wrapped


def _guard(fn):
    def wrapped(t):
        try:
            return fn(t)
        except OverflowError:
            return math.inf
    return wrapped


def phi() -> PhiFunctionSpec:
    """t^2 ln(e + t), the optimal Orlicz target of the energy space."""
    return PhiFunctionSpec(
        "phi",
        _guard(lambda t: t * t * math.log(math.e + t)),
        {},
        _overflow_safe(lambda t: t * t * np.log(math.e + t)),
    )


def eta(beta: float = DEFAULT_BETA) -> PhiFunctionSpec:
    """t^2 (ln(e + t))^beta."""
    _check_beta(beta)
    return PhiFunctionSpec(
        "eta",
        _guard(lambda t: t * t * math.log(math.e + t) ** beta),
        {"beta": beta},
        _overflow_safe(lambda t: t * t * np.log(math.e + t) ** beta),
    )


def psi(beta: float = DEFAULT_BETA) -> PhiFunctionSpec:
    """eta(sqrt(t)) = t (ln(e + sqrt(t)))^beta."""
    _check_beta(beta)
    return PhiFunctionSpec(
        "psi",
        _guard(lambda t: t * math.log(math.e + math.sqrt(t)) ** beta),
        {"beta": beta},
        _overflow_safe(lambda t: t * np.log(math.e + np.sqrt(t)) ** beta),
    )


def power(p: float) -> PhiFunctionSpec:
    if not p >= 1:
        raise ConfigurationError(f"power Phi-function needs p >= 1, got {p}")
    return PhiFunctionSpec("power", _guard(lambda t: t**p), {"p": p},
                           _overflow_safe(lambda t: np.power(t, p)))


def square_composed_of(ref: PhiFunctionSpec) -> PhiFunctionSpec:
    """t -> ref(t^2)."""
    scalar = lambda t: ref.scalar(t * t)  # noqa: E731
    vec = (lambda t: ref.vectorized(t * t)) if ref.vectorized is not None else None
    return PhiFunctionSpec("square-composed-of", scalar, {"ref": ref}, vec)


def conjugate_of(ref: PhiFunctionSpec) -> PhiFunctionSpec:
    """Numerical Young conjugate of ``ref``; evaluations are memoized."""
    cached = lru_cache(maxsize=None)(lambda s: young_conjugate(ref, s))
    return PhiFunctionSpec("conjugate-of", cached, {"ref": ref})


def _check_beta(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise ConfigurationError(f"beta must lie in (0, 1), got {beta}")


def by_name(name: str, beta: float = DEFAULT_BETA) -> PhiFunctionSpec:
    """Lookup used by the CLI config (``phi``, ``eta``, ``psi``, ``psi_star``, ``theta``)."""
    table = {
        "phi": phi,
        "eta": lambda: eta(beta),
        "psi": lambda: psi(beta),
        "psi_star": lambda: conjugate_of(psi(beta)),
        "theta": lambda: square_composed_of(conjugate_of(psi(beta))),
    }
    if name not in table:
        raise ConfigurationError(f"unknown Phi-function {name!r}; choose from {sorted(table)}")
    return table[name]()


def check_phi_function(zeta: PhiFunctionSpec, grid: np.ndarray = LOG_GRID, rtol: float = 1e-12) -> list[str]:
    """Sampled Phi-function axioms; returns a list of violations (empty when admissible)."""
    with np.errstate(invalid="ignore", over="ignore"):
        return _phi_problems(zeta, grid, rtol)


def _phi_problems(zeta, grid, rtol):
    problems = []
    if zeta(0.0) != 0.0:
        problems.append("zeta(0) != 0")
    vals = zeta(grid)
    if np.any(np.diff(vals) < -rtol * np.abs(vals[1:])):
        problems.append("not nondecreasing on the grid")
    if not zeta(1e8) > 1e8:
        problems.append("zeta(t) does not blow up at t = 1e8")
    a, b = grid[:-1], grid[1:]
    mid = zeta(0.5 * (a + b))
    chord = 0.5 * (zeta(a) + zeta(b))
    finite = np.isfinite(chord)
    if np.any(mid[finite] > chord[finite] * (1 + rtol) + 1e-300):
        problems.append("midpoint convexity fails on the grid")
    return problems


def _cell_width(u, h: float | None) -> float:
    if h is not None:
        return float(h)
    if isinstance(u, FunctionVec):
        return u.mesh.h
    raise ValueError("pass a FunctionVec or an explicit cell width h")


def modular(u, zeta: PhiFunctionSpec, h: float | None = None) -> float:
    """sum_i zeta(|u_i|) h."""
    width = _cell_width(u, h)
    x = np.abs(coeffs_of(u))
    return float(np.sum(zeta(x)) * width)


def luxemburg_norm(u, zeta: PhiFunctionSpec, h: float | None = None, rtol: float = 1e-14) -> float:
    """inf { lam > 0 : modular(u / lam) <= 1 } by bisection on log(lam)."""
    width = _cell_width(u, h)
    x = np.abs(coeffs_of(u))
    x = x[x > 0]
    if x.size == 0:
        return 0.0

    def excess(lam):
        return float(np.sum(zeta(x / lam)) * width) - 1.0

    lo = hi = float(np.max(x))
    for _ in range(2000):
        if excess(hi) <= 0:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise NumericError("could not bracket the Luxemburg norm from above", stage="luxemburg")
    for _ in range(2000):
        if excess(lo) > 0:
            break
        hi, lo = lo, lo * 0.5
    else:
        raise NumericError("could not bracket the Luxemburg norm from below", stage="luxemburg")
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if excess(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return hi


def young_conjugate(zeta: PhiFunctionSpec, s: float) -> float:
    """sup_{t >= 0} (t s - zeta(t)); inf when the supremum overflows double range."""
    if s < 0:
        raise ValueError("Young conjugate is evaluated at s >= 0")
    if s == 0:
        return 0.0

    def gain(t):
        val = zeta.scalar(t)
        return t * s - val

    # bracket the concave maximizer by doubling
    hi = 1.0
    prev = gain(hi)
    while True:
        nxt = gain(2.0 * hi)
        if nxt <= prev:
            break
        hi, prev = 2.0 * hi, nxt
        if hi > 1e300:
            # growth test: a superlinear zeta still gains slope here, so the
            # supremum is finite but beyond double range
            slope_far = zeta.scalar(hi) / hi
            slope_mid = zeta.scalar(1e150) / 1e150
            if slope_far > slope_mid * (1.0 + 1e-6):
                return math.inf
            raise ConfigurationError(
                f"Young conjugate supremum is unbounded at s={s:g} (zeta grows at most linearly)")
    # golden-section search on the concave gain over [0, 2 hi]
    lo, up = 0.0, 2.0 * hi
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = up - invphi * (up - lo)
    d = lo + invphi * (up - lo)
    gc, gd = gain(c), gain(d)
    while up - lo > 1e-13 * up:
        if gc >= gd:
            up, d, gd = d, c, gc
            c = up - invphi * (up - lo)
            gc = gain(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + invphi * (up - lo)
            gd = gain(d)
    return float(max(gc, gd, prev, 0.0))


def left_inverse(zeta: PhiFunctionSpec, x: float, rtol: float = 1e-15) -> float:
    """inf { tau >= 0 : zeta(tau) >= x }."""
    if x <= 0:
        return 0.0
    hi = 1.0
    while zeta.scalar(hi) < x:
        hi *= 2.0
        if hi > 1e300:
            raise NumericError("left inverse bracket overflow", stage="left_inverse")
    lo = 0.0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if zeta.scalar(mid) >= x:
            hi = mid
        else:
            lo = mid
    return hi


def make_theta_pair(psi_star: PhiFunctionSpec, grid: np.ndarray = LOG_GRID, slack: float = 1e-9):
    """The admissible pair theta1 = theta2 = psi_star(t^2).

    Checks inv(theta1) * inv(theta2) <= inv(psi_star) on ``grid`` and raises
    ConfigurationError naming the first violating point.
    """
    theta = square_composed_of(psi_star)
    for x in grid:
        prod = left_inverse(theta, x) ** 2
        ref = left_inverse(psi_star, x)
        if ref - prod < -slack * max(ref, 1.0):
            raise ConfigurationError(f"theta pair not admissible at x={x:g}: {prod} > {ref}")
    return theta, theta


@dataclass(frozen=True)
class NormLemmaReport:
    lhs: float
    rhs: float
    ok: bool


def check_norm_lemma(u, eta_fn: PhiFunctionSpec, psi_fn: PhiFunctionSpec, h: float | None = None) -> NormLemmaReport:
    """||u^2||_psi <= ||u||_eta^2 for the pair psi(t) = eta(sqrt t)."""
    t = LOG_GRID
    if not np.allclose(psi_fn(t), eta_fn(np.sqrt(t)), rtol=1e-12, atol=0):
        raise ConfigurationError("psi(t) = eta(sqrt(t)) does not hold for the supplied pair")
    x = coeffs_of(u)
    width = _cell_width(u, h)
    lhs = luxemburg_norm(x * x, psi_fn, width)
    rhs = luxemburg_norm(x, eta_fn, width) ** 2
    return NormLemmaReport(lhs=lhs, rhs=rhs, ok=lhs <= rhs * (1 + 1e-10))


@dataclass(frozen=True)
class EmbeddingConstants:
    S2: float
    S1_lb: float
    provenance: str


def estimate_S2(mats) -> float:
    """Largest eigenvalue of the pencil (M1, E): sharp discrete L^2 embedding constant."""
    mu = eigh(mats.E, mats.M1, eigvals_only=True, subset_by_index=[0, 0])[0]
    if not mu > 0:
        raise NumericError(f"energy matrix is singular (smallest pencil eigenvalue {mu:g})", stage="S2")
    return float(1.0 / mu)


def phi_ratio(u, mats, zeta: PhiFunctionSpec) -> float:
    """||u||_zeta^2 / E(u, u)."""
    x = coeffs_of(u)
    energy = float(x @ mats.E @ x)
    if energy <= 0:
        return 0.0
    return luxemburg_norm(x, zeta, mats.mesh.h) ** 2 / energy


def estimate_S1(mats, zeta: PhiFunctionSpec, eigvecs: Sequence = (), probes: int = 200,
                polish_steps: int = 50, seed: int = 0x5EED) -> float:
    """Lower estimate of the best constant of the embedding into L^zeta.

    Maximizes ``phi_ratio`` over the supplied eigenvectors (then polished by
    coordinate ascent) and ``probes`` random directions. Random probes come
    from one seeded stream, so raising ``probes`` only adds candidates.
    """
    n = mats.mesh.n
    best_start, best = None, 0.0
    for v in eigvecs:
        r = phi_ratio(v, mats, zeta)
        if r > best:
            best, best_start = r, np.array(coeffs_of(v), dtype=float)
    if best_start is not None:
        best = max(best, _polish(best_start, best, mats, zeta, polish_steps))
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((probes, n))
    for d in dirs:
        best = max(best, phi_ratio(d, mats, zeta))
    return best


def _polish(u: np.ndarray, value: float, mats, zeta, steps: int) -> float:
    u = u.copy()
    scale = float(np.max(np.abs(u))) or 1.0
    n = u.size
    for step in range(steps):
        i = (step * 7919) % n
        for delta in (0.05 * scale, -0.05 * scale):
            trial = u.copy()
            trial[i] += delta
            r = phi_ratio(trial, mats, zeta)
            if r > value:
                u, value = trial, r
                break
    return value
