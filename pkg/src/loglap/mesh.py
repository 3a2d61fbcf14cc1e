"""Interval domains, uniform P0 meshes, weight functions and assumption checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import gamma as gamma_fn, gammaincc

from .errors import ConfigurationError
from .special import DimConstants

WEIGHT_KINDS = ("constant", "piecewise-bounded", "singular-log")


@dataclass(frozen=True)
class DomainSpec:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or not self.a < self.b:
            raise ConfigurationError(f"domain needs finite a < b, got ({self.a}, {self.b})")

    @property
    def measure(self) -> float:
        return self.b - self.a

    @property
    def radius(self) -> float:
        """sup |x| over the closure of the domain."""
        return max(abs(self.a), abs(self.b))

    def contains(self, other: "DomainSpec") -> bool:
        return self.a <= other.a and other.b <= self.b


@dataclass(frozen=True, eq=False)
class Mesh:
    domain: DomainSpec
    n: int
    h: float
    centers: np.ndarray = field(repr=False)

    @property
    def edges(self) -> np.ndarray:
        return self.domain.a + self.h * np.arange(self.n + 1)

    def cell(self, i: int) -> tuple[float, float]:
        return self.domain.a + i * self.h, self.domain.a + (i + 1) * self.h


def build_mesh(domain: DomainSpec, n: int) -> Mesh:
    """Uniform partition of ``domain`` into ``n`` cells of width at most 1."""
    if int(n) != n or n < 2:
        raise ConfigurationError(f"mesh needs n >= 2 cells, got {n!r}")
    n = int(n)
    h = domain.measure / n
    if h > 1.0:
        raise ConfigurationError(
            f"cell width h={h:g} exceeds 1; refine mesh or shrink domain"
        )
    centers = domain.a + (np.arange(n) + 0.5) * h
    centers.setflags(write=False)
    return Mesh(domain=domain, n=n, h=h, centers=centers)


@dataclass(frozen=True, eq=False)
class FunctionVec:
    """Piecewise-constant function on a mesh, extended by zero outside the domain."""

    mesh: Mesh
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.shape != (self.mesh.n,):
            raise ValueError(f"expected {self.mesh.n} coefficients, got shape {coeffs.shape}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def positive_part(self) -> "FunctionVec":
        return FunctionVec(self.mesh, np.maximum(self.coeffs, 0.0))

    @property
    def negative_part(self) -> "FunctionVec":
        return FunctionVec(self.mesh, np.maximum(-self.coeffs, 0.0))


def coeffs_of(u) -> np.ndarray:
    """Coefficient array of a FunctionVec or array-like."""
    if isinstance(u, FunctionVec):
        return u.coeffs
    return np.asarray(u, dtype=float)


@dataclass(frozen=True)
class WeightSpec:
    """Weight omega in one of three families.

    ``params`` by kind:

    * ``constant``: ``{"value": c}``
    * ``piecewise-bounded``: ``{"breakpoints": [x1, ..., xm], "values": [v0, ..., vm]}``,
      value ``v_k`` on ``(x_k, x_{k+1})``
    * ``singular-log``: ``{"beta": b, "gamma_exp": g, "outer": c}`` giving
      ``(g ln(1/|x|))^b`` for ``|x| < 1`` and the constant ``c`` elsewhere
    """

    kind: str
    params: dict
    w2_lambda0: float = -10.0
    w2_alpha: float = 1.0

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ConfigurationError(f"unknown weight kind {self.kind!r}; expected one of {WEIGHT_KINDS}")
        if self.w2_lambda0 == 0:
            raise ConfigurationError("(omega_2) requires lambda0 != 0")
        if not self.w2_alpha > 0:
            raise ConfigurationError("(omega_2) requires alpha > 0")
        p = self.params
        try:
            if self.kind == "constant":
                float(p["value"])
            elif self.kind == "piecewise-bounded":
                bps, vals = list(p["breakpoints"]), list(p["values"])
                if len(vals) != len(bps) + 1:
                    raise ConfigurationError("piecewise weight needs len(values) == len(breakpoints) + 1")
                if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
                    raise ConfigurationError("piecewise weight breakpoints must be strictly increasing")
            else:
                beta, gexp = float(p["beta"]), float(p["gamma_exp"])
                float(p.get("outer", 0.0))
                if not 0.0 < beta < 1.0:
                    raise ConfigurationError(f"singular-log weight needs beta in (0,1), got {beta}")
                if not 0.0 < gexp < 0.5:
                    # N = 1: exponent bounded by N/2
                    raise ConfigurationError(f"singular-log weight needs 0 < gamma_exp < 1/2, got {gexp}")
        except KeyError as exc:
            raise ConfigurationError(f"{self.kind} weight is missing parameter {exc}") from None

    @classmethod
    def constant(cls, value: float, **kw) -> "WeightSpec":
        return cls("constant", {"value": float(value)}, **kw)

    @classmethod
    def piecewise(cls, breakpoints: Sequence[float], values: Sequence[float], **kw) -> "WeightSpec":
        return cls(
            "piecewise-bounded",
            {"breakpoints": [float(b) for b in breakpoints], "values": [float(v) for v in values]},
            **kw,
        )

    @classmethod
    def singular_log(cls, beta: float = 0.5, gamma_exp: float = 0.25, outer: float = 0.0, **kw) -> "WeightSpec":
        return cls("singular-log", {"beta": beta, "gamma_exp": gamma_exp, "outer": outer}, **kw)

    def scaled(self, c: float) -> "WeightSpec":
        """The weight c * omega (lambda0 rescaled so that (omega_2) is unchanged)."""
        kw = dict(w2_lambda0=self.w2_lambda0 / c, w2_alpha=self.w2_alpha)
        if self.kind == "constant":
            return WeightSpec.constant(c * self.params["value"], **kw)
        if self.kind == "piecewise-bounded":
            return WeightSpec.piecewise(self.params["breakpoints"], [c * v for v in self.params["values"]], **kw)
        raise ConfigurationError("scaling is only supported for bounded weights")

    @property
    def is_bounded(self) -> bool:
        return self.kind != "singular-log"

    def sup_norm(self) -> float:
        if self.kind == "constant":
            return abs(self.params["value"])
        if self.kind == "piecewise-bounded":
            return max(abs(v) for v in self.params["values"])
        return math.inf

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        p = self.params
        if self.kind == "constant":
            return np.full_like(x, p["value"])
        if self.kind == "piecewise-bounded":
            idx = np.searchsorted(np.asarray(p["breakpoints"]), x, side="right")
            return np.asarray(p["values"], dtype=float)[idx]
        ax = np.abs(x)
        with np.errstate(divide="ignore"):
            inner = (p["gamma_exp"] * -np.log(np.minimum(ax, 1.0))) ** p["beta"]
        return np.where(ax < 1.0, inner, p.get("outer", 0.0))


def _piecewise_integral(w: WeightSpec, lo: float, hi: float) -> float:
    bps = w.params["breakpoints"]
    vals = w.params["values"]
    knots = [-math.inf, *bps, math.inf]
    total = 0.0
    for k, v in enumerate(vals):
        overlap = min(hi, knots[k + 1]) - max(lo, knots[k])
        if overlap > 0:
            total += v * overlap
    return total


def _log_power_from_origin(r: float, beta: float, gexp: float) -> float:
    """int_0^r (gexp * ln(1/x))^beta dx for 0 <= r <= 1, via t = -ln x."""
    if r <= 0.0:
        return 0.0
    # int_{-ln r}^inf (gexp t)^beta e^{-t} dt = gexp^beta * Gamma(beta+1, -ln r)
    return gexp**beta * float(gamma_fn(beta + 1.0) * gammaincc(beta + 1.0, -math.log(r)))


def _singular_integral(w: WeightSpec, lo: float, hi: float) -> float:
    beta, gexp = w.params["beta"], w.params["gamma_exp"]
    outer = w.params.get("outer", 0.0)
    total = 0.0
    # |x| >= 1 pieces
    total += outer * max(0.0, min(hi, -1.0) - lo)
    total += outer * max(0.0, hi - max(lo, 1.0))
    # right half (0, 1) and left half (-1, 0), each via the primitive from the origin
    r_lo, r_hi = max(lo, 0.0), min(hi, 1.0)
    if r_hi > r_lo:
        total += _log_power_from_origin(r_hi, beta, gexp) - _log_power_from_origin(r_lo, beta, gexp)
    l_lo, l_hi = max(-hi, 0.0), min(-lo, 1.0)
    if l_hi > l_lo:
        total += _log_power_from_origin(l_hi, beta, gexp) - _log_power_from_origin(l_lo, beta, gexp)
    return total


def weight_cell_integrals(w: WeightSpec, mesh: Mesh) -> np.ndarray:
    """Exact cell integrals of omega over every mesh cell."""
    edges = mesh.edges
    if w.kind == "constant":
        return np.full(mesh.n, w.params["value"] * mesh.h)
    integrate = _piecewise_integral if w.kind == "piecewise-bounded" else _singular_integral
    return np.array([integrate(w, edges[i], edges[i + 1]) for i in range(mesh.n)])


def sample_nodes(mesh: Mesh, per_cell: int = 32) -> np.ndarray:
    """Midpoints of ``per_cell`` equal sub-intervals of every cell."""
    offsets = (np.arange(per_cell) + 0.5) / per_cell
    return (mesh.edges[:-1, None] + mesh.h * offsets[None, :]).ravel()


def check_w0(w: WeightSpec, mesh: Mesh) -> None:
    """Raise unless omega is positive somewhere on the mesh (assumption (omega_0))."""
    if not np.any(w(sample_nodes(mesh)) > 0):
        raise ConfigurationError("(ω₀) violated: the positive part of the weight vanishes on the domain")


@dataclass(frozen=True)
class W2Report:
    max_violation: float
    ok: bool


def check_w2(w: WeightSpec, mesh: Mesh, constants: DimConstants) -> W2Report:
    """Sample ln(1/|x|^2) - lambda0*omega(x) >= alpha - ln 4 - 2 Psi(N/4) on a fine grid.

    This validates the assumption at the sampling resolution; it is not a proof.
    """
    x = sample_nodes(mesh)
    x = x[x != 0.0]
    with np.errstate(divide="ignore"):
        lhs = -2.0 * np.log(np.abs(x)) - w.w2_lambda0 * w(x)
    rhs = w.w2_alpha - 2.0 * constants.hardy_c
    worst = float(np.max(rhs - lhs))
    return W2Report(max_violation=worst, ok=worst <= 0.0)
