"""Assemble-and-solve pipeline for one (domain, mesh, weight) configuration."""

from __future__ import annotations

from dataclasses import dataclass

from .assembly import FormMatrices, assemble
from .mesh import DomainSpec, Mesh, WeightSpec, build_mesh, check_w0
from .pencil import EigenResult, find_spd_shift, solve
from .special import DimConstants, dim_constants


@dataclass(frozen=True, eq=False)
class Problem:
    mesh: Mesh
    weight: WeightSpec
    constants: DimConstants
    mats: FormMatrices
    result: EigenResult


def setup_problem(domain: DomainSpec, n: int, weight: WeightSpec, N: int = 1,
                  shift_hint: float | None = None) -> Problem:
    """Build the mesh, gate (omega_0), assemble and solve the full positive branch."""
    mesh = build_mesh(domain, n)
    check_w0(weight, mesh)
    constants = dim_constants(N)
    mats = assemble(mesh, weight, constants)
    hint = weight.w2_lambda0 if shift_hint is None else shift_hint
    sigma = find_spd_shift(mats.EL, mats.Mw, hint)
    result = solve(mats.EL, mats.Mw, sigma, mesh)
    return Problem(mesh=mesh, weight=weight, constants=constants, mats=mats, result=result)
