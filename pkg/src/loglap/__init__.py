"""Galerkin discretization and numerical checks for the weighted logarithmic Laplacian
eigenvalue problem on an interval."""

from .errors import ConfigurationError, LoglapError, NumericError
from .mesh import DomainSpec, FunctionVec, Mesh, WeightSpec, build_mesh
from .assembly import FormMatrices, assemble, assemble_frac
from .pencil import EigenResult, find_spd_shift, rayleigh, solve
from .problem import Problem, setup_problem
from .special import dim_constants, frac_constant, pitt_constant

__all__ = [
    "ConfigurationError", "LoglapError", "NumericError",
    "DomainSpec", "FunctionVec", "Mesh", "WeightSpec", "build_mesh",
    "FormMatrices", "assemble", "assemble_frac",
    "EigenResult", "find_spd_shift", "rayleigh", "solve",
    "Problem", "setup_problem",
    "dim_constants", "frac_constant", "pitt_constant",
]
