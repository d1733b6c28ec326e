"""Exceptional X_l Laguerre and Jacobi polynomials.

Construction of the deforming polynomials and eigenpolynomials of the
deformed radial oscillator and Darboux-Poschl-Teller systems, their
quantum-mechanical realisation and a numerical verification battery.
"""

from .config import VerifyConfig
from .errors import (
    DegenerateRecurrence,
    DomainError,
    GridTooCoarse,
    InvalidParams,
    InvalidWeightParams,
    NoConvergence,
    SingularXi,
    XellError,
    ZeroDenominator,
)
from .families import Family, Kind, ParamSet, XPolynomial, energy, norm_closed, xi, xpoly
from .polynomials import Polynomial, jacobi, jacobi_edge, laguerre
from .quadrature import QuadratureRule, gauss_rule, gram_matrix
from .reports import CheckReport
from .schrodinger import (
    PointEval,
    SystemSpec,
    eigenfunction,
    evaluate,
    potential,
    schrodinger_residual,
    shape_invariance_residual,
    w_ell,
)
from .verify import fd_spectrum, run_battery

__all__ = [
    "CheckReport",
    "DegenerateRecurrence",
    "DomainError",
    "Family",
    "GridTooCoarse",
    "InvalidParams",
    "InvalidWeightParams",
    "Kind",
    "NoConvergence",
    "ParamSet",
    "PointEval",
    "Polynomial",
    "QuadratureRule",
    "SingularXi",
    "SystemSpec",
    "VerifyConfig",
    "XPolynomial",
    "XellError",
    "ZeroDenominator",
    "eigenfunction",
    "energy",
    "evaluate",
    "fd_spectrum",
    "gauss_rule",
    "gram_matrix",
    "jacobi",
    "jacobi_edge",
    "laguerre",
    "norm_closed",
    "potential",
    "run_battery",
    "schrodinger_residual",
    "shape_invariance_residual",
    "w_ell",
    "xi",
    "xpoly",
]
