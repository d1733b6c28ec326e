"""Physical-coordinate layer: prepotentials, potentials and eigenfunctions.

All x-derivatives are assembled analytically from the chain rule through
the sinusoidal coordinate and polynomial derivatives; nothing here
differentiates numerically.

Oscillator systems evaluate their polynomials in eta = x^2. DPT systems
evaluate them in z = sin^2 x = (1 - cos 2x)/2 or, for J2, in
u = cos^2 x = (1 + cos 2x)/2: the same polynomial content as eta = cos 2x
written in a basis that stays accurate at the edge holding the
groundstate mass (x = 0 when h > g, x = pi/2 when g > h).
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import DomainError, InvalidParams, SingularXi
from .families import (
    EDGE,
    ETA,
    FAR_EDGE,
    Family,
    Kind,
    ParamSet,
    energy,
    validate_params,
    xi,
    xpoly,
)
from .polynomials import Polynomial, poly_derivative

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
HALF_PI = math.pi / 2


@dataclass(frozen=True)
class SystemSpec:
    """A deformed (or undeformed) system: family, degree l and couplings."""

    family: Family
    ell: int
    params: ParamSet
    enforce_ordering: bool = True

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family.is_classical and self.ell != 0:
            raise InvalidParams(f"Classical family {self.family.value} has l=0 only, got l={self.ell}")
        if self.ell < 0:
            raise InvalidParams(f"Deformation degree must be >= 0, got l={self.ell}")
        validate_params(self.family, self.params, self.enforce_ordering)

    @property
    def kind(self) -> Kind:
        return self.family.kind

    @property
    def var(self) -> str:
        """Polynomial variable of the edge the groundstate mass sits at."""
        if self.kind is Kind.LAGUERRE:
            return ETA
        if self.family is Family.J2 and self.enforce_ordering:
            return FAR_EDGE
        return EDGE

    @property
    def domain(self) -> Tuple[float, float]:
        return (0.0, math.inf) if self.kind is Kind.LAGUERRE else (0.0, HALF_PI)

    def shifted(self, steps: int = 1) -> "SystemSpec":
        """Same family and degree at lambda + steps*delta."""
        return SystemSpec(self.family, self.ell, self.params.shifted(steps), self.enforce_ordering)

    @cached_property
    def xi_poly(self) -> Polynomial:
        return xi(self.family, self.ell, self.params, self.var, self.enforce_ordering)

    @cached_property
    def xi_shifted_poly(self) -> Polynomial:
        return xi(self.family, self.ell, self.params.shifted(), self.var, self.enforce_ordering)

    def eigenpolynomial(self, n: int) -> Polynomial:
        return xpoly(self.family, self.ell, n, self.params, self.var, self.enforce_ordering).poly

    def energy(self, n: int) -> float:
        return energy(self.family, self.ell, n, self.params)

    def label(self) -> str:
        couplings = ",".join(f"{k}={v:g}" for k, v in self.params.as_dict().items())
        return f"{self.family.value}[l={self.ell};{couplings}]"


@dataclass(frozen=True)
class PointEval:
    """Prepotential, potential and wavefunction values at one point."""

    x: float
    w: float
    dw: float
    d2w: float
    potential: float
    psi: float
    phi: float
    psi_sign: float
    log_abs_psi: float


def _as_array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _check_closed(kind: Kind, x: np.ndarray) -> None:
    upper = math.inf if kind is Kind.LAGUERRE else HALF_PI
    if not np.all((x >= 0) & (x <= upper)) or not np.all(np.isfinite(x)):
        raise DomainError(f"x outside the closed domain [0, {upper:g}] for {kind.value} systems")


def _check_interior(kind: Kind, x: np.ndarray) -> None:
    upper = math.inf if kind is Kind.LAGUERRE else HALF_PI
    if not np.all((x > 0) & (x < upper)) or not np.all(np.isfinite(x)):
        raise DomainError(f"x outside the open domain (0, {upper:g}) for {kind.value} systems")


def eta(kind: Kind, x: ArrayLike) -> ArrayLike:
    """Sinusoidal coordinate: x^2 (oscillator) or cos 2x (DPT)."""
    kind = Kind(kind)
    x = _as_array(x)
    _check_closed(kind, x)
    if kind is Kind.LAGUERRE:
        return (x * x)[()]
    return np.cos(2 * x)[()]


def eta_derivs(kind: Kind, x: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    kind = Kind(kind)
    x = _as_array(x)
    _check_closed(kind, x)
    if kind is Kind.LAGUERRE:
        return (2 * x)[()], np.full_like(x, 2.0)[()]
    return (-2 * np.sin(2 * x))[()], (-4 * np.cos(2 * x))[()]


def _coordinate(kind: Kind, var: str, x: np.ndarray):
    """Polynomial variable and its first two x-derivatives."""
    if var == ETA:
        value = eta(kind, x)
        d1, d2 = eta_derivs(kind, x)
        return value, d1, d2
    if var == FAR_EDGE:
        c = np.cos(x)
        return c * c, -np.sin(2 * x), -2 * np.cos(2 * x)
    s = np.sin(x)
    return s * s, np.sin(2 * x), 2 * np.cos(2 * x)


def w0(kind: Kind, x: ArrayLike, params: ParamSet):
    """Undeformed prepotential and its first two derivatives."""
    kind = Kind(kind)
    x = _as_array(x)
    _check_interior(kind, x)
    g = params.g
    if kind is Kind.LAGUERRE:
        w = -x * x / 2 + g * np.log(x)
        return w[()], (-x + g / x)[()], (-1 - g / (x * x))[()]
    h = params.h
    s, c = np.sin(x), np.cos(x)
    w = g * np.log(s) + h * np.log(c)
    dw = g * c / s - h * s / c
    d2w = -g / (s * s) - h / (c * c)
    return w[()], dw[()], d2w[()]


def _log_poly(p: Polynomial, coord, what: str = "xi"):
    """log|p(v(x))| with its x-derivatives and the sign of p."""
    v, v1, v2 = coord
    p0 = np.asarray(p(v))
    if np.any(p0 == 0):
        raise SingularXi(f"{what} vanishes at an evaluation point")
    r1 = np.asarray(poly_derivative(p)(v)) / p0
    r2 = np.asarray(poly_derivative(p, 2)(v)) / p0
    d1 = v1 * r1
    d2 = v2 * r1 + v1 * v1 * (r2 - r1 * r1)
    return np.log(np.abs(p0)), d1, d2, np.sign(p0)


def w_ell(spec: SystemSpec, x: ArrayLike):
    """Deformed prepotential w_l(x; lambda) and its first two derivatives."""
    x = _as_array(x)
    _check_interior(spec.kind, x)
    w, dw, d2w = w0(spec.kind, x, spec.params.shifted(spec.ell))
    if spec.ell == 0 or spec.family.is_classical:
        return w, dw, d2w
    coord = _coordinate(spec.kind, spec.var, x)
    up, up1, up2, _ = _log_poly(spec.xi_shifted_poly, coord)
    lo, lo1, lo2, _ = _log_poly(spec.xi_poly, coord)
    return (w + up - lo)[()], (dw + up1 - lo1)[()], (d2w + up2 - lo2)[()]


def potential(spec: SystemSpec, x: ArrayLike) -> ArrayLike:
    """U_l = (w_l')^2 + w_l''."""
    _, dw, d2w = w_ell(spec, x)
    return np.asarray(dw * dw + d2w)[()]


def _psi_parts(spec: SystemSpec, x: np.ndarray):
    """log|psi_l| = w_0(lambda + l*delta) - log|xi_l(lambda)|, derivatives and sign."""
    w, dw, d2w = w0(spec.kind, x, spec.params.shifted(spec.ell))
    w, dw, d2w = np.asarray(w), np.asarray(dw), np.asarray(d2w)
    if spec.ell == 0 or spec.family.is_classical:
        return np.ones_like(w), w, dw, d2w
    coord = _coordinate(spec.kind, spec.var, x)
    lo, lo1, lo2, sign = _log_poly(spec.xi_poly, coord)
    return sign, w - lo, dw - lo1, d2w - lo2


def eigenfunction(spec: SystemSpec, n: int, x: ArrayLike, log: bool = False):
    """phi_{l,n}(x) = psi_l(x) P_{l,n}(eta(x)).

    With ``log=True`` returns (sign, log|phi|), which stays finite where
    phi itself under- or overflows.
    """
    x = _as_array(x)
    _check_interior(spec.kind, x)
    sign, s, _, _ = _psi_parts(spec, x)
    v, _, _ = _coordinate(spec.kind, spec.var, x)
    p = np.asarray(spec.eigenpolynomial(n)(v))
    with np.errstate(divide="ignore"):
        log_abs = s + np.log(np.abs(p))
    total_sign = sign * np.sign(p)
    if log:
        return total_sign[()], log_abs[()]
    return (total_sign * np.exp(log_abs))[()]


def schrodinger_residual(
    spec: SystemSpec, n: int, x: ArrayLike, floor: Optional[float] = None
) -> ArrayLike:
    """(-phi'' + U phi - E phi) / max(|phi|, floor), expected to vanish.

    Without ``floor`` the residual is taken relative to |phi| itself.
    """
    x = _as_array(x)
    _check_interior(spec.kind, x)
    _, s, s1, s2 = _psi_parts(spec, x)
    v, v1, v2 = _coordinate(spec.kind, spec.var, x)
    poly = spec.eigenpolynomial(n)
    p0 = np.asarray(poly(v))
    p1 = np.asarray(poly_derivative(poly)(v))
    p2 = np.asarray(poly_derivative(poly, 2)(v))
    px1 = v1 * p1
    px2 = v2 * p1 + v1 * v1 * p2

    _, dw, d2w = w_ell(spec, x)
    u = dw * dw + d2w
    e = spec.energy(n)

    # residual in units of exp(s): phi = sign * exp(s) * P
    r = -((s2 + s1 * s1) * p0 + 2 * s1 * px1 + px2) + (u - e) * p0
    if floor is None:
        return (r / np.abs(p0))[()]
    scale = np.exp(s)
    return (scale * r / np.maximum(scale * np.abs(p0), floor))[()]


def shape_invariance_residual(spec: SystemSpec, x: ArrayLike) -> ArrayLike:
    """(w'(l))^2 - w''(l) - [(w'(l+d))^2 + w''(l+d) + E_1(l + l*delta)]."""
    try:
        partner = spec.shifted()
    except InvalidParams as e:
        raise InvalidParams(f"Shifted couplings invalid for shape invariance: {e}")
    _, dw, d2w = w_ell(spec, x)
    _, dw_up, d2w_up = w_ell(partner, x)
    lhs = dw * dw - d2w
    rhs = dw_up * dw_up + d2w_up + spec.energy(1)
    return np.asarray(lhs - rhs)[()]


def annihilation_residual(spec: SystemSpec, x: ArrayLike) -> ArrayLike:
    """(A_l phi_{l,0}) / |phi_{l,0}| with A_l = d/dx - w_l'."""
    x = _as_array(x)
    _check_interior(spec.kind, x)
    _, _, s1, _ = _psi_parts(spec, x)
    v, v1, _ = _coordinate(spec.kind, spec.var, x)
    poly = spec.eigenpolynomial(0)
    log_derivative = s1 + v1 * np.asarray(poly_derivative(poly)(v)) / np.asarray(poly(v))
    _, dw, _ = w_ell(spec, x)
    # sign of phi dropped
    return np.abs(log_derivative - dw)[()]


def evaluate(spec: SystemSpec, n: int, x: float) -> PointEval:
    """Bundle every pointwise quantity at a single interior x."""
    w, dw, d2w = w_ell(spec, x)
    sign, s, _, _ = _psi_parts(spec, _as_array(x))
    return PointEval(
        x=float(x),
        w=float(w),
        dw=float(dw),
        d2w=float(d2w),
        potential=float(dw * dw + d2w),
        psi=float(sign * np.exp(s)),
        phi=float(eigenfunction(spec, n, x)),
        psi_sign=float(sign),
        log_abs_psi=float(s),
    )


def _dense_grid(spec: SystemSpec, count: int = 4000) -> np.ndarray:
    if spec.kind is Kind.LAGUERRE:
        x_max = 2 * math.sqrt(spec.params.g + spec.ell + 1) + 8
        return np.linspace(x_max * 1e-6, x_max, count)
    return np.linspace(1e-6, HALF_PI - 1e-6, count)


def mass_quantiles(spec: SystemSpec, lower: float = 0.01, upper: float = 0.99) -> Tuple[float, float]:
    """x positions enclosing the given fractions of the groundstate mass."""
    grid = _dense_grid(spec)
    w, _, _ = w_ell(spec, grid)
    log_mass = 2 * np.asarray(w)
    density = np.exp(log_mass - log_mass.max())
    cdf = cumulative_trapezoid(density, grid, initial=0.0)
    cdf /= cdf[-1]
    lo, hi = np.interp([lower, upper], cdf, grid)
    return float(lo), float(hi)


def interior_points(spec: SystemSpec, count: int = 100) -> np.ndarray:
    """Chebyshev points between the 1% and 99% groundstate-mass quantiles."""
    lo, hi = mass_quantiles(spec)
    k = np.arange(count)
    nodes = (lo + hi) / 2 - (hi - lo) / 2 * np.cos((2 * k + 1) * math.pi / (2 * count))
    logger.debug("Interior grid for %s: [%.4g, %.4g], %d points", spec.label(), lo, hi, count)
    return nodes
