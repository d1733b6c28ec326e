"""Deforming polynomials, exceptional eigenpolynomials, norms and energies.

Families L1/L2 deform the radial oscillator, J1/J2 the trigonometric
Darboux-Poschl-Teller potential; L and J are the undeformed (l = 0) systems.
Polynomials are built in the sinusoidal coordinate ``eta``. Jacobi families
can also be built in the edge coordinates ``z = (1 - eta)/2`` and
``u = (1 + eta)/2`` for evaluation close to eta = 1 or eta = -1.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Optional

import numpy as np
from scipy.special import gammaln

from .errors import InvalidParams, ZeroDenominator
from .polynomials import Polynomial, jacobi, jacobi_edge, laguerre, poly_reflect

logger = logging.getLogger(__name__)

ETA = "eta"
EDGE = "z"
FAR_EDGE = "u"


class Kind(str, Enum):
    LAGUERRE = "L"
    JACOBI = "J"


class Family(str, Enum):
    L = "L"
    J = "J"
    L1 = "L1"
    L2 = "L2"
    J1 = "J1"
    J2 = "J2"

    @property
    def kind(self) -> Kind:
        return Kind.LAGUERRE if self.value.startswith("L") else Kind.JACOBI

    @property
    def is_classical(self) -> bool:
        return self in (Family.L, Family.J)

    @property
    def classical(self) -> "Family":
        return Family.L if self.kind is Kind.LAGUERRE else Family.J


@dataclass(frozen=True)
class ParamSet:
    """Coupling constants: (g) for the oscillator, (g, h) for DPT.

    The shift delta is 1 resp. (1, 1), so ``shifted(k)`` is lambda + k*delta.
    """

    g: float
    h: Optional[float] = None

    @property
    def kind(self) -> Kind:
        return Kind.LAGUERRE if self.h is None else Kind.JACOBI

    def shifted(self, steps: int = 1) -> "ParamSet":
        if self.h is None:
            return ParamSet(self.g + steps)
        return ParamSet(self.g + steps, self.h + steps)

    def swapped(self) -> "ParamSet":
        if self.h is None:
            raise InvalidParams("Only Jacobi couplings (g, h) can be swapped")
        return ParamSet(self.h, self.g)

    def as_dict(self) -> Dict[str, float]:
        if self.h is None:
            return {"g": self.g}
        return {"g": self.g, "h": self.h}


@dataclass(frozen=True, eq=False)
class XPolynomial:
    """P_{l,n} = a * P_n(lambda + l*delta) + b * P_{n-1}(lambda + l*delta)."""

    family: Family
    ell: int
    n: int
    params: ParamSet
    poly: Polynomial
    a: Polynomial
    b: Polynomial

    @property
    def degree(self) -> int:
        return self.poly.degree


def validate_params(family: Family, params: ParamSet, enforce_ordering: bool = True) -> None:
    """Raise InvalidParams naming the violated constraint."""
    family = Family(family)
    values = [params.g] if params.h is None else [params.g, params.h]
    if not all(math.isfinite(v) for v in values):
        raise InvalidParams(f"Couplings must be finite, got {params.as_dict()}")

    if family.kind is Kind.LAGUERRE:
        if params.h is not None:
            raise InvalidParams(f"Family {family.value} takes only g, got h={params.h}")
        if params.g <= 0:
            raise InvalidParams(f"Family {family.value} requires g>0, got g={params.g}")
        return

    if params.h is None:
        raise InvalidParams(f"Family {family.value} requires both g and h")
    if params.g <= 0 or params.h <= 0:
        raise InvalidParams(
            f"Family {family.value} requires g>0 and h>0, got g={params.g}, h={params.h}"
        )
    if not enforce_ordering:
        return
    if family is Family.J1 and not params.h > params.g:
        raise InvalidParams(f"Family J1 requires h>g>0, got g={params.g}, h={params.h}")
    if family is Family.J2 and not params.g > params.h:
        raise InvalidParams(f"Family J2 requires g>h>0, got g={params.g}, h={params.h}")


def _check_ell(family: Family, ell: int, minimum: int = 0) -> None:
    if family.is_classical and ell != 0:
        raise InvalidParams(f"Classical family {family.value} has l=0 only, got l={ell}")
    if ell < minimum:
        raise InvalidParams(f"Deformation degree must be >= {minimum}, got l={ell}")


def _check_var(family: Family, var: str) -> None:
    if var not in (ETA, EDGE, FAR_EDGE):
        raise ValueError(f"Unknown polynomial variable: {var!r}")
    if var != ETA and family.kind is Kind.LAGUERRE:
        raise ValueError(f"The edge variable {var} applies to Jacobi families only")


def _jacobi_block(n: int, alpha: float, beta: float, var: str) -> Polynomial:
    if n < 0:
        return Polynomial.zero(var)
    if var == EDGE:
        return jacobi_edge(n, alpha, beta, var)
    if var == FAR_EDGE:
        return (-1.0) ** n * jacobi_edge(n, beta, alpha, var)
    return jacobi(n, alpha, beta, var)


def _base(kind: Kind, n: int, g: float, h: Optional[float], var: str) -> Polynomial:
    """Undeformed eigenpolynomial P_n(eta; g[, h]) with P_{-1} = 0."""
    if n < 0:
        return Polynomial.zero(var)
    if kind is Kind.LAGUERRE:
        return laguerre(n, g - 0.5, var)
    return _jacobi_block(n, g - 0.5, h - 0.5, var)


def _xi(family: Family, ell: int, g: float, h: Optional[float], var: str) -> Polynomial:
    """Deforming polynomial without validation; xi_0 = 1, xi_l = 0 for l < 0."""
    if ell < 0:
        return Polynomial.zero(var)
    if ell == 0 or family.is_classical:
        return Polynomial.constant(1.0, var)
    if family is Family.L1:
        return poly_reflect(laguerre(ell, g + ell - 1.5, var))
    if family is Family.L2:
        return laguerre(ell, -g - ell - 0.5, var)
    if family is Family.J1:
        return _jacobi_block(ell, -g - ell - 0.5, h + ell - 1.5, var)
    return _jacobi_block(ell, g + ell - 1.5, -h - ell - 0.5, var)


def _ratio(numerator: float, *denominators: float) -> float:
    for d in denominators:
        if d == 0:
            raise ZeroDenominator(f"Zero denominator in mixing coefficient: {denominators}")
    return numerator / math.prod(denominators)


def _mixing_parts(family: Family, ell: int, n: int, g: float, h: Optional[float], var: str):
    """The two prefactors (a, b) of P_n and P_{n-1}."""
    deform = lambda l, gg, hh=None: _xi(family, l, gg, hh, var)  # noqa: E731

    if family.is_classical:
        return Polynomial.constant(1.0, var), Polynomial.zero(var)

    if family is Family.L1:
        return deform(ell, g + 1), -deform(ell - 1, g + 2)

    if family is Family.L2:
        a = deform(ell, g + 1)
        low = deform(ell - 2, g + 1)
        if not low.is_zero:
            a = a - _ratio(2 * n, 2 * g + 2 * n + 1) * low
        b = deform(ell - 1, g)
        if not b.is_zero:
            b = _ratio(2 * g + 2 * n + 2 * ell - 1, 2 * g + 2 * n + 1) * b
        return a, b

    if family is Family.J1:
        a = deform(ell, g + 1, h + 1)
        mid = deform(ell - 1, g, h + 2)
        low = deform(ell - 2, g + 1, h + 3)
        if not mid.is_zero:
            a = a + _ratio(2 * n * (-g + h + ell - 1), -g + h + 2 * ell - 2, g + h + 2 * n + 2 * ell - 1) * mid
        if not low.is_zero:
            a = a - _ratio(n * (2 * h + 4 * ell - 3), 2 * g + 2 * n + 1, -g + h + 2 * ell - 2) * low
        b = mid
        if not mid.is_zero:
            b = _ratio((-g + h + ell - 1) * (2 * g + 2 * n + 2 * ell - 1), 2 * g + 2 * n + 1, g + h + 2 * n + 2 * ell - 1) * mid
        return a, b

    a = deform(ell, g + 1, h + 1)
    mid = deform(ell - 1, g + 2, h)
    low = deform(ell - 2, g + 3, h + 1)
    if not mid.is_zero:
        a = a - _ratio(2 * n * (g - h + ell - 1), g - h + 2 * ell - 2, g + h + 2 * n + 2 * ell - 1) * mid
    if not low.is_zero:
        a = a - _ratio(n * (2 * g + 4 * ell - 3), 2 * h + 2 * n + 1, g - h + 2 * ell - 2) * low
    b = mid
    if not mid.is_zero:
        b = _ratio((g - h + ell - 1) * (2 * h + 2 * n + 2 * ell - 1), 2 * h + 2 * n + 1, g + h + 2 * n + 2 * ell - 1) * mid
    return a, b


@lru_cache(maxsize=1024)
def xi(
    family: Family,
    ell: int,
    params: ParamSet,
    var: str = ETA,
    enforce_ordering: bool = True,
) -> Polynomial:
    """Deforming polynomial xi_l(eta; lambda), degree l for l >= 0."""
    family = Family(family)
    _check_var(family, var)
    if ell < -1:
        raise InvalidParams(f"xi is defined for l >= -1, got l={ell}")
    validate_params(family, params, enforce_ordering)
    if family.is_classical and ell > 0:
        raise InvalidParams(f"Classical family {family.value} has l=0 only, got l={ell}")
    return _xi(family, ell, params.g, params.h, var)


@lru_cache(maxsize=1024)
def xpoly(
    family: Family,
    ell: int,
    n: int,
    params: ParamSet,
    var: str = ETA,
    enforce_ordering: bool = True,
) -> XPolynomial:
    """Exceptional eigenpolynomial P_{l,n}(eta; lambda) of degree l + n."""
    family = Family(family)
    _check_var(family, var)
    _check_ell(family, ell)
    if n < 0:
        raise InvalidParams(f"Eigenpolynomial index must be >= 0, got n={n}")
    validate_params(family, params, enforce_ordering)

    g, h = params.g, params.h
    kind = family.kind
    a, b = _mixing_parts(family, ell, n, g, h, var)
    shifted_h = None if h is None else h + ell
    poly = a * _base(kind, n, g + ell, shifted_h, var) + b * _base(kind, n - 1, g + ell, shifted_h, var)
    logger.debug("Built P_{%d,%d}^%s for %s (degree %d)", ell, n, family.value, params.as_dict(), poly.degree)
    return XPolynomial(family=family, ell=ell, n=n, params=params, poly=poly, a=a, b=b)


def classical_norm(kind: Kind, n: int, params: ParamSet) -> float:
    """h_n(lambda) of the undeformed system."""
    g = params.g
    if kind is Kind.LAGUERRE:
        return float(np.exp(gammaln(n + g + 0.5) - gammaln(n + 1)) / 2.0)
    h = params.h
    log_num = gammaln(n + g + 0.5) + gammaln(n + h + 0.5)
    log_den = gammaln(n + 1) + gammaln(n + g + h)
    return float(np.exp(log_num - log_den) / (2.0 * (2 * n + g + h)))


def norm_closed(family: Family, ell: int, n: int, params: ParamSet) -> float:
    """Closed-form orthogonality constant h_{l,n}(lambda)."""
    family = Family(family)
    _check_ell(family, ell)
    if n < 0:
        raise InvalidParams(f"Norm index must be >= 0, got n={n}")
    validate_params(family, params)

    g, h = params.g, params.h
    base = classical_norm(family.kind, n, params.shifted(ell))
    if family.is_classical:
        return base
    if family is Family.L1:
        return (n + g + 2 * ell - 0.5) / (n + g + ell - 0.5) * base
    if family is Family.L2:
        return (n + g + ell + 0.5) / (n + g + 0.5) * base
    if family is Family.J1:
        factor = (n + g + ell + 0.5) * (n + h + 2 * ell - 0.5) / ((n + g + 0.5) * (n + h + ell - 0.5))
        return factor * base
    factor = (n + h + ell + 0.5) * (n + g + 2 * ell - 0.5) / ((n + h + 0.5) * (n + g + ell - 0.5))
    return factor * base


def energy(family: Family, ell: int, n: int, params: ParamSet) -> float:
    """Eigenvalue E_n(lambda + l*delta) of H_l."""
    family = Family(family)
    if family.kind is Kind.LAGUERRE:
        return 4.0 * n
    return 4.0 * n * (n + params.g + params.h + 2 * ell)

