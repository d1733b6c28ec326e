"""Gauss quadrature and orthogonality (Gram) matrices.

Rules come from the Golub-Welsch eigenproblem of the Jacobi matrix of
the base weight. Orthogonality integrals are taken in the eta variable:

    oscillator: (1/2) int_0^inf e^-eta eta^(g+l-1/2) P_n P_m / xi^2 d eta
    DPT:        2^-(g+h+2l+1) int_-1^1 (1-eta)^(g+l-1/2) (1+eta)^(h+l-1/2) P_n P_m / xi^2 d eta
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .errors import InvalidWeightParams, NoConvergence
from .families import ETA, Kind, xi, xpoly
from .schrodinger import SystemSpec

logger = logging.getLogger(__name__)

LAGUERRE_RULE = "generalized-laguerre"
JACOBI_RULE = "jacobi"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """N-point Gauss rule for e^-x x^alpha on (0, inf) or (1-x)^alpha (1+x)^beta on (-1, 1)."""

    kind: str
    alpha: float
    beta: Optional[float]
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def _recurrence(kind: str, n: int, alpha: float, beta: Optional[float]):
    """Diagonal, off-diagonal and zeroth moment of the monic recurrence."""
    k = np.arange(n, dtype=float)
    if kind == LAGUERRE_RULE:
        diag = 2 * k + alpha + 1
        j = k[1:]
        off = np.sqrt(j * (j + alpha))
        return diag, off, math.exp(gammaln(alpha + 1))

    s = alpha + beta
    mu0 = math.exp((s + 1) * math.log(2) + gammaln(alpha + 1) + gammaln(beta + 1) - gammaln(s + 2))
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (s + 2)
    kk = k[1:]
    diag[1:] = (beta * beta - alpha * alpha) / ((2 * kk + s) * (2 * kk + s + 2))
    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = math.sqrt(4 * (alpha + 1) * (beta + 1) / ((s + 2) ** 2 * (s + 3)))
        j = k[2:]
        c = 2 * j + s
        off[1:] = np.sqrt(4 * j * (j + alpha) * (j + beta) * (j + s) / (c * c * (c + 1) * (c - 1)))
    return diag, off, mu0


@lru_cache(maxsize=64)
def gauss_rule(kind: str, n: int, alpha: float, beta: Optional[float] = None) -> QuadratureRule:
    """Golub-Welsch rule exact for polynomials of degree <= 2n - 1 against the base weight."""
    if n < 1:
        raise InvalidWeightParams(f"Quadrature order must be >= 1, got {n}")
    if kind not in (LAGUERRE_RULE, JACOBI_RULE):
        raise InvalidWeightParams(f"Unknown quadrature kind: {kind}")
    if alpha <= -1 or (kind == JACOBI_RULE and (beta is None or beta <= -1)):
        raise InvalidWeightParams(f"Weight exponents must exceed -1, got alpha={alpha}, beta={beta}")

    diag, off, mu0 = _recurrence(kind, n, alpha, beta)
    if n == 1:
        nodes, vectors = diag.copy(), np.ones((1, 1))
    else:
        nodes, vectors = eigh_tridiagonal(diag, off)
    weights = mu0 * vectors[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(kind=kind, alpha=alpha, beta=beta, nodes=nodes, weights=weights)


def _weight_setup(spec: SystemSpec):
    """Quadrature kind, exponents and constant prefactor for the eta-form integral."""
    g, ell = spec.params.g, spec.ell
    if spec.kind is Kind.LAGUERRE:
        return LAGUERRE_RULE, g + ell - 0.5, None, 0.5
    h = spec.params.h
    return JACOBI_RULE, g + ell - 0.5, h + ell - 0.5, 2.0 ** (-(g + h + 2 * ell + 1))


def _gram_at(spec: SystemSpec, n_max: int, order: int) -> np.ndarray:
    kind, alpha, beta, prefactor = _weight_setup(spec)
    rule = gauss_rule(kind, order, alpha, beta)
    deform = xi(spec.family, spec.ell, spec.params, ETA, spec.enforce_ordering)
    xi_values = np.asarray(deform(rule.nodes))
    rows = np.array(
        [
            np.asarray(xpoly(spec.family, spec.ell, n, spec.params, ETA, spec.enforce_ordering).poly(rule.nodes))
            / xi_values
            for n in range(n_max + 1)
        ]
    )
    weighted = rows * rule.weights
    return prefactor * weighted @ rows.T


def gram_matrix(
    spec: SystemSpec,
    n_max: int,
    rtol: float = 1e-10,
    cap: int = 2048,
    start: Optional[int] = None,
) -> np.ndarray:
    """Inner products (psi_l P_{l,n}, psi_l P_{l,m}) for n, m <= n_max.

    The rational weight 1/xi^2 is not integrated exactly, so the node count
    doubles until the largest entry change relative to the diagonal drops
    below ``rtol``.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    order = start or max(16, 2 * (spec.ell + n_max) + 4)
    order = min(order, cap)
    previous = _gram_at(spec, n_max, order)
    while True:
        if order * 2 > cap:
            raise NoConvergence(
                f"Gram matrix for {spec.label()} not converged to {rtol:g} within {cap} nodes"
            )
        order *= 2
        current = _gram_at(spec, n_max, order)
        change = np.max(np.abs(current - previous)) / np.max(np.abs(np.diag(current)))
        logger.debug("Gram %s: N=%d relative change %.3e", spec.label(), order, change)
        if change < rtol:
            return current
        previous = current
