"""Dense real polynomials and the classical Laguerre and Jacobi families.

Coefficients are stored in ascending degree. The zero polynomial has no
coefficients and degree -1, so the conventions xi_{-1} = 0 and P_{-1} = 0
compose with the ordinary arithmetic below.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DegenerateRecurrence

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Immutable polynomial in a named variable."""

    coeffs: np.ndarray
    var: str = "x"

    def __post_init__(self):
        c = np.atleast_1d(np.array(self.coeffs, dtype=float))
        if c.ndim != 1:
            raise ValueError("Polynomial coefficients must be one-dimensional")
        nonzero = np.flatnonzero(c)
        c = c[: nonzero[-1] + 1] if nonzero.size else c[:0]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, var: str = "x") -> "Polynomial":
        return cls(np.zeros(0), var)

    @classmethod
    def constant(cls, value: float, var: str = "x") -> "Polynomial":
        return cls(np.array([value]), var)

    @classmethod
    def monomial(cls, var: str = "x") -> "Polynomial":
        return cls(np.array([0.0, 1.0]), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    @property
    def leading(self) -> float:
        return float(self.coeffs[-1]) if not self.is_zero else 0.0

    def _work(self) -> np.ndarray:
        return self.coeffs if not self.is_zero else np.zeros(1)

    def with_var(self, var: str) -> "Polynomial":
        return Polynomial(self.coeffs, var)

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return poly_eval(self, x)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            return poly_add(self, other)
        return poly_add(self, Polynomial.constant(other, self.var))

    __radd__ = __add__

    def __neg__(self):
        return poly_scale(self, -1.0)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        return poly_scale(self, other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Polynomial({self.coeffs.tolist()}, var={self.var!r})"


def _same_var(p: Polynomial, q: Polynomial) -> None:
    if p.var != q.var:
        raise ValueError(f"Polynomials in different variables: {p.var!r} vs {q.var!r}")


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_var(p, q)
    return Polynomial(npoly.polyadd(p._work(), q._work()), p.var)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_var(p, q)
    if p.is_zero or q.is_zero:
        return Polynomial.zero(p.var)
    return Polynomial(npoly.polymul(p.coeffs, q.coeffs), p.var)


def poly_scale(p: Polynomial, factor: float) -> Polynomial:
    return Polynomial(p.coeffs * float(factor), p.var)


def poly_reflect(p: Polynomial) -> Polynomial:
    """p(x) -> p(-x): negate odd-degree coefficients."""
    signs = np.where(np.arange(len(p.coeffs)) % 2 == 0, 1.0, -1.0)
    return Polynomial(p.coeffs * signs, p.var)


def poly_eval(p: Polynomial, x: ArrayLike) -> ArrayLike:
    """Horner evaluation; exact zero for the zero polynomial."""
    if p.is_zero:
        return np.zeros_like(np.asarray(x, dtype=float))[()]
    if p.degree == 0:
        return np.full_like(np.asarray(x, dtype=float), p.coeffs[0])[()]
    return npoly.polyval(x, p.coeffs)


def poly_derivative(p: Polynomial, order: int = 1) -> Polynomial:
    if p.degree < order:
        return Polynomial.zero(p.var)
    return Polynomial(npoly.polyder(p.coeffs, order), p.var)


def count_sign_changes(p: Polynomial, points: Iterable[float]) -> int:
    """Number of sign changes of p sampled at the given points (zeros count as changes)."""
    values = np.asarray(poly_eval(p, np.asarray(points, dtype=float)))
    signs = np.sign(values)
    if np.any(signs == 0):
        return int(np.count_nonzero(signs == 0)) + int(np.count_nonzero(np.diff(signs[signs != 0])))
    return int(np.count_nonzero(np.diff(signs)))


def laguerre(n: int, alpha: float, var: str = "x") -> Polynomial:
    """Generalized Laguerre polynomial L_n^(alpha) by three-term recurrence."""
    if n < 0:
        raise ValueError(f"Laguerre degree must be non-negative, got {n}")
    x = Polynomial.monomial(var)
    prev = Polynomial.zero(var)
    curr = Polynomial.constant(1.0, var)
    for k in range(n):
        nxt = ((2 * k + 1 + alpha) * curr - x * curr - (k + alpha) * prev) * (1.0 / (k + 1))
        prev, curr = curr, nxt
    return curr


def jacobi(n: int, alpha: float, beta: float, var: str = "x") -> Polynomial:
    """Jacobi polynomial P_n^(alpha,beta) by three-term recurrence.

    Raises DegenerateRecurrence if an intermediate denominator vanishes.
    """
    if n < 0:
        raise ValueError(f"Jacobi degree must be non-negative, got {n}")
    x = Polynomial.monomial(var)
    curr = Polynomial.constant(1.0, var)
    if n == 0:
        return curr
    prev = curr
    curr = Polynomial(np.array([(alpha - beta) / 2.0, (alpha + beta + 2.0) / 2.0]), var)
    s = alpha + beta
    for k in range(1, n):
        c = 2 * k + s
        den = 2.0 * (k + 1) * (k + s + 1) * c
        if math.isclose(den, 0.0, abs_tol=1e-12):
            raise DegenerateRecurrence(
                f"Jacobi recurrence denominator vanishes at k={k} for alpha={alpha}, beta={beta}"
            )
        a1 = (c + 1) * (c + 2) * c
        a0 = (c + 1) * (alpha - beta) * s
        a2 = 2.0 * (k + alpha) * (k + beta) * (c + 2)
        nxt = ((a0 * curr + a1 * (x * curr)) - a2 * prev) * (1.0 / den)
        prev, curr = curr, nxt
    return curr


def _binomial(a: float, k: int) -> float:
    """Generalized binomial coefficient with real upper argument."""
    return math.prod(a - j for j in range(k)) / math.factorial(k)


def _pochhammer(a: float, k: int) -> float:
    return math.prod(a + j for j in range(k))


def jacobi_edge(n: int, alpha: float, beta: float, var: str = "z") -> Polynomial:
    """P_n^(alpha,beta) expressed in z = (1 - x)/2.

    The coefficients are the terminating hypergeometric series, so each
    z^m term stays O(1) at z ~ 1/beta even when beta is huge.
    """
    if n < 0:
        raise ValueError(f"Jacobi degree must be non-negative, got {n}")
    s = alpha + beta
    coeffs = [
        (-1) ** m * _binomial(n + alpha, n - m) * _pochhammer(n + s + 1, m) / math.factorial(m)
        for m in range(n + 1)
    ]
    return Polynomial(np.array(coeffs), var)
