"""Unit tests for deforming polynomials, X_l eigenpolynomials, norms and energies."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from xell.errors import InvalidParams, ZeroDenominator
from xell.families import (
    EDGE,
    FAR_EDGE,
    Family,
    Kind,
    ParamSet,
    classical_norm,
    energy,
    norm_closed,
    validate_params,
    xi,
    xpoly,
)
from xell.polynomials import jacobi, laguerre, poly_reflect


@pytest.mark.unit
class TestParamSet:
    def test_kind(self):
        assert ParamSet(1.0).kind is Kind.LAGUERRE
        assert ParamSet(1.0, 2.0).kind is Kind.JACOBI

    def test_shifted(self):
        """lambda + k*delta shifts every coupling by k."""
        assert ParamSet(1.0).shifted(2) == ParamSet(3.0)
        assert ParamSet(1.0, 2.0).shifted() == ParamSet(2.0, 3.0)

    def test_swapped(self):
        assert ParamSet(1.0, 2.0).swapped() == ParamSet(2.0, 1.0)
        with pytest.raises(InvalidParams):
            ParamSet(1.0).swapped()

    def test_family_kind(self):
        assert Family("J2").kind is Kind.JACOBI
        assert Family.L1.classical is Family.L
        assert Family.J.is_classical


@pytest.mark.unit
class TestValidateParams:
    def test_j1_ordering_ok(self):
        validate_params(Family.J1, ParamSet(1.0, 2.0))

    def test_j1_ordering_violated(self):
        """J1 needs h > g > 0."""
        with pytest.raises(InvalidParams, match="h>g>0"):
            validate_params(Family.J1, ParamSet(2.0, 1.0))

    def test_j2_ordering_violated(self):
        with pytest.raises(InvalidParams, match="g>h>0"):
            validate_params(Family.J2, ParamSet(1.0, 2.0))

    def test_ordering_can_be_relaxed(self):
        validate_params(Family.J2, ParamSet(1.0, 2.0), enforce_ordering=False)

    def test_positivity_always_enforced(self):
        with pytest.raises(InvalidParams):
            validate_params(Family.J2, ParamSet(-1.0, 2.0), enforce_ordering=False)

    def test_l1_zero_coupling(self):
        with pytest.raises(InvalidParams, match="g>0"):
            validate_params(Family.L1, ParamSet(0.0))

    def test_missing_h(self):
        with pytest.raises(InvalidParams):
            validate_params(Family.J1, ParamSet(1.0))

    def test_extra_h(self):
        with pytest.raises(InvalidParams):
            validate_params(Family.L2, ParamSet(1.0, 2.0))

    def test_nonfinite(self):
        with pytest.raises(InvalidParams):
            validate_params(Family.L1, ParamSet(math.nan))


@pytest.mark.unit
class TestXi:
    def test_l1_degree_one(self):
        """xi_1^L1(eta; 1) = 1.5 + eta."""
        p = xi(Family.L1, 1, ParamSet(1.0))
        assert_allclose(p.coeffs, [1.5, 1.0])
        assert p(2.0) == pytest.approx(3.5)

    def test_l2_degree_one(self):
        """xi_1^L2 is the negative of xi_1^L1."""
        p = xi(Family.L2, 1, ParamSet(1.0))
        assert_allclose(p.coeffs, [-1.5, -1.0])
        assert p(2.0) == pytest.approx(-3.5)

    @pytest.mark.parametrize("family,params", [
        (Family.L1, ParamSet(1.0)),
        (Family.L2, ParamSet(1.0)),
        (Family.J1, ParamSet(1.0, 2.0)),
        (Family.J2, ParamSet(2.0, 1.0)),
    ])
    def test_degree_zero_is_one(self, family, params):
        assert xi(family, 0, params).coeffs.tolist() == [1.0]

    def test_degree_minus_one_is_zero(self):
        assert xi(Family.L1, -1, ParamSet(1.0)).is_zero

    @pytest.mark.parametrize("ell", [1, 2, 3, 4])
    def test_degree(self, ell):
        assert xi(Family.J1, ell, ParamSet(0.5, 3.0)).degree == ell

    def test_l1_definition(self):
        """xi_l^L1(eta; g) = L_l^(g+l-3/2)(-eta)."""
        g, ell = 0.7, 3
        expected = poly_reflect(laguerre(ell, g + ell - 1.5, "eta"))
        assert_allclose(xi(Family.L1, ell, ParamSet(g)).coeffs, expected.coeffs)

    def test_j2_definition(self):
        """xi_l^J2(eta; g, h) = P_l^(g+l-3/2, -h-l-1/2)(eta)."""
        g, h, ell = 3.0, 0.5, 2
        expected = jacobi(ell, g + ell - 1.5, -h - ell - 0.5, "eta")
        assert_allclose(xi(Family.J2, ell, ParamSet(g, h)).coeffs, expected.coeffs)

    def test_edge_variable(self):
        """The z-form is the same polynomial with eta = 1 - 2z."""
        params = ParamSet(1.0, 2.0)
        z = np.linspace(0, 1, 7)
        assert_allclose(xi(Family.J1, 3, params, EDGE)(z), xi(Family.J1, 3, params)(1 - 2 * z), rtol=1e-12)

    def test_far_edge_variable(self):
        """The u-form is the same polynomial with eta = 2u - 1."""
        params = ParamSet(3.0, 0.5)
        u = np.linspace(0, 1, 7)
        assert_allclose(xi(Family.J2, 3, params, FAR_EDGE)(u), xi(Family.J2, 3, params)(2 * u - 1), rtol=1e-12)

    def test_edge_variable_rejected_for_laguerre(self):
        with pytest.raises(ValueError):
            xi(Family.L1, 1, ParamSet(1.0), EDGE)
        with pytest.raises(ValueError):
            xi(Family.L2, 1, ParamSet(1.0), FAR_EDGE)

    def test_classical_family_only_ell_zero(self):
        with pytest.raises(InvalidParams):
            xi(Family.L, 1, ParamSet(1.0))

    def test_invalid_params(self):
        with pytest.raises(InvalidParams):
            xi(Family.J1, 1, ParamSet(2.0, 1.0))


@pytest.mark.unit
class TestXPoly:
    def test_l1_groundstate(self):
        """P_{1,0}^L1(eta; 1) = xi_1^L1(eta; 2) = 2.5 + eta."""
        built = xpoly(Family.L1, 1, 0, ParamSet(1.0))
        assert_allclose(built.poly.coeffs, [2.5, 1.0])
        assert built.poly(0.0) == pytest.approx(2.5)

    def test_l2_groundstate(self):
        built = xpoly(Family.L2, 1, 0, ParamSet(1.0))
        assert_allclose(built.poly.coeffs, [-2.5, -1.0])

    @pytest.mark.parametrize("family,params", [
        (Family.L1, ParamSet(1.5)),
        (Family.L2, ParamSet(0.7)),
        (Family.J1, ParamSet(0.5, 3.0)),
        (Family.J2, ParamSet(3.0, 0.5)),
    ])
    @pytest.mark.parametrize("ell", [1, 2, 3])
    @pytest.mark.parametrize("n", [0, 1, 4])
    def test_degree_is_ell_plus_n(self, family, params, ell, n):
        assert xpoly(family, ell, n, params).degree == ell + n

    def test_classical_laguerre(self):
        """l = 0 gives the base polynomial L_n^(g-1/2)."""
        built = xpoly(Family.L, 0, 3, ParamSet(2.0))
        assert_allclose(built.poly.coeffs, laguerre(3, 1.5).coeffs)

    def test_classical_jacobi(self):
        built = xpoly(Family.J, 0, 2, ParamSet(1.0, 2.0))
        assert_allclose(built.poly.coeffs, jacobi(2, 0.5, 1.5).coeffs)

    def test_classical_ground_state_is_one(self):
        assert xpoly(Family.J, 0, 0, ParamSet(1.0, 2.0)).poly.coeffs.tolist() == [1.0]

    def test_l1_definition(self):
        """P_{l,n}^L1 = xi_l(g+1) P_n(g+l) - xi_{l-1}(g+2) P_{n-1}(g+l)."""
        g, ell, n = 1.5, 2, 3
        expected = (
            xi(Family.L1, ell, ParamSet(g + 1)) * laguerre(n, g + ell - 0.5, "eta")
            - xi(Family.L1, ell - 1, ParamSet(g + 2)) * laguerre(n - 1, g + ell - 0.5, "eta")
        )
        assert_allclose(xpoly(Family.L1, ell, n, ParamSet(g)).poly.coeffs, expected.coeffs, rtol=1e-12)

    def test_mirror_example(self):
        """P_{1,1}^J2(eta; 2, 1) = P_{1,1}^J1(-eta; 1, 2)."""
        j2 = xpoly(Family.J2, 1, 1, ParamSet(2.0, 1.0)).poly
        j1 = xpoly(Family.J1, 1, 1, ParamSet(1.0, 2.0)).poly
        assert_allclose(j2.coeffs, poly_reflect(j1).coeffs, rtol=1e-12, atol=1e-12)

    def test_edge_variable_matches_eta(self):
        params = ParamSet(2.0, 1.0)
        z = np.linspace(0, 1, 9)
        edge = xpoly(Family.J2, 2, 3, params, EDGE).poly
        plain = xpoly(Family.J2, 2, 3, params).poly
        assert_allclose(edge(z), plain(1 - 2 * z), rtol=1e-10, atol=1e-10)

    @pytest.mark.parametrize("ell,n", [(1, 0), (2, 3), (3, 4)])
    def test_far_edge_variable_matches_eta(self, ell, n):
        params = ParamSet(3.0, 0.5)
        u = np.linspace(0, 1, 9)
        far = xpoly(Family.J2, ell, n, params, FAR_EDGE).poly
        plain = xpoly(Family.J2, ell, n, params).poly
        assert far.var == FAR_EDGE
        assert_allclose(far(u), plain(2 * u - 1), rtol=1e-10, atol=1e-10)

    def test_zero_denominator(self):
        """h = g with l = 1 makes a J1 mixing coefficient singular."""
        with pytest.raises(ZeroDenominator):
            xpoly(Family.J1, 1, 1, ParamSet(1.5, 1.5), enforce_ordering=False)

    def test_negative_n(self):
        with pytest.raises(InvalidParams):
            xpoly(Family.L1, 1, -1, ParamSet(1.0))

    def test_invalid_params(self):
        with pytest.raises(InvalidParams, match="h>g>0"):
            xpoly(Family.J1, 1, 0, ParamSet(2.0, 1.0))


@pytest.mark.unit
class TestNorms:
    def test_classical_laguerre(self):
        """h_0^L(2) = Gamma(2.5)/2."""
        assert norm_closed(Family.L, 0, 0, ParamSet(2.0)) == pytest.approx(0.6646701940895685, rel=1e-12)

    def test_l1(self):
        assert norm_closed(Family.L1, 1, 0, ParamSet(1.0)) == pytest.approx(1.1077836568159475, rel=1e-12)

    def test_l2_coincides_at_ell_one(self):
        """L1 and L2 norms agree at l = 1."""
        for n in range(4):
            assert norm_closed(Family.L2, 1, n, ParamSet(1.3)) == pytest.approx(
                norm_closed(Family.L1, 1, n, ParamSet(1.3)), rel=1e-13
            )

    def test_classical_jacobi(self):
        """h_n^J from gamma functions."""
        g, h, n = 1.0, 2.0, 2
        expected = (
            math.gamma(n + g + 0.5) * math.gamma(n + h + 0.5)
            / (2 * math.factorial(n) * (2 * n + g + h) * math.gamma(n + g + h))
        )
        assert classical_norm(Kind.JACOBI, n, ParamSet(g, h)) == pytest.approx(expected, rel=1e-12)

    def test_mirror_norms_equal(self):
        for n in range(4):
            assert norm_closed(Family.J2, 2, n, ParamSet(3.0, 0.5)) == pytest.approx(
                norm_closed(Family.J1, 2, n, ParamSet(0.5, 3.0)), rel=1e-13
            )

    def test_positive(self):
        assert norm_closed(Family.J1, 3, 5, ParamSet(0.5, 3.0)) > 0


@pytest.mark.unit
class TestEnergy:
    def test_laguerre(self):
        """4n independent of couplings and l."""
        assert energy(Family.L2, 3, 2, ParamSet(1.5)) == 8.0

    def test_jacobi(self):
        """4n(n + g + h + 2l)."""
        assert energy(Family.J1, 1, 1, ParamSet(1.0, 2.0)) == 24.0

    @pytest.mark.parametrize("family,params", [
        (Family.L1, ParamSet(1.0)),
        (Family.J2, ParamSet(2.0, 1.0)),
    ])
    def test_groundstate_zero(self, family, params):
        assert energy(family, 2, 0, params) == 0.0
