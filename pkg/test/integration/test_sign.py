"""Integration tests for the sign check of the deforming polynomials."""
import pytest

from xell.families import Family, ParamSet
from xell.schrodinger import SystemSpec
from xell.verify import eta_samples, sign_check

from .test_orthogonality import ACCEPTANCE


@pytest.mark.integration
class TestSignCheck:
    def test_passes(self, any_spec, config):
        report = sign_check(any_spec, config)
        assert report.passed
        assert report.details["lambda"] == 0
        assert report.details["lambda+delta"] == 0

    def test_samples(self, l1_spec, j1_spec):
        lag = eta_samples(l1_spec)
        jac = eta_samples(j1_spec)
        assert len(lag) == len(jac) == 10_000
        assert lag.min() > 0 and lag.max() == pytest.approx(200.0)
        assert jac.min() > -1 and jac.max() < 1

    def test_reports_distance_from_zero(self, j2_spec, config):
        report = sign_check(j2_spec, config)
        assert report.details["min_abs_lambda"] > 0
        assert report.details["min_abs_lambda+delta"] > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("family,ell,params", ACCEPTANCE)
    def test_acceptance_matrix(self, family, ell, params, config):
        assert sign_check(SystemSpec(family, ell, params), config).passed
