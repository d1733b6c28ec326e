"""Integration tests for the orthogonality check."""
import pytest

from xell.families import Family, ParamSet
from xell.schrodinger import SystemSpec
from xell.verify import orthogonality_check

ACCEPTANCE = [
    (family, ell, ParamSet(g))
    for family in (Family.L1, Family.L2)
    for g in (0.7, 1.5, 3.0)
    for ell in (1, 2, 3)
] + [
    (family, ell, params)
    for family, params in (
        (Family.J1, ParamSet(1.0, 2.0)),
        (Family.J1, ParamSet(0.5, 3.0)),
        (Family.J2, ParamSet(2.0, 1.0)),
        (Family.J2, ParamSet(3.0, 0.5)),
    )
    for ell in (1, 2, 3)
]


@pytest.mark.integration
class TestOrthogonality:
    def test_passes(self, any_spec, config):
        report = orthogonality_check(any_spec, 5, config)
        assert report.passed
        assert report.check == "ortho"
        assert len(report.values) == 6

    def test_reports_closed_forms(self, l1_spec, config):
        report = orthogonality_check(l1_spec, 2, config)
        assert report.details["closed_form"] == pytest.approx(report.values, rel=1e-8)

    def test_l1_example(self, config):
        report = orthogonality_check(SystemSpec(Family.L1, 1, ParamSet(1.0)), 0, config)
        assert report.values[0] == pytest.approx(1.1077836568159475, rel=1e-8)

    def test_j2_table_example(self, config):
        report = orthogonality_check(SystemSpec(Family.J2, 2, ParamSet(3.0, 1.0)), 2, config)
        assert report.details["max_diag_gap"] < 1e-8

    def test_zero_tolerance_fails(self, l2_spec, config):
        """Quadrature round-off never reaches exactly zero."""
        report = orthogonality_check(l2_spec, 3, config.with_tolerance("ortho", 0.0))
        assert not report.passed

    @pytest.mark.slow
    @pytest.mark.parametrize("family,ell,params", ACCEPTANCE)
    def test_acceptance_matrix(self, family, ell, params, config):
        report = orthogonality_check(SystemSpec(family, ell, params), 5, config)
        assert report.passed, report.details
