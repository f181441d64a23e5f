"""Tests for the built-in self-checks."""

import pytest

from dicke_battery import validation
from dicke_battery.errors import AnalyticConsistencyError, InvalidParameterError
from dicke_battery.validation import CheckResult, check_omega_residual, run_checks


class TestRunChecks:
    """Tests for run_checks()."""

    def test_all_pass(self, dicke_params):
        """The reference model passes every check."""
        results = run_checks(dicke_params)
        assert len(results) == 9
        failed = [r.name for r in results if not r.passed]
        assert failed == []

    def test_perturbed_omega_fails(self, dicke_params):
        """Moving Omega off the root breaks the residual check only."""
        results = {r.name: r for r in run_checks(dicke_params, perturb_omega=1e-3)}
        residual = results["beat frequency biquadratic residual"]
        assert not residual.passed
        assert "perturbed" in residual.detail
        assert sum(not r.passed for r in results.values()) == 1

    def test_below_critical_coupling(self, dicke_params):
        """Validation needs the superradiant phase."""
        with pytest.raises(InvalidParameterError, match="lambda_c"):
            run_checks(dicke_params.replace(coupling=0.01))

    def test_failing_check_is_reported(self, dicke_params, monkeypatch):
        """A check that raises becomes a failed result instead of aborting the run."""

        def broken(p):
            raise AnalyticConsistencyError("broken")

        monkeypatch.setattr(validation, "check_spin_norm", broken)
        results = {r.name: r for r in run_checks(dicke_params)}
        assert not results["spin norm"].passed
        assert results["spin norm"].detail == "broken"


class TestCheckResult:
    """Tests for individual results."""

    def test_residual_check(self, dicke_params):
        """The unperturbed residual is far below tolerance."""
        result = check_omega_residual(dicke_params)
        assert result.passed
        assert result.value < 1e-12

    def test_to_dict(self):
        """Results serialise every field."""
        data = CheckResult("x", True, 1e-13, 1e-12).to_dict()
        assert data == {"name": "x", "passed": True, "value": 1e-13, "tolerance": 1e-12, "detail": ""}
