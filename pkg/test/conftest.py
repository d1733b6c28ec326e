"""
Shared fixtures for all tests.
"""
import json
import sys
from pathlib import Path

import pytest

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from xell.config import TOL_SCALE_ENV, VerifyConfig  # noqa: E402
from xell.families import Family, ParamSet  # noqa: E402
from xell.schrodinger import SystemSpec  # noqa: E402


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Default tolerances regardless of the caller's environment."""
    monkeypatch.delenv(TOL_SCALE_ENV, raising=False)


@pytest.fixture
def config():
    """Full-scope configuration with default tolerances."""
    return VerifyConfig.full()


@pytest.fixture
def quick_config():
    return VerifyConfig.quick()


@pytest.fixture
def l1_spec():
    return SystemSpec(Family.L1, 2, ParamSet(1.5))


@pytest.fixture
def l2_spec():
    return SystemSpec(Family.L2, 2, ParamSet(1.5))


@pytest.fixture
def j1_spec():
    return SystemSpec(Family.J1, 2, ParamSet(1.0, 2.0))


@pytest.fixture
def j2_spec():
    return SystemSpec(Family.J2, 2, ParamSet(2.0, 1.0))


@pytest.fixture(params=["l1", "l2", "j1", "j2"])
def any_spec(request, l1_spec, l2_spec, j1_spec, j2_spec):
    """Each deformed family at a representative coupling."""
    return {"l1": l1_spec, "l2": l2_spec, "j1": j1_spec, "j2": j2_spec}[request.param]


class CliResult:
    def __init__(self, code, out, err):
        self.code = code
        self.out = out
        self.err = err

    @property
    def records(self):
        return [json.loads(line) for line in self.out.splitlines() if line.strip()]


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process and capture its output."""
    from xell.cli import main

    def _run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return _run
