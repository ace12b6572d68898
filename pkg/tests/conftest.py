import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from blockbench.functors import induce_trivial
from blockbench.modrep.homs import decompose
from blockbench.perm import psd16
from blockbench.workbench import Workbench

# Property runs use a fixed derivation of examples so reruns are identical.
settings.register_profile(
    "blockbench",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("blockbench")

# Filled in by test_acceptance, printed at the end of the session.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def wb():
    """Workbench for P:SD16 at p = 3 over GF(9)."""
    return Workbench(psd16(), 3)


@pytest.fixture(scope="session")
def simples(wb):
    return wb.simples


@pytest.fixture(scope="session")
def pims(wb):
    return wb.pims


@pytest.fixture(scope="session")
def vq_modules(wb):
    """The four indecomposable summands of k_Q induced to P:SD16, |Q| = 3."""
    Q = wb.subgroup("psub3")
    K = induce_trivial(wb.G, Q, wb.F)
    return [s.module for s in decompose(K, seed=wb.seed)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
