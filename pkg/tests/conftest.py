import numpy as np
import pytest

from icef.waveform import WaveformConfig


@pytest.fixture(scope="session")
def nr():
    return WaveformConfig.nr_20mhz()


@pytest.fixture(scope="session")
def toy():
    # N_DFT=8, N_ov=2, N_act=4: 16-point grid, 4 active subcarriers
    return WaveformConfig(8, 2, 4, prb_size=2)


@pytest.fixture(scope="session")
def small():
    # 10 PRBs on a 1024-point grid; fast enough for ensembles in unit tests
    return WaveformConfig(256, 4, 120, prb_size=12)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
