import math
from pathlib import Path

import numpy as np
import pytest

from icem import PureState, SchmidtSpectrum

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

PHI1_VALUES = (0.5, 1.0 / 3.0, 1.0 / 6.0)
PHI2_B1 = 0.25
PHI2_B2 = (9.0 + math.sqrt(13.0)) / 24.0
PHI2_VALUES = (PHI2_B2, PHI2_B1, 1.0 - PHI2_B1 - PHI2_B2)
RANK4_VALUES = (0.4, 0.3, 0.2, 0.1)


def diag_state(values, d=None) -> PureState:
    """Two-qudit state sum_i sqrt(v_i) |ii> whose Schmidt spectrum is `values`."""
    values = tuple(values)
    d = d or len(values)
    amp = np.zeros(d * d, dtype=complex)
    for i, v in enumerate(values):
        amp[i * d + i] = math.sqrt(v)
    return PureState((d, d), amp)


@pytest.fixture
def phi1_spectrum() -> SchmidtSpectrum:
    return SchmidtSpectrum.from_values(PHI1_VALUES)


@pytest.fixture
def phi2_spectrum() -> SchmidtSpectrum:
    return SchmidtSpectrum.from_values(PHI2_VALUES)


@pytest.fixture
def phi1_state() -> PureState:
    return diag_state(PHI1_VALUES)


@pytest.fixture
def rank4_state() -> PureState:
    return diag_state(RANK4_VALUES)


@pytest.fixture
def ghz3() -> PureState:
    amp = np.zeros(8, dtype=complex)
    amp[0] = amp[7] = 1.0 / math.sqrt(2.0)
    return PureState((2, 2, 2), amp)


@pytest.fixture
def w3() -> PureState:
    amp = np.zeros(8, dtype=complex)
    amp[1] = amp[2] = amp[4] = 1.0 / math.sqrt(3.0)
    return PureState((2, 2, 2), amp)


@pytest.fixture
def zero_bell() -> PureState:
    amp = np.zeros(8, dtype=complex)
    amp[0] = amp[3] = 1.0 / math.sqrt(2.0)
    return PureState((2, 2, 2), amp)
