import numpy as np
import pytest

import beamgeneric as bg

ALL_IDS = bg.ALL_MODEL_IDS

DAMPED_IDS = tuple(m for m in ALL_IDS if m not in (bg.ModelId.TIMOSHENKO_UNDAMPED,
                                                   bg.ModelId.BRESSE_UNDAMPED))


def rel_inf(a, b):
    """Infinity-norm difference relative to max(1, magnitudes)."""
    a = np.asarray(a)
    b = np.asarray(b)
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


@pytest.fixture(scope="session")
def grid64():
    return bg.Grid(64, 1.0)


@pytest.fixture(scope="session")
def grid32():
    return bg.Grid(32, 1.0)


@pytest.fixture(scope="session")
def models32(grid32):
    return {mid: bg.build_model(mid, bg.ModelParams(), grid32) for mid in ALL_IDS}


@pytest.fixture(scope="session")
def models64(grid64):
    return {mid: bg.build_model(mid, bg.ModelParams(), grid64) for mid in ALL_IDS}
