import numpy as np
import pytest

from afpp import ModelParams
from afpp.optimal_control import QUALITY, QUANTITY, ControlProblem


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture
def transcritical_params():
    # gamma=1, alpha=1, eps=0.5, delta=8, m=6: critical quantities at
    # xi=2 (exchange with E1) and xi=3 (creation of E2)
    return ModelParams(gamma=1.0, alpha=1.0, xi=2.0, epsilon=0.5, m=6.0, delta=8.0)


@pytest.fixture
def hopf_params():
    # interior focus destabilizes as eps decreases through ~0.0323
    return ModelParams(gamma=15.0, alpha=0.1, xi=0.45, epsilon=0.04, m=0.28, delta=0.45)


@pytest.fixture
def scurve_params():
    # S-shaped interior branch over eps in [0.002, 0.02]: two folds,
    # bistable window in between
    return ModelParams(gamma=15.0, alpha=0.1, xi=1.0, epsilon=0.01, m=0.258, delta=0.3)


def _quality_problem():
    p = ModelParams(gamma=7.0, alpha=1.0, xi=0.1, epsilon=0.3, m=1.0, delta=3.0)
    return ControlProblem(params=p, control=QUALITY, bounds=(0.5, 2.0),
                          initial=(5.0, 2.0), target=(1.0, 4.0), mesh_size=20)


@pytest.fixture
def quality_problem():
    return _quality_problem()


@pytest.fixture(scope="module")
def quality_problem_module():
    # module scope so one expensive solve can feed several tests
    return _quality_problem()


@pytest.fixture
def quantity_problem():
    p = ModelParams(gamma=4.0, alpha=1.0, xi=0.5, epsilon=0.5, m=1.0, delta=2.0)
    return ControlProblem(params=p, control=QUANTITY, bounds=(0.1, 3.0),
                          initial=(5.0, 2.0), target=(1.0, 4.0), mesh_size=20)
