"""Shared fixtures: hand-built reference states and one scenario run.

The pair states and the closed-form entropy constant are constructed
here independently of the package's own builders so tests compare two
routes rather than one route with itself.
"""
import math

import numpy as np
import pytest

from qcorr import DensityMatrix, OptimizerConfig, run_scenario


@pytest.fixture(scope="session")
def entropy_constant():
    # binary entropy of (2 + sqrt(2))/4 in closed form
    return (math.log(8.0) - math.sqrt(2.0) * math.atanh(1.0 / math.sqrt(2.0))) / math.log(4.0)


@pytest.fixture(scope="session")
def pair_pre():
    # equal classical mixture of |00> and |11>
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 0.5
    return DensityMatrix(m, (2, 2))


@pytest.fixture(scope="session")
def pair_post():
    # equal mixture of |00> and |1+>, written out by hand
    v0 = np.array([1, 0, 0, 0], dtype=complex)
    v1 = np.array([0, 0, 1, 1], dtype=complex) / math.sqrt(2.0)
    return DensityMatrix(0.5 * (np.outer(v0, v0) + np.outer(v1, v1)), (2, 2))


@pytest.fixture(scope="session")
def entangled_pair():
    # first two qubits after the third is filtered and traced out:
    # (|00><00| + |11><11|)/2 plus off-diagonal coherence 1/(2 sqrt(2))
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 0.5
    m[0, 3] = m[3, 0] = 0.5 / math.sqrt(2.0)
    return DensityMatrix(m, (2, 2))


@pytest.fixture(scope="session")
def bell_pair():
    v = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2.0)
    return DensityMatrix(np.outer(v, v), (2, 2))


@pytest.fixture(scope="session")
def scenario_reports():
    return run_scenario(OptimizerConfig())
