import numpy as np
import pytest

from spingeo.clifford import Multivector
from spingeo.fields import SpinorField
from spingeo.dual import power
from spingeo.model_space import model_space, _pack
from spingeo.spin_rep import clifford_action


@pytest.fixture
def flat3():
    return model_space("flat", 3)


@pytest.fixture
def sphere3():
    return model_space("sphere", 3, 1.0)


@pytest.fixture
def hyperbolic3():
    return model_space("hyperbolic", 3, -1.0)


def killing_candidate(ms, gamma, lam, phi0):
    """Ω^{1/2}(1 + λ x̃.)φ0, the Killing-spinor candidate family."""

    def fn(coords):
        xt = Multivector.from_coeffs(
            ms.space, [(1 << a, coords[a]) for a in range(ms.dim)])
        moved = clifford_action(gamma, xt, phi0)
        scale = power(ms.conformal_factor(coords), 0.5)
        return _pack([scale * (p + lam * q) for p, q in zip(phi0, moved)])

    return SpinorField(ms, gamma, fn)


def flat_twistor(ms, gamma, phi0, chi0):
    """φ0 + x̃.χ0 with constant spinors (flat twistor family)."""

    def fn(coords):
        xt = Multivector.from_coeffs(
            ms.space, [(1 << a, coords[a]) for a in range(ms.dim)])
        moved = clifford_action(gamma, xt, chi0)
        return _pack([p + q for p, q in zip(phi0, moved)])

    return SpinorField(ms, gamma, fn)


def rng(seed=0):
    return np.random.default_rng(seed)
