import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def angle_gap(a, b):
    """Largest componentwise distance on the circle."""
    d = np.abs(np.asarray(a) - np.asarray(b))
    return float(np.max(np.minimum(d, 2 * np.pi - d)))


def match_sets(eqs_a, eqs_b, tol):
    """True iff the two equilibrium lists pair up one-to-one within ``tol``."""
    if len(eqs_a) != len(eqs_b):
        return False
    unused = list(eqs_b)
    for e in eqs_a:
        for j, f in enumerate(unused):
            if angle_gap(e.theta, f.theta) <= tol:
                del unused[j]
                break
        else:
            return False
    return True
