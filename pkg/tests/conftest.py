import sys
import numpy as np
import pytest

from repdim.quiver import A2, KRONECKER
from repdim.reps import Representation, catalog, projective_at
from repdim.xfield import Field

F5 = Field(5)


def regular(lam_a, lam_b, F=F5):
    """Kronecker module of dimension (1, 1) with arrow scalars a, b."""
    return Representation(KRONECKER, [1, 1], {"a": [[lam_a]], "b": [[lam_b]]}, F)


def conjugate(X, rng):
    """Same module in a random basis at every vertex."""
    F = X.field
    g = {v: F.random_invertible(rng, X.dim_at(v)) for v in X.quiver.vertices}
    from repdim.xfield import inverse

    mats = {}
    for a in X.quiver.arrows:
        mats[a.name] = F.matmul(F.matmul(g[a.target], X.mats[a.name]), inverse(F, g[a.source]))
    return Representation(X.quiver, X.dim, mats, F)


@pytest.fixture(scope="session")
def kron_cat():
    return catalog(KRONECKER, bound=3, field=F5)


@pytest.fixture(scope="session")
def a2_cat():
    return catalog(A2, field=F5)


@pytest.fixture(scope="session")
def kron_P1():
    return projective_at(KRONECKER, "1", F5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
