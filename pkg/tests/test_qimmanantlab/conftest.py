"""Test configuration."""

# Standard library
from fractions import Fraction

# Third-party
import pytest

# First-party
from qimmanantlab.exact import QConfig
from qimmanantlab.rep import build_rep


@pytest.fixture(scope="session")
def cfg():
    """The default value q = 3/2."""
    return QConfig(Fraction(3, 2))


@pytest.fixture(scope="session", params=["3/2", "5/7"])
def any_cfg(request):
    """Both reference values of q."""
    return QConfig(Fraction(request.param))


@pytest.fixture(scope="session")
def rep21(cfg):
    """Vector representation of U_q(gl_2)."""
    return build_rep(2, 1, cfg)


@pytest.fixture(scope="session")
def rep22(cfg):
    """Second tensor power of the vector representation of U_q(gl_2)."""
    return build_rep(2, 2, cfg)
