# Standard library
from fractions import Fraction

# Third-party
import pytest

# First-party
from qimmanantlab.combinatorics import YoungDiagram
from qimmanantlab.rep import (
    HighestWeightError,
    NotScalarError,
    build_rep,
    central_eigenvalue,
    eigenvalue_on,
    generator_blocks,
    highest_weight_vector,
    isotypic_projector,
    verify_highest_weight,
    verify_rtt,
)
from qimmanantlab.tensor import TensorOp, build_R, q_trace

F = Fraction


def failures(outcomes):
    return [o.name for o in outcomes if not o.passed]


def test_single_site(rep21, cfg):
    assert rep21.Lplus.with_layout(("aux", "aux")) == build_R(2, cfg)
    assert rep21.Lminus @ rep21.Lminus_inv == TensorOp.identity(2, rep21.layout)
    assert q_trace(rep21.L, [1], cfg) == rep21.module_identity * F(97, 36)


def test_generators_are_triangular(rep22):
    plus = generator_blocks(rep22, rep22.Lplus)
    minus = generator_blocks(rep22, rep22.Lminus)
    assert not plus[2, 1]
    assert not minus[1, 2]
    assert plus[1, 2]
    assert minus[2, 1]


@pytest.mark.parametrize("n, N", [(2, 1), (2, 2), (3, 1)])
def test_rtt(n, N, any_cfg):
    assert failures(verify_rtt(build_rep(n, N, any_cfg))) == []


@pytest.mark.slow
@pytest.mark.parametrize("n, N", [(2, 3), (3, 2)])
def test_rtt_large(n, N, cfg):
    assert failures(verify_rtt(build_rep(n, N, cfg))) == []


def test_highest_weight_vectors(rep21, rep22):
    assert highest_weight_vector(rep21, YoungDiagram((1,))) == (1, 0)
    assert highest_weight_vector(rep22, YoungDiagram((2,))) == (1, 0, 0, 0)
    assert highest_weight_vector(rep22, YoungDiagram((1, 1))) == (0, 1, F(-2, 3), 0)
    with pytest.raises(HighestWeightError):
        highest_weight_vector(rep21, YoungDiagram((2,)))


@pytest.mark.parametrize("rows", [(2,), (1, 1)])
def test_verify_highest_weight(rep22, rows):
    outcomes = verify_highest_weight(rep22, YoungDiagram(rows))
    assert failures(outcomes) == []


def test_weights(rep22, cfg):
    plus = generator_blocks(rep22, rep22.Lplus)
    xi = highest_weight_vector(rep22, YoungDiagram((1, 1)))
    assert eigenvalue_on(plus[1, 1], xi) == cfg.q
    assert eigenvalue_on(plus[2, 2], xi) == cfg.q


def test_central_eigenvalues(rep22, cfg):
    trace = q_trace(rep22.L, [1], cfg)
    sym = isotypic_projector(rep22, YoungDiagram((2,)))
    alt = isotypic_projector(rep22, YoungDiagram((1, 1)))
    # q^4 + q^-2 and q^2 + 1
    assert central_eigenvalue(trace, sym) == F(793, 144)
    assert central_eigenvalue(trace, alt) == F(13, 4)


def test_not_scalar(rep21):
    off_diagonal = generator_blocks(rep21, rep21.Lplus)[1, 2]
    with pytest.raises(NotScalarError):
        central_eigenvalue(off_diagonal, rep21.module_identity)
    with pytest.raises(NotScalarError):
        eigenvalue_on(off_diagonal + 1, (F(1), F(0)))
