# Standard library
from fractions import Fraction

# Third-party
import pytest

# First-party
from qimmanantlab.capelli import (
    capelli_image_entry,
    capelli_point,
    capelli_sides,
    verify_capelli,
    verify_traced_capelli,
    weyl_image_of_L,
)
from qimmanantlab.combinatorics import StandardTableau, YoungDiagram
from qimmanantlab.weyl import FreeElement, ScaleExceededError

F = Fraction


def letter(kind, i, j):
    return FreeElement.letter(kind, i, j)


def failures(outcomes):
    return [o.name for o in outcomes if not o.passed]


def test_capelli_point(cfg):
    assert capelli_point(cfg) == F(6, 5)


def test_image_of_L(cfg):
    image = weyl_image_of_L(2, cfg)
    expected = (
        letter("m", 1, 1) * letter("d", 1, 1)
        + letter("m", 1, 2) * letter("d", 2, 1)
        - F(6, 5)
    )
    assert image.entry(0, 0) == expected
    m21, m22 = letter("m", 2, 1), letter("m", 2, 2)
    assert image.entry(1, 0) == m21 * letter("d", 1, 1) + m22 * letter("d", 2, 1)


def test_one_box_identity_is_literal(cfg):
    tableau = StandardTableau(((1,),))
    outcomes = verify_capelli(tableau, cfg)
    assert len(outcomes) == 4
    assert failures(outcomes) == []
    assert all(o.values == {"residue": "zero"} for o in outcomes)
    lhs, rhs = capelli_sides(tableau, 2, cfg)
    assert lhs == rhs
    m11, m12 = letter("m", 1, 1), letter("m", 1, 2)
    entry = capelli_image_entry(tableau, (0, 1), cfg)
    assert entry == m11 * letter("d", 1, 2) + m12 * letter("d", 2, 2)


def test_one_box_trace(cfg):
    outcomes = verify_traced_capelli(YoungDiagram((1,)), cfg)
    assert [o.name for o in outcomes] == [
        "traced μ=(1)",
        "symbolic image μ=(1)",
        "S(z) at z=1/(q-1/q) μ=(1) N=1",
    ]
    assert failures(outcomes) == []


def test_three_boxes_exceed_the_caps(cfg):
    with pytest.raises(ScaleExceededError):
        capelli_sides(StandardTableau(((1, 2, 3),)), 2, cfg)


@pytest.mark.slow
@pytest.mark.parametrize(
    "filling", [((1, 2),), ((1,), (2,))], ids=["row", "column"]
)
def test_two_box_identities(cfg, filling):
    outcomes = verify_capelli(StandardTableau(filling), cfg)
    assert len(outcomes) == 16
    assert failures(outcomes) == []


@pytest.mark.slow
@pytest.mark.parametrize("rows", [(2,), (1, 1)])
def test_two_box_traces(cfg, rows):
    outcomes = verify_traced_capelli(YoungDiagram(rows), cfg, module_sites=2)
    assert failures(outcomes) == []
