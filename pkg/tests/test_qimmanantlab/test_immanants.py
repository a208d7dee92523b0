# Standard library
from fractions import Fraction

# Third-party
import pytest

# First-party
from qimmanantlab import immanants
from qimmanantlab.combinatorics import StandardTableau, YoungDiagram, standard_tableaux
from qimmanantlab.exact import Poly
from qimmanantlab.immanants import (
    basis_shapes,
    basis_weights,
    build_E_poly,
    build_immanant_poly,
    central_family,
    column,
    eigenvalue_table,
    gelfand_invariants,
    q_immanant,
    verify_basis_rank,
    verify_centrality,
    verify_column_eigenvalues,
    verify_eigenvalue_genfn,
    verify_eigenvalues,
    verify_newton,
    verify_tableau_independence,
    weights_of,
)
from qimmanantlab.rep import build_rep, central_eigenvalue, isotypic_projector
from qimmanantlab.tensor import TensorOp

F = Fraction

TWO_BOXES = [YoungDiagram((2,)), YoungDiagram((1, 1))]


def failures(outcomes):
    return [o.name for o in outcomes if not o.passed]


def test_one_box(rep21):
    poly = build_immanant_poly(rep21, StandardTableau(((1,),)))
    one = rep21.module_identity
    assert poly.route == "both"
    assert poly.coefficient(0) == one * F(97, 36)
    assert poly.coefficient(1) == one * F(13, 9)
    assert not poly.coefficient(2)
    assert poly.at(F(2)) == one * (F(97, 36) + 2 * F(13, 9))


def test_empty_tableau_rejected(rep21):
    with pytest.raises(ValueError):
        build_immanant_poly(rep21, StandardTableau(()))


def test_q_trace_route_only(rep22):
    tableau = StandardTableau(((1, 2),))
    fast = build_immanant_poly(rep22, tableau, check_routes=False)
    assert fast.route == "q-trace"
    assert fast.poly == build_immanant_poly(rep22, tableau).poly


@pytest.mark.parametrize(
    "shape, weight, expected",
    [
        ((1, 1), (1, 1), F(9, 4)),
        ((1, 1), (2,), F(9, 4)),
        ((2,), (1, 1), F(133, 16)),
        ((2,), (2,), F(582193, 20736)),
    ],
)
def test_q_immanant_eigenvalues(rep22, shape, weight, expected):
    proj = isotypic_projector(rep22, YoungDiagram(weight))
    chi = central_eigenvalue(q_immanant(rep22, YoungDiagram(shape)), proj)
    assert chi == expected


def test_gelfand_invariants(rep21):
    invariants = gelfand_invariants(rep21, 2)
    one = rep21.module_identity
    assert invariants["tr_q L^1"] == one * F(97, 36)
    # q^4 + q^-4 + 1 - q^-2
    assert invariants["tr_q L^2"] == one * F(7537, 1296)
    with pytest.raises(ValueError):
        gelfand_invariants(rep21, 0)


def test_E_poly(rep21):
    e = build_E_poly(rep21)
    one = rep21.module_identity
    assert e.var == "u"
    assert e == Poly({0: one, -1: one * F(-97, 36), -2: one}, "u")


@pytest.mark.parametrize("N", [1, 2])
@pytest.mark.parametrize("shape", TWO_BOXES, ids=str)
def test_centrality(N, shape, cfg):
    rep = build_rep(2, N, cfg)
    poly = build_immanant_poly(rep, standard_tableaux(shape)[0])
    outcomes = verify_centrality(poly, rep)
    assert [o.name for o in outcomes] == ["central z^0", "central z^1", "central z^2"]
    assert failures(outcomes) == []


def test_tableau_independence(rep22):
    outcomes = verify_tableau_independence(YoungDiagram((2, 1)), rep22)
    assert failures(outcomes) == []
    (single,) = verify_tableau_independence(YoungDiagram((2,)), rep22)
    assert single.name == "single tableau"


@pytest.mark.parametrize("shape", [YoungDiagram((1,)), *TWO_BOXES], ids=str)
def test_eigenvalues(rep22, shape):
    outcomes = verify_eigenvalues(shape, rep22, [F(0), F(1), F(2)])
    assert len(outcomes) == 6
    assert failures(outcomes) == []


def test_eigenvalue_table(rep21):
    (outcome,) = verify_eigenvalues(YoungDiagram((1,)), rep21, [F(0), F(1)])[:1]
    assert outcome.values == {"lambda": YoungDiagram((1,)), "z": 0, "chi": F(97, 36)}


def test_eigenvalues_need_enough_samples(rep21):
    with pytest.raises(ValueError):
        verify_eigenvalues(YoungDiagram((2,)), rep21, [F(0), F(1), F(1)])


def test_newton(rep21, rep22):
    assert failures(verify_newton(rep21, 6)) == []
    assert failures(verify_newton(rep22, 4)) == []
    with pytest.raises(ValueError):
        verify_newton(rep21, 1)


@pytest.mark.parametrize("weight", [(2,), (1, 1)])
def test_eigenvalue_generating_function(rep22, weight):
    shape = YoungDiagram(weight)
    assert failures(verify_eigenvalue_genfn(shape, rep22, 5)) == []
    assert failures(verify_column_eigenvalues(shape, rep22)) == []


def test_central_family(rep21):
    family = central_family(rep21, 2, 3)
    labels = [label for label, _ in family.members]
    assert labels[:3] == ["tr_q L^1", "tr_q L^2", "tr_q L^3"]
    assert "S(1,1)" in labels
    assert failures(family.check_commuting()) == []


def test_basis(cfg):
    assert basis_shapes(2, 2) == [
        YoungDiagram(rows) for rows in [(), (1,), (2,), (1, 1)]
    ]
    assert len(basis_weights(2, 4)) == 9
    assert column(3) == YoungDiagram((1, 1, 1))
    for z in (F(0), F(1), F(-3, 2)):
        rank_outcome, table_outcome = verify_basis_rank(2, cfg, 2, 4, z)
        assert rank_outcome.passed
        assert rank_outcome.values == {"rank": 4, "rows": 4, "columns": 9}
        assert table_outcome.passed


def test_basis_eigenvalue_table(cfg):
    table = eigenvalue_table(2, cfg, 1, 1)
    assert table == [[1, 1], [F(13, 9), F(97, 36)]]


class ZeroImmanant:
    def __init__(self, rep, tableau):
        self.rep = rep

    def at(self, z):
        return TensorOp.zeros(self.rep.n, self.rep.module_layout)


def test_basis_reads_operators(cfg, monkeypatch):
    monkeypatch.setattr(immanants, "build_immanant_poly", ZeroImmanant)
    assert eigenvalue_table(2, cfg, 1, 1) == [[1, 1], [0, 0]]
    rank_outcome, table_outcome = verify_basis_rank(2, cfg, 1, 1)
    assert not rank_outcome.passed
    assert rank_outcome.witness == {"rank": 1}
    assert not table_outcome.passed


def test_weights_of(rep22):
    assert weights_of(rep22) == TWO_BOXES


@pytest.mark.slow
def test_three_box_eigenvalues(cfg):
    rep = build_rep(2, 3, cfg)
    for shape in [YoungDiagram((3,)), YoungDiagram((2, 1))]:
        outcomes = verify_eigenvalues(shape, rep, [F(0), F(1), F(2), F(3)])
        assert failures(outcomes) == []


def test_newton_trivial_module(cfg):
    rep = build_rep(2, 0, cfg)
    assert weights_of(rep) == [YoungDiagram(())]
    assert failures(verify_newton(rep, 6)) == []


SHAPES_N3 = [YoungDiagram(rows) for rows in [(1,), (2,), (1, 1)]]


@pytest.mark.slow
@pytest.mark.parametrize("shape", SHAPES_N3, ids=str)
def test_centrality_n3(shape, cfg):
    rep = build_rep(3, 1, cfg)
    poly = build_immanant_poly(rep, standard_tableaux(shape)[0])
    assert failures(verify_centrality(poly, rep)) == []


@pytest.mark.slow
def test_tableau_independence_n3(cfg):
    rep = build_rep(3, 1, cfg)
    outcomes = verify_tableau_independence(YoungDiagram((2, 1)), rep)
    assert failures(outcomes) == []


@pytest.mark.slow
@pytest.mark.parametrize("shape", SHAPES_N3, ids=str)
def test_eigenvalues_n3(shape, cfg):
    rep = build_rep(3, 1, cfg)
    outcomes = verify_eigenvalues(shape, rep, [F(0), F(1), F(2)])
    assert len(outcomes) == 3
    assert failures(outcomes) == []


@pytest.mark.slow
@pytest.mark.parametrize("N", [1, 2])
def test_newton_n3(N, cfg):
    rep = build_rep(3, N, cfg)
    assert failures(verify_newton(rep, 6)) == []
    for weight in weights_of(rep):
        assert failures(verify_eigenvalue_genfn(weight, rep, 6)) == []
