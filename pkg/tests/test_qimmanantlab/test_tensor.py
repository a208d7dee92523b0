# Standard library
from fractions import Fraction

# Third-party
import pytest

# First-party
import qimmanantlab.config
from qimmanantlab.tensor import (
    AUX,
    MODULE,
    InconsistentSystemError,
    SiteError,
    TensorOp,
    bar_conjugate,
    basis_index,
    build_D,
    build_P,
    build_R,
    build_R_inverse,
    build_Rcheck,
    build_Rcheck_inverse,
    embed,
    matrix_from_rows,
    matrix_unit,
    nullspace,
    q_trace,
    rank,
    site_block,
    solve_linear,
    trace_sites,
)

F = Fraction


def test_build_R(cfg):
    assert build_R(2, cfg).entries() == {
        (0, 0): F(3, 2),
        (1, 1): F(1),
        (1, 2): F(5, 6),
        (2, 2): F(1),
        (3, 3): F(3, 2),
    }
    assert build_Rcheck(2, cfg).entries() == {
        (0, 0): F(3, 2),
        (1, 2): F(1),
        (2, 1): F(1),
        (2, 2): F(5, 6),
        (3, 3): F(3, 2),
    }


@pytest.mark.parametrize("n", [2, 3])
def test_yang_baxter(n, any_cfg):
    R = build_R(n, any_cfg)
    r12, r13, r23 = (embed(R, sites, 3) for sites in ([1, 2], [1, 3], [2, 3]))
    assert r12 @ r13 @ r23 == r23 @ r13 @ r12


@pytest.mark.parametrize("n", [2, 3])
def test_hecke_quadratic(n, any_cfg):
    rc = build_Rcheck(n, any_cfg)
    zero = TensorOp.zeros(n, (AUX, AUX))
    assert (rc - any_cfg.q) @ (rc + any_cfg.power(-1)) == zero
    assert rc @ build_Rcheck_inverse(n, any_cfg) == TensorOp.identity(n, (AUX, AUX))
    assert build_R(n, any_cfg).inverse() == build_R_inverse(n, any_cfg)


def test_embed_reversed_sites(cfg):
    P = build_P(2)
    R = build_R(2, cfg)
    assert embed(R, [2, 1], 2) == P @ R @ P


def test_embed_errors(cfg):
    R = build_R(2, cfg)
    with pytest.raises(SiteError):
        embed(R, [1, 1], 3)
    with pytest.raises(SiteError):
        embed(R, [1, 4], 3)
    with pytest.raises(SiteError):
        embed(R, [1], 3)


def test_basis_index():
    assert basis_index(2, [1, 2]) == 1
    assert basis_index(2, [2, 1]) == 2
    assert basis_index(3, [3, 3, 3]) == 26


def test_traces(cfg):
    one = TensorOp.identity(2, (AUX,))
    assert q_trace(one, [1], cfg).scalar_value() == F(13, 9)
    a = TensorOp.from_entries(2, (AUX,), {(0, 1): 3, (1, 1): 5})
    assert trace_sites(embed(a, [1], 2), [2]) == a * 2
    assert trace_sites(a, []) == a
    with pytest.raises(SiteError):
        q_trace(a, [1, 1], cfg)


def test_site_block():
    op = embed(matrix_unit(2, 1, 2), [1], (AUX, MODULE))
    assert site_block(op, 1, 1, 2) == TensorOp.identity(2, (MODULE,))
    assert not site_block(op, 1, 1, 1)


def test_bar_conjugate(cfg):
    x = embed(matrix_unit(2, 1, 2), [1], 2)
    assert bar_conjugate(x, 1, cfg) == x
    rc = build_Rcheck(2, cfg)
    assert bar_conjugate(x, 2, cfg) == rc @ x @ rc.inverse()
    with pytest.raises(SiteError):
        bar_conjugate(x.with_layout((AUX, MODULE)), 3, cfg)
    with pytest.raises(SiteError):
        bar_conjugate(x.with_layout((AUX, MODULE)), 2, cfg)


def test_scalar_arithmetic():
    op = TensorOp.from_entries(2, (AUX,), {(0, 1): 1})
    identity = TensorOp.identity(2, (AUX,))
    assert op + 1 == op + identity
    assert 2 - op == identity * 2 - op
    assert (op * F(1, 2)).entry(0, 1) == F(1, 2)
    assert identity.is_scalar()
    assert not op.is_scalar()


def test_storage_does_not_change_equality(cfg):
    dense = build_R(2, cfg) @ build_R_inverse(2, cfg)
    with qimmanantlab.config.set_values(dense_threshold=2):
        sparse = TensorOp.identity(2, (AUX, AUX))
        assert sparse == dense
        assert dense == sparse


def test_linear_algebra():
    a = matrix_from_rows([[F(1), F(2)], [F(2), F(4)]], 2)
    assert rank(a) == 1
    (v,) = nullspace(a)
    assert v[0] + 2 * v[1] == 0
    assert v != (0, 0)
    b = matrix_from_rows([[F(2), F(0)], [F(0), F(3)]], 2)
    assert solve_linear(b, [F(1), F(1)]) == (F(1, 2), F(1, 3))
    with pytest.raises(InconsistentSystemError):
        solve_linear(matrix_from_rows([[F(1), F(0)], [F(0), F(0)]], 2), [0, 1])


@pytest.mark.parametrize("n", [2, 3])
def test_braid_relation(n, any_cfg):
    rc = build_Rcheck(n, any_cfg)
    b1, b2 = embed(rc, [1, 2], 3), embed(rc, [2, 3], 3)
    assert b1 @ b2 @ b1 == b2 @ b1 @ b2
    assert b1 @ b2 != b2 @ b1


@pytest.mark.parametrize("sites", [[1, 2], [3, 1], [2, 3]])
def test_embed_is_multiplicative(sites, cfg):
    a = build_R(2, cfg)
    b = build_Rcheck_inverse(2, cfg) + build_P(2) * 3
    layout = (AUX, MODULE, MODULE)
    assert embed(a @ b, sites, layout) == embed(a, sites, layout) @ embed(
        b, sites, layout
    )
    assert embed(TensorOp.identity(2, (AUX, AUX)), sites, 3) == TensorOp.identity(
        2, (AUX,) * 3
    )


def test_q_trace_cyclicity(cfg):
    layout = (AUX, MODULE)
    x = embed(
        TensorOp.from_entries(2, (AUX,), {(0, 1): 2, (1, 0): F(1, 3), (1, 1): 5}),
        [1],
        layout,
    )
    y = embed(
        TensorOp.from_entries(2, (AUX,), {(0, 0): 1, (0, 1): -1, (1, 0): 4}),
        [1],
        layout,
    )
    diagonal = embed(
        TensorOp.from_entries(2, (AUX,), {(0, 0): 3, (1, 1): F(1, 2)}), [1], layout
    )
    d = embed(build_D(2, cfg), [1], layout)
    assert q_trace(diagonal @ y, [1], cfg) == q_trace(y @ diagonal, [1], cfg)
    assert q_trace(x @ y, [1], cfg) == q_trace(y @ d @ x @ d.inverse(), [1], cfg)
    # tr_q(x y) = 8 - 4/27, tr_q(y x) = 29/9
    assert q_trace(x @ y, [1], cfg) == TensorOp.identity(2, (MODULE,)) * F(212, 27)
    assert q_trace(x @ y, [1], cfg) != q_trace(y @ x, [1], cfg)
