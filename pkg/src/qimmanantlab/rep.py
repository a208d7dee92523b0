"""Evaluation representation of U_q(gl_n) on tensor powers of C^n.

The generator matrices act on ``aux ⊗ W_1 ⊗ ... ⊗ W_N``: site 1 is the
auxiliary copy of C^n holding the matrix indices of L^±, sites 2..N+1 form the
module. A single module site carries L^+ = R and L^- = (R_21)^{-1}; the
N-site action multiplies the single site matrices in the order
L_(0,W_N) ... L_(0,W_1).

"""

# Standard library
import dataclasses as dc
import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import cache, cached_property

# Local
from .combinatorics import YoungDiagram, as_diagram, standard_tableaux
from .exact import QConfig
from .hecke import HeckeAction, primitive_idempotent
from .report import Outcome, check_equal
from .tensor import (
    AUX,
    MODULE,
    TensorOp,
    bar_conjugate,
    build_R,
    build_R_inverse,
    build_Rcheck,
    column_basis,
    embed,
    nullspace,
    site_block,
    stack_images,
)

logger = logging.getLogger(__name__)


class HighestWeightError(RuntimeError):
    pass


class NotScalarError(ValueError):
    pass


@dc.dataclass(frozen=True, eq=False)
class EvaluatedRep:
    """Generator matrices L^+, L^- and L = L^+ (L^-)^{-1} on aux ⊗ module.

    Attributes
    ----------
    n : int
        rank of gl_n
    N : int
        number of module sites
    cfg : QConfig
        value of q
    Lplus, Lminus, Lminus_inv, L : TensorOp
        operators on 1 + N sites, the first one auxiliary

    """

    n: int
    N: int
    cfg: QConfig
    Lplus: TensorOp
    Lminus: TensorOp
    Lminus_inv: TensorOp
    L: TensorOp

    @property
    def layout(self) -> tuple[str, ...]:
        return (AUX,) + (MODULE,) * self.N

    @property
    def module_layout(self) -> tuple[str, ...]:
        return (MODULE,) * self.N

    @property
    def module_sites(self) -> list[int]:
        return list(range(2, self.N + 2))

    @cached_property
    def module_identity(self) -> TensorOp:
        return TensorOp.identity(self.n, self.module_layout)

    def on_aux(self, op: TensorOp, site: int, layout: Sequence[str]) -> TensorOp:
        """Place an operator of this representation on aux ``site`` of ``layout``.

        The target layout holds its auxiliary sites first and the N module
        sites last.
        """
        total = len(layout)
        return embed(op, [site, *range(total - self.N + 1, total + 1)], layout)


@cache
def build_rep(n: int, N: int, cfg: QConfig) -> EvaluatedRep:
    """Build the representation on N module sites.

    Parameters
    ----------
    n : int
        rank, at least 2
    N : int
        number of module sites, zero gives the trivial representation
    cfg : QConfig
        value of q

    """
    if n < 2 or N < 0:
        raise ValueError(f"no representation for n={n}, N={N}")
    logger.info("Building representation n=%s N=%s q=%s", n, N, cfg)
    layout = (AUX,) + (MODULE,) * N
    identity = TensorOp.identity(n, layout)
    lplus, lminus, lminus_inv = identity, identity, identity
    for k in range(N, 0, -1):
        lplus = lplus @ embed(build_R(n, cfg), [1, 1 + k], layout)
        lminus = lminus @ embed(build_R_inverse(n, cfg), [1 + k, 1], layout)
    for k in range(1, N + 1):
        lminus_inv = lminus_inv @ embed(build_R(n, cfg), [1 + k, 1], layout)
    return EvaluatedRep(n, N, cfg, lplus, lminus, lminus_inv, lplus @ lminus_inv)


def generator_blocks(
    rep: EvaluatedRep, op: TensorOp
) -> dict[tuple[int, int], TensorOp]:
    """Matrix entries (i, j) of an aux-indexed operator as module operators."""
    return {
        (i, j): site_block(op, 1, i, j)
        for i in range(1, rep.n + 1)
        for j in range(1, rep.n + 1)
    }


def _two_copies(rep: EvaluatedRep) -> tuple[str, ...]:
    return (AUX, AUX) + rep.module_layout


def verify_rtt(rep: EvaluatedRep) -> list[Outcome]:
    """Check the RLL relations and their consequences as operator identities.

    Covers R L^±_1 L^±_2 = L^±_2 L^±_1 R, R L^+_1 L^-_2 = L^-_2 L^+_1 R,
    L^-_1 L_2 = L_{ō2} L^-_1, the reflection equation for L, triangularity of
    L^± and the inverse diagonal blocks.
    """
    layout = _two_copies(rep)
    R = embed(build_R(rep.n, rep.cfg), [1, 2], layout)
    Rc = embed(build_Rcheck(rep.n, rep.cfg), [1, 2], layout)
    plus = [rep.on_aux(rep.Lplus, a, layout) for a in (1, 2)]
    minus = [rep.on_aux(rep.Lminus, a, layout) for a in (1, 2)]
    L1, L2 = (rep.on_aux(rep.L, a, layout) for a in (1, 2))
    outcomes = [
        check_equal("RL+L+", R @ plus[0] @ plus[1], plus[1] @ plus[0] @ R),
        check_equal("RL-L-", R @ minus[0] @ minus[1], minus[1] @ minus[0] @ R),
        check_equal("RL+L-", R @ plus[0] @ minus[1], minus[1] @ plus[0] @ R),
        check_equal(
            "L-L bar", minus[0] @ L2, bar_conjugate(L1, 2, rep.cfg) @ minus[0]
        ),
        check_equal("reflection", Rc @ L1 @ Rc @ L1, L1 @ Rc @ L1 @ Rc),
    ]
    upper = generator_blocks(rep, rep.Lplus)
    lower = generator_blocks(rep, rep.Lminus)
    outcomes.append(
        Outcome(
            "triangular",
            not any(upper[i, j] for i, j in upper if i > j)
            and not any(lower[i, j] for i, j in lower if i < j),
        )
    )
    for i in range(1, rep.n + 1):
        outcomes.append(
            check_equal(
                f"l+{i}{i} l-{i}{i}", upper[i, i] @ lower[i, i], rep.module_identity
            )
        )
        outcomes.append(
            check_equal(
                f"l-{i}{i} l+{i}{i}", lower[i, i] @ upper[i, i], rep.module_identity
            )
        )
    return outcomes


def module_projector(rep: EvaluatedRep, tableau) -> TensorOp:
    """Hecke idempotent of a tableau with N boxes on the module sites.

    The module action commutes with Ř on adjacent module sites, so the image
    is an irreducible submodule of highest weight ``tableau.shape``.
    """
    if tableau.size != rep.N:
        raise ValueError(f"tableau {tableau} does not have {rep.N} boxes")
    act = HeckeAction(rep.n, rep.N, rep.cfg)
    return primitive_idempotent(act, tableau).with_layout(rep.module_layout)


def isotypic_projector(rep: EvaluatedRep, shape: YoungDiagram) -> TensorOp:
    """Projector of the first standard tableau of the shape."""
    if rep.N == 0:
        return rep.module_identity
    return module_projector(rep, standard_tableaux(as_diagram(shape))[0])


def highest_weight_vector(
    rep: EvaluatedRep, shape: YoungDiagram
) -> tuple[Fraction, ...]:
    """The highest weight vector inside the image of the isotypic projector.

    Solves l^-_{ij} ξ = 0 for i > j and l^+_{ii} ξ = q^{λ_i} ξ exactly and
    scales the solution to have leading coordinate 1.

    Raises
    ------
    HighestWeightError
        if the solution space is not one-dimensional.

    """
    shape = as_diagram(shape)
    if shape.size != rep.N or shape.num_rows > rep.n:
        raise HighestWeightError(f"{shape} is no weight of {rep.N} sites for n={rep.n}")
    basis = column_basis(isotypic_projector(rep, shape))
    plus = generator_blocks(rep, rep.Lplus)
    minus = generator_blocks(rep, rep.Lminus)
    conditions = [op for (i, j), op in minus.items() if i > j]
    conditions += [
        plus[i, i] - rep.cfg.power(lam) for i, lam in enumerate(shape.padded(rep.n), 1)
    ]
    solutions = nullspace(stack_images(conditions, basis))
    if len(solutions) != 1:
        logger.error("Found %s highest weight vectors for %s", len(solutions), shape)
        raise HighestWeightError(
            f"{len(solutions)} highest weight vectors of weight {shape}"
        )
    (coefficients,) = solutions
    vector = [
        sum((c * b[r] for c, b in zip(coefficients, basis)), start=Fraction(0))
        for r in range(rep.module_identity.dim)
    ]
    lead = next(v for v in vector if v)
    return tuple(v / lead for v in vector)


def eigenvalue_on(op: TensorOp, vector: Sequence[Fraction]) -> Fraction:
    """The scalar χ with op ξ = χ ξ.

    Raises
    ------
    NotScalarError
        if ξ is no eigenvector.

    """
    image = op.apply(vector)
    index = next(i for i, v in enumerate(vector) if v)
    chi = image[index] / vector[index]
    if any(a != chi * b for a, b in zip(image, vector)):
        raise NotScalarError("vector is not an eigenvector")
    return chi


def central_eigenvalue(op: TensorOp, proj: TensorOp) -> Fraction:
    """The scalar by which ``op`` acts on the image of ``proj``.

    Raises
    ------
    NotScalarError
        if op proj is not a multiple of proj.

    """
    entries = proj.entries()
    if not entries:
        raise NotScalarError("projector is zero")
    (i, j), value = next(iter(entries.items()))
    product = op @ proj
    chi = product.entry(i, j) / value
    if product != proj * chi:
        raise NotScalarError("operator is not scalar on the isotypic component")
    return chi


def verify_highest_weight(rep: EvaluatedRep, shape: YoungDiagram) -> list[Outcome]:
    """Existence of ξ, its l^+_{ii} eigenvalues and the commutant property."""
    shape = as_diagram(shape)
    label = f"λ={shape}"
    proj = embed(isotypic_projector(rep, shape), rep.module_sites, rep.layout)
    outcomes = [
        check_equal(f"commutant {name} {label}", proj @ op, op @ proj)
        for name, op in (("L+", rep.Lplus), ("L-", rep.Lminus), ("L", rep.L))
    ]
    try:
        xi = highest_weight_vector(rep, shape)
    except HighestWeightError as err:
        return outcomes + [Outcome(f"highest weight {label}", False, witness=str(err))]
    plus = generator_blocks(rep, rep.Lplus)
    for i, lam in enumerate(shape.padded(rep.n), 1):
        got = eigenvalue_on(plus[i, i], xi)
        outcomes.append(
            check_equal(
                f"weight l+{i}{i} {label}",
                got,
                rep.cfg.power(lam),
                values={"xi": xi},
            )
        )
    return outcomes
