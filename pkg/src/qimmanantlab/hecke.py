"""Hecke algebra action on tensor space: Jucys-Murphy elements and idempotents.

The generator T_k acts on (C^n)^{⊗m} as Ř on the sites k and k + 1.
"""

# Standard library
import dataclasses as dc
import itertools
import logging
from functools import cache, cached_property

# Local
from .combinatorics import (
    StandardTableau,
    addable_contents,
    partitions,
    ssyt_count,
    standard_tableaux,
)
from .exact import NonGenericParameterError, QConfig
from .report import Outcome, check_equal
from .tensor import AUX, TensorOp, rank, rcheck_at

logger = logging.getLogger(__name__)


@dc.dataclass(frozen=True)
class HeckeAction:
    """Images of the Hecke generators T_1, ..., T_{m-1} on m sites.

    Attributes
    ----------
    n : int
        dimension of each tensor factor
    m : int
        number of sites
    cfg : QConfig
        value of q

    """

    n: int
    m: int
    cfg: QConfig

    @property
    def layout(self) -> tuple[str, ...]:
        return (AUX,) * self.m

    @cached_property
    def identity(self) -> TensorOp:
        return TensorOp.identity(self.n, self.layout)

    def generator(self, k: int) -> TensorOp:
        if not 1 <= k < self.m:
            raise ValueError(f"generator T_{k} does not act on {self.m} sites")
        return rcheck_at(self.n, self.cfg, k, self.layout)

    @cached_property
    def generators(self) -> tuple[TensorOp, ...]:
        return tuple(self.generator(k) for k in range(1, self.m))


def _check_k(act: HeckeAction, k: int) -> None:
    if not 1 <= k <= act.m:
        raise ValueError(f"k={k} out of range 1..{act.m}")


@cache
def jm_operator(act: HeckeAction, k: int) -> TensorOp:
    """Image of the Jucys-Murphy element y_k, with y_{k+1} = T_k y_k T_k."""
    _check_k(act, k)
    if k == 1:
        return act.identity
    rk = act.generator(k - 1)
    return rk @ jm_operator(act, k - 1) @ rk


def transposition(act: HeckeAction, i: int, k: int) -> TensorOp:
    """Image of T_(i,k) = T_{k-1} ... T_{i+1} T_i T_{i+1} ... T_{k-1}, i < k."""
    op = act.generator(i)
    for j in range(i + 1, k):
        op = act.generator(j) @ op @ act.generator(j)
    return op


def jm_operator_from_transpositions(act: HeckeAction, k: int) -> TensorOp:
    """y_k = 1 + (q - q^{-1}) (T_(1,k) + ... + T_(k-1,k))."""
    _check_k(act, k)
    total = act.identity
    for i in range(1, k):
        total = total + transposition(act, i, k) * act.cfg.qdiff
    return total


@cache
def primitive_idempotent(act: HeckeAction, tableau: StandardTableau) -> TensorOp:
    """Image E_U of the primitive idempotent of a standard tableau.

    Built by interpolation over the spectrum of the Jucys-Murphy elements:
    E_U = E_V ∏ (y_m - q^{2c}) / (q^{2c_m} - q^{2c}), with V the tableau
    without its largest entry and c running over the addable contents of the
    shape of V other than c_m. Tableaux with fewer than ``act.m`` boxes give
    E_U ⊗ 1 on the remaining sites; shapes with more than n rows give zero.

    Raises
    ------
    NonGenericParameterError
        if an interpolation denominator vanishes.

    """
    m = tableau.size
    if m > act.m:
        raise ValueError(f"tableau with {m} boxes does not fit on {act.m} sites")
    if tableau.shape.num_rows > act.n:
        return TensorOp.zeros(act.n, act.layout)
    if m == 0:
        return act.identity
    smaller = tableau.restrict()
    c_m = tableau.contents()[-1]
    y = jm_operator(act, m)
    result = primitive_idempotent(act, smaller)
    for c in addable_contents(smaller.shape):
        if c == c_m:
            continue
        denominator = act.cfg.power(2 * c_m) - act.cfg.power(2 * c)
        if denominator == 0:
            raise NonGenericParameterError(
                f"q={act.cfg} separates no contents {c} and {c_m}"
            )
        result = result @ (y - act.cfg.power(2 * c)) * (1 / denominator)
    logger.debug("Built idempotent for tableau %s on %s sites", tableau, act.m)
    return result


def idempotent_rank_check(
    act: HeckeAction, tableau: StandardTableau
) -> tuple[int, int]:
    """Exact rank of E_U together with the expected number of SSYT."""
    return rank(primitive_idempotent(act, tableau)), ssyt_count(tableau.shape, act.n)


def tableaux_of_size(m: int, n: int | None = None) -> list[StandardTableau]:
    """All standard tableaux with m boxes, shapes with at most n rows."""
    return [
        tableau
        for shape in partitions(m, n)
        for tableau in standard_tableaux(shape)
    ]


def verify_idempotents(act: HeckeAction) -> list[Outcome]:
    """Check the defining properties of the idempotents on ``act.m`` sites."""
    cfg, m = act.cfg, act.m
    outcomes = [
        check_equal(
            "jm-commute",
            jm_operator(act, j) @ jm_operator(act, k),
            jm_operator(act, k) @ jm_operator(act, j),
        )
        for j, k in itertools.combinations(range(1, m + 1), 2)
    ]
    outcomes += [
        check_equal(
            f"jm-transpositions k={k}",
            jm_operator(act, k),
            jm_operator_from_transpositions(act, k),
        )
        for k in range(1, m + 1)
    ]
    tableaux = tableaux_of_size(m, act.n)
    total = TensorOp.zeros(act.n, act.layout)
    for tableau in tableaux:
        e = primitive_idempotent(act, tableau)
        total = total + e
        label = f"U={tableau}"
        outcomes.append(check_equal(f"idempotent {label}", e @ e, e))
        for k, c in enumerate(tableau.contents(), start=1):
            y = jm_operator(act, k)
            expected = e * cfg.power(2 * c)
            outcomes.append(check_equal(f"jm-left k={k} {label}", y @ e, expected))
            outcomes.append(check_equal(f"jm-right k={k} {label}", e @ y, expected))
        if m > 0:
            inverse = jm_operator(act, m).inverse()
            outcomes.append(
                check_equal(
                    f"jm-inverse {label}",
                    inverse @ e,
                    e * cfg.power(-2 * tableau.contents()[-1]),
                )
            )
        got, expected_rank = idempotent_rank_check(act, tableau)
        outcomes.append(
            check_equal(
                f"rank {label}",
                got,
                expected_rank,
                values={"rank": got, "ssyt": expected_rank},
            )
        )
    for first, second in itertools.permutations(tableaux, 2):
        if first.shape == second.shape:
            product = primitive_idempotent(act, first) @ primitive_idempotent(
                act, second
            )
            outcomes.append(
                Outcome(f"orthogonal U={first} U'={second}", not product)
            )
    outcomes.append(check_equal("completeness", total, act.identity))
    return outcomes
