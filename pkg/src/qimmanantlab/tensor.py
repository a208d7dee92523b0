"""Exact operators on tensor powers of C^n and the R-matrix toolkit.

A basis vector e_{i_1} ⊗ ... ⊗ e_{i_s} of (C^n)^{⊗s} has the row-major index
``sum((i_k - 1) * n**(s - k))``, so site 1 is the most significant digit.
Every operator equality in the package relies on this single encoding.

Matrices are :class:`sympy.polys.matrices.DomainMatrix` over ``QQ``. Operators
whose dimension exceeds the ``dense_threshold`` configuration value are kept in
sparse storage, smaller ones in dense storage.

"""

# Standard library
import dataclasses as dc
import logging
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import cache, reduce
from typing import Any

# Third-party
import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# Local
from . import config
from .exact import QConfig, as_scalar

logger = logging.getLogger(__name__)

SiteIndex = int
AUX = "aux"
MODULE = "module"


class SiteError(ValueError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def to_domain(value: Fraction | int) -> Any:
    value = as_scalar(value)
    return QQ(value.numerator, value.denominator)


def to_scalar(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _coerce(matrix: DomainMatrix) -> DomainMatrix:
    if max(matrix.shape) > config.get("dense_threshold"):
        return matrix.to_sparse()
    return matrix.to_dense()


def _like(matrix: DomainMatrix, ref: DomainMatrix) -> DomainMatrix:
    # operands of one product must share the storage format
    if ref.rep.fmt == "sparse":
        return matrix.to_sparse()
    return matrix.to_dense()


def _rows(matrix: DomainMatrix) -> Mapping[int, Mapping[int, Any]]:
    return matrix.to_sparse().rep


def _is_zero(matrix: DomainMatrix) -> bool:
    return all(not v for row in _rows(matrix).values() for v in row.values())


def _matrix(entries: Mapping[int, Mapping[int, Any]], shape: tuple[int, int]):
    rows = {i: {j: v for j, v in row.items() if v} for i, row in entries.items()}
    return DomainMatrix({i: row for i, row in rows.items() if row}, shape, QQ)


def matrix_from_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    """Sparse matrix from rows of exact scalars."""
    entries = {
        i: {j: to_domain(v) for j, v in enumerate(row) if v}
        for i, row in enumerate(rows)
    }
    return _matrix(entries, (len(rows), ncols))


def matrix_from_columns(
    columns: Sequence[Sequence[Fraction]], nrows: int
) -> DomainMatrix:
    """Sparse matrix whose j-th column is ``columns[j]``."""
    entries: dict[int, dict[int, Any]] = {}
    for j, col in enumerate(columns):
        for i, v in enumerate(col):
            if v:
                entries.setdefault(i, {})[j] = to_domain(v)
    return _matrix(entries, (nrows, len(columns)))


def vstack(blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    """Stack sparse matrices with equal column counts on top of each other."""
    ncols = blocks[0].shape[1]
    entries: dict[int, dict[int, Any]] = {}
    offset = 0
    for block in blocks:
        if block.shape[1] != ncols:
            raise ValueError("column counts differ")
        for i, row in _rows(block).items():
            entries[offset + i] = dict(row)
        offset += block.shape[0]
    return _matrix(entries, (offset, ncols))


@dc.dataclass(frozen=True, eq=False)
class TensorOp:
    """Exact square operator on a tensor power of C^n.

    Attributes
    ----------
    matrix : DomainMatrix
        matrix of size n^s x n^s over QQ
    n : int
        dimension of every tensor factor
    layout : tuple[str, ...]
        role of every site, either ``"aux"`` or ``"module"``

    """

    matrix: DomainMatrix
    n: int
    layout: tuple[str, ...]

    def __post_init__(self):
        dim = self.n ** len(self.layout)
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"matrix of shape {self.matrix.shape} does not act on "
                f"{len(self.layout)} sites of dimension {self.n}"
            )
        object.__setattr__(self, "layout", tuple(self.layout))
        object.__setattr__(self, "matrix", _coerce(self.matrix))

    @classmethod
    def from_entries(
        cls,
        n: int,
        layout: Sequence[str],
        entries: Mapping[tuple[int, int], Fraction | int],
    ) -> "TensorOp":
        rows: dict[int, dict[int, Any]] = {}
        for (i, j), v in entries.items():
            if v:
                rows.setdefault(i, {})[j] = to_domain(v)
        dim = n ** len(layout)
        return cls(_matrix(rows, (dim, dim)), n, tuple(layout))

    @classmethod
    def identity(cls, n: int, layout: Sequence[str]) -> "TensorOp":
        dim = n ** len(layout)
        return cls.from_entries(n, layout, {(i, i): 1 for i in range(dim)})

    @classmethod
    def zeros(cls, n: int, layout: Sequence[str]) -> "TensorOp":
        return cls.from_entries(n, layout, {})

    @property
    def num_sites(self) -> int:
        return len(self.layout)

    @property
    def dim(self) -> int:
        return self.n**self.num_sites

    def _check_compatible(self, other: "TensorOp") -> None:
        if self.n != other.n or self.num_sites != other.num_sites:
            raise SiteError(
                f"operators on {self.num_sites} sites of dimension {self.n} and "
                f"{other.num_sites} sites of dimension {other.n} do not combine"
            )

    def _new(self, matrix: DomainMatrix) -> "TensorOp":
        return TensorOp(matrix, self.n, self.layout)

    def __matmul__(self, other: "TensorOp") -> "TensorOp":
        if not isinstance(other, TensorOp):
            return NotImplemented
        self._check_compatible(other)
        return self._new(self.matrix * _like(other.matrix, self.matrix))

    def __add__(self, other: "TensorOp | Fraction | int") -> "TensorOp":
        if not isinstance(other, TensorOp):
            other = TensorOp.identity(self.n, self.layout) * other
        self._check_compatible(other)
        return self._new(self.matrix + _like(other.matrix, self.matrix))

    __radd__ = __add__

    def __neg__(self) -> "TensorOp":
        return self._new(-self.matrix)

    def __sub__(self, other: "TensorOp | Fraction | int") -> "TensorOp":
        return self + (-other)

    def __rsub__(self, other: Fraction | int) -> "TensorOp":
        return (-self) + other

    def __mul__(self, scalar: Fraction | int) -> "TensorOp":
        if isinstance(scalar, TensorOp):
            return NotImplemented
        return self._new(self.matrix * to_domain(scalar))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorOp):
            return NotImplemented
        if self.n != other.n or self.num_sites != other.num_sites:
            return False
        return _is_zero(self.matrix - _like(other.matrix, self.matrix))

    def __bool__(self) -> bool:
        return not _is_zero(self.matrix)

    def __repr__(self) -> str:
        return f"TensorOp(n={self.n}, layout={self.layout}, nnz={len(self.entries())})"

    def inverse(self) -> "TensorOp":
        return self._new(self.matrix.inv())

    def with_layout(self, layout: Sequence[str]) -> "TensorOp":
        return TensorOp(self.matrix, self.n, tuple(layout))

    def entries(self) -> dict[tuple[int, int], Fraction]:
        """Nonzero entries keyed by (row, column) in ascending order."""
        rows = _rows(self.matrix)
        return {
            (i, j): to_scalar(rows[i][j])
            for i in sorted(rows)
            for j in sorted(rows[i])
            if rows[i][j]
        }

    def entry(self, row: int, col: int) -> Fraction:
        return to_scalar(_rows(self.matrix).get(row, {}).get(col, QQ(0)))

    def scalar_value(self) -> Fraction:
        """Value of an operator on zero sites."""
        if self.num_sites:
            raise SiteError("operator still acts on sites")
        return self.entry(0, 0)

    def apply(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for (i, j), v in self.entries().items():
            if vector[j]:
                out[i] += v * vector[j]
        return tuple(out)

    def commutes_with(self, other: "TensorOp") -> bool:
        return self @ other == other @ self

    def is_scalar(self) -> bool:
        """Whether the operator is a multiple of the identity."""
        return self == TensorOp.identity(self.n, self.layout) * self.entry(0, 0)


def basis_index(n: int, digits: Sequence[int]) -> int:
    """Row-major index of e_{d_1} ⊗ ... ⊗ e_{d_s}, digits are 1-based."""
    index = 0
    for d in digits:
        index = index * n + (d - 1)
    return index


def basis_vector(n: int, digits: Sequence[int]) -> tuple[Fraction, ...]:
    vector = [Fraction(0)] * n ** len(digits)
    vector[basis_index(n, digits)] = Fraction(1)
    return tuple(vector)


def _layout(total: int | Sequence[str]) -> tuple[str, ...]:
    if isinstance(total, int):
        return (AUX,) * total
    return tuple(total)


def _check_sites(sites: Sequence[SiteIndex], total: int) -> None:
    if len(set(sites)) != len(sites):
        raise SiteError(f"duplicate sites in {list(sites)}")
    if any(not 1 <= s <= total for s in sites):
        raise SiteError(f"sites {list(sites)} out of range 1..{total}")


def site_offsets(n: int, sites: Sequence[SiteIndex], total: int) -> list[int]:
    """Global index contribution of every local multi-index on the given sites."""
    if not sites:
        return [0]
    weights = n ** (total - np.asarray(sites, dtype=np.int64))
    digits = np.array(list(np.ndindex(*(n,) * len(sites))), dtype=np.int64)
    return (digits @ weights).tolist()


def embed(
    op: TensorOp, at: Sequence[SiteIndex], total: int | Sequence[str]
) -> TensorOp:
    """Let ``op`` act on the sites ``at`` of a larger tensor power.

    Parameters
    ----------
    op : TensorOp
        operator on k sites
    at : Sequence[SiteIndex]
        k distinct 1-based target sites, the i-th site of ``op`` goes to ``at[i]``
    total : int | Sequence[str]
        number of target sites or the full target layout

    Raises
    ------
    SiteError
        if sites repeat, fall out of range or do not match the arity of ``op``.

    """
    layout = _layout(total)
    num = len(layout)
    at = list(at)
    if len(at) != op.num_sites:
        raise SiteError(f"operator on {op.num_sites} sites placed on {at}")
    _check_sites(at, num)
    local = site_offsets(op.n, at, num)
    rest = site_offsets(op.n, [s for s in range(1, num + 1) if s not in at], num)
    rows = _rows(op.matrix)
    entries: dict[int, dict[int, Any]] = {}
    for base in rest:
        for i, row in rows.items():
            target = entries.setdefault(base + local[i], {})
            for j, v in row.items():
                target[base + local[j]] = v
    dim = op.n**num
    return TensorOp(_matrix(entries, (dim, dim)), op.n, layout)


def _partial_trace(
    op: TensorOp, over: Sequence[SiteIndex], weights: Sequence[Any]
) -> TensorOp:
    over = list(over)
    _check_sites(over, op.num_sites)
    if not over:
        return op
    n, total = op.n, op.num_sites
    keep = [s for s in range(1, total + 1) if s not in over]
    digits = np.array(list(np.ndindex(*(n,) * total)), dtype=np.int64)
    traced = digits[:, [s - 1 for s in over]]
    key = (traced @ n ** np.arange(len(over) - 1, -1, -1)).tolist()
    kept = (digits[:, [s - 1 for s in keep]] @ n ** np.arange(len(keep) - 1, -1, -1))
    kept = kept.tolist()
    weight_of_key = [
        reduce(lambda a, b: a * b, (weights[d] for d in t), QQ(1))
        for t in np.ndindex(*(n,) * len(over))
    ]
    acc: dict[int, dict[int, Any]] = {}
    for i, row in _rows(op.matrix).items():
        for j, v in row.items():
            if key[i] != key[j]:
                continue
            target = acc.setdefault(kept[i], {})
            term = weight_of_key[key[i]] * v
            target[kept[j]] = target[kept[j]] + term if kept[j] in target else term
    dim = n ** len(keep)
    layout = tuple(op.layout[s - 1] for s in keep)
    return TensorOp(_matrix(acc, (dim, dim)), n, layout)


def trace_sites(op: TensorOp, over: Sequence[SiteIndex]) -> TensorOp:
    """Plain partial trace over the given sites."""
    return _partial_trace(op, over, [QQ(1)] * op.n)


def q_trace(op: TensorOp, over: Sequence[SiteIndex], cfg: QConfig) -> TensorOp:
    """Partial trace with a copy of D multiplied into every traced site.

    Tracing over no sites returns ``op`` unchanged; tracing over all sites
    returns an operator on zero sites, see :meth:`TensorOp.scalar_value`.
    """
    return _partial_trace(op, over, [to_domain(cfg.power(-2 * i)) for i in range(op.n)])


def matrix_unit(n: int, i: int, j: int) -> TensorOp:
    """The one-site matrix unit e_ij with 1-based indices."""
    return TensorOp.from_entries(n, (AUX,), {(i - 1, j - 1): 1})


def site_block(op: TensorOp, site: SiteIndex, i: int, j: int) -> TensorOp:
    """The (i, j) block of ``op`` with respect to ``site``.

    Writing op = sum e_ij ⊗ X_ij with e_ij acting on ``site``, returns X_ij on
    the remaining sites.
    """
    unit = embed(matrix_unit(op.n, j, i), [site], op.layout)
    return trace_sites(unit @ op, [site])


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n={n} must be positive")


@cache
def build_R(n: int, cfg: QConfig) -> TensorOp:
    """R = q Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q−q⁻¹) Σ_{i<j} e_ij⊗e_ji."""
    _check_n(n)
    entries: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        for j in range(n):
            entries[i * n + j, i * n + j] = cfg.q if i == j else Fraction(1)
            if i < j:
                entries[i * n + j, j * n + i] = cfg.qdiff
    return TensorOp.from_entries(n, (AUX, AUX), entries)


@cache
def build_R_inverse(n: int, cfg: QConfig) -> TensorOp:
    _check_n(n)
    entries: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        for j in range(n):
            entries[i * n + j, i * n + j] = cfg.power(-1) if i == j else Fraction(1)
            if i < j:
                entries[i * n + j, j * n + i] = -cfg.qdiff
    return TensorOp.from_entries(n, (AUX, AUX), entries)


@cache
def build_P(n: int) -> TensorOp:
    _check_n(n)
    return TensorOp.from_entries(
        n, (AUX, AUX), {(b * n + a, a * n + b): 1 for a in range(n) for b in range(n)}
    )


@cache
def build_D(n: int, cfg: QConfig) -> TensorOp:
    _check_n(n)
    return TensorOp.from_entries(
        n, (AUX,), {(i, i): cfg.power(-2 * i) for i in range(n)}
    )


@cache
def build_Rcheck(n: int, cfg: QConfig) -> TensorOp:
    return build_P(n) @ build_R(n, cfg)


@cache
def build_Rcheck_inverse(n: int, cfg: QConfig) -> TensorOp:
    return build_Rcheck(n, cfg) - cfg.qdiff


@cache
def rcheck_at(
    n: int, cfg: QConfig, site: SiteIndex, layout: tuple[str, ...], inverse=False
) -> TensorOp:
    """Ř (or its inverse) acting on the adjacent sites ``site`` and ``site + 1``."""
    local = build_Rcheck_inverse(n, cfg) if inverse else build_Rcheck(n, cfg)
    logger.debug("Embedding Ř at site %s of %s", site, len(layout))
    return embed(local, [site, site + 1], layout)


def bar_conjugate(X: TensorOp, k: SiteIndex, cfg: QConfig) -> TensorOp:
    """Move an operator from site 1 to site k by conjugation with Ř.

    Returns Ř_{k−1}⋯Ř_1 X Ř_1⁻¹⋯Ř_{k−1}⁻¹, in particular ``X`` itself for k=1.
    Sites 1..k must all be auxiliary.
    """
    if not 1 <= k <= X.num_sites:
        raise SiteError(f"k={k} out of range 1..{X.num_sites}")
    if any(kind != AUX for kind in X.layout[:k]):
        raise SiteError(f"sites 1..{k} are not all auxiliary in {X.layout}")
    for i in range(1, k):
        X = (
            rcheck_at(X.n, cfg, i, X.layout)
            @ X
            @ rcheck_at(X.n, cfg, i, X.layout, inverse=True)
        )
    return X


def _as_matrix(op: TensorOp | DomainMatrix) -> DomainMatrix:
    return op.matrix if isinstance(op, TensorOp) else op


def rank(op: TensorOp | DomainMatrix) -> int:
    """Exact rank over QQ, computed by the Gauss-Jordan elimination of sympy."""
    return _as_matrix(op).rank()


def nullspace(op: TensorOp | DomainMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel as tuples of scalars."""
    matrix = _as_matrix(op).to_dense()
    ncols = matrix.shape[1]
    basis = matrix.nullspace()
    rows = _rows(basis)
    return [
        tuple(to_scalar(rows.get(r, {}).get(c, QQ(0))) for c in range(ncols))
        for r in range(basis.shape[0])
    ]


def column_basis(op: TensorOp | DomainMatrix) -> list[tuple[Fraction, ...]]:
    """Pivot columns of the matrix, a basis of its image."""
    matrix = _as_matrix(op)
    _, pivots = matrix.to_dense().rref()
    rows = _rows(matrix)
    nrows = matrix.shape[0]
    return [
        tuple(to_scalar(rows.get(r, {}).get(c, QQ(0))) for r in range(nrows))
        for c in pivots
    ]


def solve_many(
    a: DomainMatrix, rhs: Sequence[Sequence[Fraction] | Mapping[int, Fraction]]
) -> list[dict[int, Fraction] | None]:
    """Solve ``a x = b`` for several right-hand sides with one elimination.

    Returns, for every right-hand side, a sparse solution (free variables zero)
    or ``None`` if the system is inconsistent.
    """
    nrows, ncols = a.shape
    entries = {i: dict(row) for i, row in _rows(a).items()}
    for j, b in enumerate(rhs):
        for i, v in b.items() if isinstance(b, Mapping) else enumerate(b):
            if v:
                entries.setdefault(i, {})[ncols + j] = to_domain(v)
    augmented = _matrix(entries, (nrows, ncols + len(rhs)))
    logger.debug("Row reducing a %s x %s system", nrows, ncols + len(rhs))
    reduced, pivots = augmented.to_sparse().rref()
    pivots = [p for p in pivots if p < ncols]
    red = _rows(reduced)
    rank_a = len(pivots)
    out: list[dict[int, Fraction] | None] = []
    for j in range(len(rhs)):
        col = ncols + j
        if any(red.get(r, {}).get(col) for r in range(rank_a, nrows)):
            out.append(None)
            continue
        out.append(
            {
                p: to_scalar(red[r][col])
                for r, p in enumerate(pivots)
                if red.get(r, {}).get(col)
            }
        )
    return out


def solve_linear(
    a: TensorOp | DomainMatrix, b: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """Exact solution of ``a x = b``.

    Raises
    ------
    InconsistentSystemError
        if no solution exists.

    """
    matrix = _as_matrix(a)
    (solution,) = solve_many(matrix, [b])
    if solution is None:
        raise InconsistentSystemError("linear system has no solution")
    return tuple(solution.get(c, Fraction(0)) for c in range(matrix.shape[1]))


def stack_images(ops: Iterable[TensorOp], basis: Sequence[Sequence[Fraction]]):
    """Stack the images ``op @ B`` of a column basis B for every operator."""
    ops = list(ops)
    columns = matrix_from_columns(basis, ops[0].dim)
    return vstack([op.matrix.to_sparse() * columns for op in ops])
