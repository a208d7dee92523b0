"""Braided Weyl algebra as a free algebra modulo relations.

Elements of the free algebra on the letters m_ij, ∂_ij (and the auxiliary
letters l_ij standing for the entries of L) are finite sums of words with
rational coefficients. Membership of an element in the two-sided ideal of the
defining relations is decided exactly inside a degree-truncated span.

"""

# Standard library
import dataclasses as dc
import itertools
import logging
import math
from collections import Counter
from collections.abc import Callable, Iterable, Mapping, Sequence
from fractions import Fraction
from functools import cache
from typing import Any, NamedTuple

# Third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# Local
from . import config
from .exact import QConfig, as_scalar
from .tensor import (
    TensorOp,
    build_Rcheck,
    build_Rcheck_inverse,
    embed,
    site_offsets,
    solve_many,
    to_domain,
)

logger = logging.getLogger(__name__)

Bidegree = tuple[int, int]


class ScaleExceededError(RuntimeError):
    pass


class Letter(NamedTuple):
    kind: str  # "m", "d" or "l"
    row: int
    col: int

    def __str__(self) -> str:
        return f"{self.kind}{self.row}{self.col}"


Word = tuple[Letter, ...]


def word_to_str(word: Word) -> str:
    return " ".join(map(str, word)) or "1"


def bidegree(word: Word) -> Bidegree:
    counts = Counter(letter.kind for letter in word)
    return counts["m"], counts["d"]


@dc.dataclass(frozen=True, eq=False)
class FreeElement:
    """Finite linear combination of words, zero coefficients are dropped."""

    terms: Mapping[Word, Fraction] = dc.field(default_factory=dict)

    def __post_init__(self):
        terms = {w: Fraction(c) for w, c in self.terms.items() if c}
        object.__setattr__(self, "terms", terms)

    @classmethod
    def scalar(cls, value: Fraction | int) -> "FreeElement":
        return cls({(): as_scalar(value)})

    @classmethod
    def letter(cls, kind: str, row: int, col: int) -> "FreeElement":
        return cls({(Letter(kind, row, col),): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FreeElement.scalar(other)
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FreeElement | Fraction | int") -> "FreeElement":
        if not isinstance(other, FreeElement):
            other = FreeElement.scalar(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return FreeElement(terms)

    __radd__ = __add__

    def __neg__(self) -> "FreeElement":
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement | Fraction | int") -> "FreeElement":
        return self + (-other)

    def __mul__(self, other: "FreeElement | Fraction | int") -> "FreeElement":
        if not isinstance(other, FreeElement):
            value = as_scalar(other)
            return FreeElement({w: c * value for w, c in self.terms.items()})
        terms: dict[Word, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                terms[u + v] = terms.get(u + v, 0) + a * b
        return FreeElement(terms)

    def __rmul__(self, other: Fraction | int) -> "FreeElement":
        return self * other

    def __repr__(self) -> str:
        return " + ".join(f"{c}*[{word_to_str(w)}]" for w, c in self.sorted_terms())

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items())

    def bidegrees(self) -> Counter:
        """Number of terms per bidegree."""
        return Counter(bidegree(w) for w in self.terms)

    def max_bidegree(self) -> Bidegree:
        """Componentwise maximum bidegree over all words."""
        degrees = [bidegree(w) for w in self.terms] or [(0, 0)]
        return max(d[0] for d in degrees), max(d[1] for d in degrees)

    def component(self, degree: Bidegree) -> "FreeElement":
        return FreeElement(
            {w: c for w, c in self.terms.items() if bidegree(w) == degree}
        )

    def substitute(self, images: Callable[[Letter], "FreeElement"]) -> "FreeElement":
        """Apply the algebra homomorphism determined by the letter images."""
        total = FreeElement()
        for word, c in self.terms.items():
            term = FreeElement.scalar(c)
            for letter in word:
                term = term * images(letter)
            total = total + term
        return total

    def evaluate(self, images: Callable[[Letter], Any], one: Any) -> Any:
        """Evaluate in a ring given images of the letters and its unit."""
        total = one * 0
        for word, c in self.terms.items():
            term = one
            for letter in word:
                term = _times(term, images(letter))
            total = total + term * c
        return total

    def to_json(self) -> list[list[str]]:
        return [[word_to_str(w), str(c)] for w, c in self.sorted_terms()]


def _times(a: Any, b: Any) -> Any:
    if isinstance(a, TensorOp):
        return a @ b
    return a * b


def mirror(element: FreeElement) -> FreeElement:
    """Exchange the letters m_ij and ∂_ij, keeping the order of every word."""
    swap = {"m": "d", "d": "m"}
    return FreeElement(
        {
            tuple(Letter(swap.get(x.kind, x.kind), x.row, x.col) for x in w): c
            for w, c in element.terms.items()
        }
    )


@dc.dataclass(frozen=True, eq=False)
class FreeMatrix:
    """Operator on aux copies of C^n with free algebra entries.

    Entries are keyed by (row, column) of the row-major tensor encoding and
    multiply as (AB)_ij = Σ_k A_ik B_kj, keeping the order of the factors.
    """

    entries: Mapping[tuple[int, int], FreeElement]
    n: int
    num_sites: int

    def __post_init__(self):
        entries = {k: v for k, v in self.entries.items() if v}
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.n**self.num_sites

    @classmethod
    def from_op(cls, op: TensorOp) -> "FreeMatrix":
        return cls(
            {k: FreeElement.scalar(v) for k, v in op.entries().items()},
            op.n,
            op.num_sites,
        )

    @classmethod
    def generator(cls, kind: str, n: int) -> "FreeMatrix":
        """The one-site matrix Σ e_ij ⊗ x_ij for the letter kind x."""
        return cls(
            {
                (i - 1, j - 1): FreeElement.letter(kind, i, j)
                for i in range(1, n + 1)
                for j in range(1, n + 1)
            },
            n,
            1,
        )

    @classmethod
    def identity(cls, n: int, num_sites: int) -> "FreeMatrix":
        return cls(
            {(i, i): FreeElement.scalar(1) for i in range(n**num_sites)}, n, num_sites
        )

    def entry(self, i: int, j: int) -> FreeElement:
        return self.entries.get((i, j), FreeElement())

    def embed(self, at: Sequence[int], total: int) -> "FreeMatrix":
        local = site_offsets(self.n, at, total)
        others = [s for s in range(1, total + 1) if s not in at]
        rest = site_offsets(self.n, others, total)
        return FreeMatrix(
            {
                (base + local[i], base + local[j]): v
                for base in rest
                for (i, j), v in self.entries.items()
            },
            self.n,
            total,
        )

    def _lift(self, other: "FreeMatrix | TensorOp | Fraction | int") -> "FreeMatrix":
        if isinstance(other, FreeMatrix):
            return other
        if isinstance(other, TensorOp):
            return FreeMatrix.from_op(other)
        return FreeMatrix.identity(self.n, self.num_sites) * other

    def __matmul__(self, other: "FreeMatrix | TensorOp") -> "FreeMatrix":
        other = self._lift(other)
        by_row: dict[int, list[tuple[int, FreeElement]]] = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, []).append((j, b))
        acc: dict[tuple[int, int], FreeElement] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, []):
                acc[i, j] = acc.get((i, j), FreeElement()) + a * b
        return FreeMatrix(acc, self.n, self.num_sites)

    def __rmatmul__(self, other: TensorOp) -> "FreeMatrix":
        return FreeMatrix.from_op(other) @ self

    def __add__(self, other: "FreeMatrix | TensorOp | Fraction | int") -> "FreeMatrix":
        other = self._lift(other)
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc.get(k, FreeElement()) + v
        return FreeMatrix(acc, self.n, self.num_sites)

    def __neg__(self) -> "FreeMatrix":
        negated = {k: -v for k, v in self.entries.items()}
        return FreeMatrix(negated, self.n, self.num_sites)

    def __sub__(self, other: "FreeMatrix | TensorOp | Fraction | int") -> "FreeMatrix":
        return self + (-self._lift(other))

    def __mul__(self, scalar: Fraction | int) -> "FreeMatrix":
        return FreeMatrix(
            {k: v * scalar for k, v in self.entries.items()}, self.n, self.num_sites
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeMatrix):
            return NotImplemented
        return (self.n, self.num_sites, self.entries) == (
            other.n,
            other.num_sites,
            other.entries,
        )

    def __bool__(self) -> bool:
        return bool(self.entries)

    def conjugate(self, left: TensorOp, right: TensorOp) -> "FreeMatrix":
        return FreeMatrix.from_op(left) @ self @ right

    def q_trace(self, cfg: QConfig) -> FreeElement:
        """Full trace with a copy of D multiplied into every site."""
        d = [cfg.power(-2 * i) for i in range(self.n)]
        total = FreeElement()
        for index in range(self.dim):
            weight = Fraction(1)
            rest = index
            for _ in range(self.num_sites):
                weight *= d[rest % self.n]
                rest //= self.n
            total = total + self.entry(index, index) * weight
        return total


def bar_conjugate_free(
    X: FreeMatrix, k: int, cfg: QConfig
) -> FreeMatrix:
    """X_ōk for a free matrix supported on site 1."""
    for i in range(1, k):
        X = X.conjugate(
            embed(build_Rcheck(X.n, cfg), [i, i + 1], X.num_sites),
            embed(build_Rcheck_inverse(X.n, cfg), [i, i + 1], X.num_sites),
        )
    return X


@dc.dataclass(frozen=True, eq=False)
class RelationSet:
    """Entrywise expansions of the three matrix relation families.

    Attributes
    ----------
    n : int
        size of the generator matrices
    cfg : QConfig
        value of q
    families : dict[str, tuple[FreeElement, ...]]
        ``"mm"``, ``"dd"`` and ``"cross"`` relations, zero entries dropped

    """

    n: int
    cfg: QConfig
    families: Mapping[str, tuple[FreeElement, ...]]

    @property
    def all(self) -> tuple[FreeElement, ...]:
        return tuple(itertools.chain.from_iterable(self.families.values()))

    def __len__(self) -> int:
        return len(self.all)


def _reflection(kind: str, braid: TensorOp) -> FreeMatrix:
    # braid X_1 braid X_1 - X_1 braid X_1 braid
    x1 = FreeMatrix.generator(kind, braid.n).embed([1], 2)
    return braid @ x1 @ braid @ x1 - x1 @ braid @ x1 @ braid


def relation_matrices(n: int, cfg: QConfig) -> dict[str, FreeMatrix]:
    """The matrix relations on two aux copies, whose entries vanish in W_n."""
    rc = build_Rcheck(n, cfg)
    rc_inv = build_Rcheck_inverse(n, cfg)
    m1 = FreeMatrix.generator("m", n).embed([1], 2)
    d1 = FreeMatrix.generator("d", n).embed([1], 2)
    cross = d1 @ rc @ m1 - rc @ m1 @ rc_inv @ d1 @ rc_inv - 1
    return {
        "mm": _reflection("m", rc),
        "dd": _reflection("d", rc_inv),
        "cross": cross,
    }


def mirror_matches(n: int, cfg: QConfig) -> bool:
    """The MM family built with the inverse braid mirrors onto the DD family."""
    rc_inv = build_Rcheck_inverse(n, cfg)
    mirrored = {
        key: mirror(value) for key, value in _reflection("m", rc_inv).entries.items()
    }
    return mirrored == dict(_reflection("d", rc_inv).entries)


def _entries_of(matrix: FreeMatrix) -> tuple[FreeElement, ...]:
    seen: list[FreeElement] = []
    for key in sorted(matrix.entries):
        value = matrix.entries[key]
        if value not in seen:
            seen.append(value)
    return tuple(seen)


@cache
def relation_generators(n: int, cfg: QConfig) -> RelationSet:
    """Expand the defining relations of W_n entrywise."""
    if n < 1:
        raise ValueError(f"n={n} must be positive")
    families = {
        name: _entries_of(matrix)
        for name, matrix in relation_matrices(n, cfg).items()
    }
    logger.info(
        "Relations for n=%s: %s",
        n,
        {name: len(rels) for name, rels in families.items()},
    )
    return RelationSet(n, cfg, families)


def _generic_values(n: int) -> Callable[[Letter], Fraction]:
    def value(letter: Letter) -> Fraction:
        k = (letter.row - 1) * n + letter.col
        if letter.kind == "m":
            return Fraction(k + 1, 3)
        return Fraction(k * k + 2, 5)

    return value


def relation_self_check(n: int, cfg: QConfig) -> dict[str, bool]:
    """Substitute commuting numeric matrices for M and D.

    For every family returns whether the substituted relations still vanish.
    Generic numbers must violate every family, and the entrywise relations
    must agree with the matrix identity evaluated numerically.
    """
    values = _generic_values(n)
    rc = build_Rcheck(n, cfg)
    rc_inv = build_Rcheck_inverse(n, cfg)

    def numeric(kind: str) -> TensorOp:
        op = TensorOp.from_entries(
            n,
            ("aux",),
            {
                (i - 1, j - 1): values(Letter(kind, i, j))
                for i in range(1, n + 1)
                for j in range(1, n + 1)
            },
        )
        return embed(op, [1], 2)

    m1, d1 = numeric("m"), numeric("d")
    expected = {
        "mm": rc @ m1 @ rc @ m1 - m1 @ rc @ m1 @ rc,
        "dd": rc_inv @ d1 @ rc_inv @ d1 - d1 @ rc_inv @ d1 @ rc_inv,
        "cross": d1 @ rc @ m1 - rc @ m1 @ rc_inv @ d1 @ rc_inv - 1,
    }
    result = {}
    for name, matrix in relation_matrices(n, cfg).items():
        substituted = {
            key: value.evaluate(values, Fraction(1))
            for key, value in matrix.entries.items()
        }
        consistent = all(
            substituted.get(key, 0) == v for key, v in expected[name].entries().items()
        ) and all(v == expected[name].entry(*key) for key, v in substituted.items())
        if not consistent:
            logger.error("Relation family %s disagrees with its matrix form", name)
            raise RuntimeError(f"relation family {name} is not entrywise")
        result[name] = not expected[name]
    return result


@cache
def _words(n: int, degree: Bidegree) -> tuple[Word, ...]:
    """All words with exactly the given numbers of m- and ∂-letters."""
    dm, dd = degree
    if dm < 0 or dd < 0:
        return ()
    m_letters = [Letter("m", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    d_letters = [Letter("d", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    length = dm + dd
    words = []
    for positions in itertools.combinations(range(length), dm):
        pools = [m_letters if p in positions else d_letters for p in range(length)]
        words.extend(itertools.product(*pools))
    return tuple(sorted(words))


def _words_up_to(n: int, bound: Bidegree) -> Iterable[Word]:
    for dm in range(bound[0] + 1):
        for dd in range(bound[1] + 1):
            yield from _words(n, (dm, dd))


def _top(relation: FreeElement) -> Bidegree:
    return relation.max_bidegree()


def _span_size(rels: RelationSet, bound: Bidegree) -> int:
    n2 = rels.n**2
    total = 0
    for relation in rels.all:
        top = _top(relation)
        rm, rd = bound[0] - top[0], bound[1] - top[1]
        if rm < 0 or rd < 0:
            continue
        for dm in range(rm + 1):
            for dd in range(rd + 1):
                # splittings of a word with bidegree (dm, dd) into u and v
                length = dm + dd
                total += (length + 1) * math.comb(length, dm) * n2**length
    return total


def ideal_component(rels: RelationSet, degree: Bidegree) -> list[FreeElement]:
    """Products u·r·v whose top bidegree is exactly ``degree``."""
    result: list[FreeElement] = []
    for relation in rels.all:
        top = _top(relation)
        rest = (degree[0] - top[0], degree[1] - top[1])
        if rest[0] < 0 or rest[1] < 0:
            continue
        for u in _words_up_to(rels.n, rest):
            du = bidegree(u)
            for v in _words(rels.n, (rest[0] - du[0], rest[1] - du[1])):
                result.append(
                    FreeElement({u + w + v: c for w, c in relation.terms.items()})
                )
    return result


@dc.dataclass(frozen=True, eq=False)
class IdealSpan:
    bound: Bidegree
    elements: tuple[FreeElement, ...]
    monomials: Mapping[Word, int]
    matrix: DomainMatrix


@cache
def truncated_span(rels: RelationSet, bound: Bidegree) -> IdealSpan:
    """All u·r·v with top bidegree componentwise at most ``bound``.

    Raises
    ------
    ScaleExceededError
        if the span would exceed the ``ideal_span_cap`` configuration value.

    """
    cap = config.get("ideal_span_cap")
    size = _span_size(rels, bound)
    if size > cap:
        raise ScaleExceededError(
            f"ideal span at bidegree {bound} needs {size} elements, cap is {cap}"
        )
    elements: list[FreeElement] = []
    seen: set[tuple] = set()
    for dm in range(bound[0] + 1):
        for dd in range(bound[1] + 1):
            for element in ideal_component(rels, (dm, dd)):
                key = tuple(element.sorted_terms())
                if key not in seen:
                    seen.add(key)
                    elements.append(element)
    monomials: dict[Word, int] = {}
    entries: dict[int, dict[int, Any]] = {}
    for col, element in enumerate(elements):
        for word, c in element.terms.items():
            row = monomials.setdefault(word, len(monomials))
            entries.setdefault(row, {})[col] = to_domain(c)
    matrix = DomainMatrix(entries, (len(monomials), len(elements)), QQ)
    logger.info(
        "Ideal span at bidegree %s: %s elements over %s monomials",
        bound,
        len(elements),
        len(monomials),
    )
    return IdealSpan(bound, tuple(elements), monomials, matrix)


class Membership(NamedTuple):
    member: bool
    certificate: dict[int, Fraction] | None = None


def ideal_membership(
    xs: Sequence[FreeElement], rels: RelationSet
) -> list[Membership]:
    """Decide ideal membership of several elements with one elimination.

    The span is truncated at the componentwise maximum bidegree of all
    elements. A certificate maps positions in the span to coefficients;
    a negative answer means no combination exists within the truncation.
    """
    bound = (0, 0)
    for x in xs:
        top = x.max_bidegree()
        bound = (max(bound[0], top[0]), max(bound[1], top[1]))
    results: list[Membership | None] = [
        Membership(True, {}) if not x else None for x in xs
    ]
    pending = [i for i, r in enumerate(results) if r is None]
    if not pending:
        return [r for r in results if r is not None]
    span = truncated_span(rels, bound)
    solvable = []
    for i in pending:
        if all(w in span.monomials for w in xs[i].terms):
            solvable.append(i)
        else:
            results[i] = Membership(False)
    rhs = [
        {span.monomials[w]: c for w, c in xs[i].terms.items()} for i in solvable
    ]
    if rhs:
        for i, solution in zip(solvable, solve_many(span.matrix, rhs)):
            results[i] = Membership(solution is not None, solution)
    return [r for r in results if r is not None]


def is_in_ideal(x: FreeElement, rels: RelationSet) -> Membership:
    (result,) = ideal_membership([x], rels)
    return result

