"""Young diagrams, tableaux and (factorial) Schur polynomials.

Boxes are addressed by 0-based ``(row, column)`` pairs, the content of a box is
``column - row``. Tableaux are enumerated in lexicographic order of their
row-reading word, so every listing in the package is deterministic.

"""

# Standard library
import dataclasses as dc
import itertools
import math
from collections.abc import Callable, Iterator, Sequence
from fractions import Fraction
from functools import cache

# Local
from .exact import QConfig

Box = tuple[int, int]


@dc.dataclass(frozen=True)
class YoungDiagram:
    """Partition given by its weakly decreasing row lengths.

    Trailing zero rows are dropped, so ``YoungDiagram((1, 0))`` and
    ``YoungDiagram((1,))`` compare equal.
    """

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(r < 0 for r in rows):
            raise ValueError(f"negative row length in {rows}")
        if any(a < b for a, b in itertools.pairwise(rows)):
            raise ValueError(f"row lengths {rows} are not weakly decreasing")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def boxes(self) -> list[Box]:
        return [(i, j) for i, r in enumerate(self.rows) for j in range(r)]

    def padded(self, n: int) -> tuple[int, ...]:
        """Row lengths padded with zeros to length n."""
        if self.num_rows > n:
            raise ValueError(f"{self} has more than {n} rows")
        return self.rows + (0,) * (n - self.num_rows)

    def addable_cells(self) -> list[Box]:
        cells = []
        for i in range(self.num_rows + 1):
            col = self.rows[i] if i < self.num_rows else 0
            if i == 0 or self.rows[i - 1] > col:
                cells.append((i, col))
        return cells

    def removable_cells(self) -> list[Box]:
        return [
            (i, r - 1)
            for i, r in enumerate(self.rows)
            if i + 1 == self.num_rows or self.rows[i + 1] < r
        ]

    def add(self, cell: Box) -> "YoungDiagram":
        rows = list(self.rows) + [0]
        rows[cell[0]] += 1
        return YoungDiagram(tuple(rows))

    def remove(self, cell: Box) -> "YoungDiagram":
        rows = list(self.rows)
        rows[cell[0]] -= 1
        return YoungDiagram(tuple(rows))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")"


def as_diagram(shape: "YoungDiagram | Sequence[int]") -> YoungDiagram:
    if isinstance(shape, YoungDiagram):
        return shape
    return YoungDiagram(tuple(shape))


def _check_filling(filling: tuple[tuple[int, ...], ...], strict_rows: bool) -> None:
    YoungDiagram(tuple(len(row) for row in filling))
    for row in filling:
        for a, b in itertools.pairwise(row):
            if a > b or (strict_rows and a == b):
                raise ValueError(f"row {row} is not increasing")
    for upper, lower in itertools.pairwise(filling):
        for a, b in zip(upper, lower):
            if a >= b:
                raise ValueError(f"column entries {a}, {b} do not strictly increase")


@dc.dataclass(frozen=True)
class StandardTableau:
    """Filling of a Young diagram with 1..m increasing along rows and columns."""

    filling: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        filling = tuple(tuple(row) for row in self.filling if row)
        _check_filling(filling, strict_rows=True)
        entries = sorted(itertools.chain.from_iterable(filling))
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError(f"entries of {filling} are not 1..{len(entries)}")
        object.__setattr__(self, "filling", filling)

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(row) for row in self.filling))

    @property
    def size(self) -> int:
        return self.shape.size

    def position(self, k: int) -> Box:
        for i, row in enumerate(self.filling):
            if k in row:
                return i, row.index(k)
        raise ValueError(f"{k} is not an entry of {self}")

    def contents(self) -> tuple[int, ...]:
        """Contents c_1, ..., c_m of the boxes holding 1, ..., m."""
        return tuple(j - i for i, j in map(self.position, range(1, self.size + 1)))

    @property
    def reading_word(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.filling))

    def restrict(self) -> "StandardTableau":
        """The tableau with the box holding m removed."""
        m = self.size
        return StandardTableau(
            tuple(tuple(e for e in row if e != m) for row in self.filling)
        )

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, row)) for row in self.filling)


@dc.dataclass(frozen=True)
class SemistandardTableau:
    """Filling weakly increasing along rows and strictly down columns."""

    filling: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        filling = tuple(tuple(row) for row in self.filling if row)
        _check_filling(filling, strict_rows=False)
        object.__setattr__(self, "filling", filling)

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(row) for row in self.filling))

    def items(self) -> Iterator[tuple[Box, int]]:
        for i, row in enumerate(self.filling):
            for j, entry in enumerate(row):
                yield (i, j), entry


@cache
def standard_tableaux(shape: YoungDiagram) -> tuple[StandardTableau, ...]:
    """All standard tableaux of a shape, ordered by row-reading word."""
    shape = as_diagram(shape)
    if shape.size == 0:
        return (StandardTableau(()),)
    m = shape.size
    found = []
    for cell in shape.removable_cells():
        for smaller in standard_tableaux(shape.remove(cell)):
            rows = [list(row) for row in smaller.filling]
            if cell[0] == len(rows):
                rows.append([])
            rows[cell[0]].append(m)
            found.append(StandardTableau(tuple(map(tuple, rows))))
    return tuple(sorted(found, key=lambda t: t.reading_word))


@cache
def semistandard_tableaux(
    shape: YoungDiagram, n: int
) -> tuple[SemistandardTableau, ...]:
    """All semistandard tableaux of a shape with entries in 1..n.

    The result is empty when the shape has more than n rows.
    """
    shape = as_diagram(shape)
    boxes = shape.boxes()
    found: list[SemistandardTableau] = []
    filling: dict[Box, int] = {}

    def fill(index: int) -> None:
        if index == len(boxes):
            found.append(
                SemistandardTableau(
                    tuple(
                        tuple(filling[i, j] for j in range(r))
                        for i, r in enumerate(shape.rows)
                    )
                )
            )
            return
        i, j = boxes[index]
        low = max(filling.get((i, j - 1), 1), filling.get((i - 1, j), 0) + 1)
        for value in range(low, n + 1):
            filling[i, j] = value
            fill(index + 1)
        filling.pop((i, j), None)

    fill(0)
    return tuple(found)


def contents(tableau: StandardTableau) -> tuple[int, ...]:
    return tableau.contents()


def content_factor(shape: YoungDiagram, cfg: QConfig) -> Fraction:
    """The product of q^{-2c} over all boxes of the shape."""
    return math.prod(
        (cfg.power(-2 * (j - i)) for i, j in as_diagram(shape).boxes()),
        start=Fraction(1),
    )


def addable_contents(shape: YoungDiagram) -> list[int]:
    return [j - i for i, j in as_diagram(shape).addable_cells()]


def factorial_schur(
    shape: YoungDiagram,
    x: Sequence[Fraction],
    a: Callable[[int], Fraction],
    n: int | None = None,
) -> Fraction:
    """Evaluate the factorial Schur polynomial s(x | a).

    Parameters
    ----------
    shape : YoungDiagram
        the partition
    x : Sequence[Fraction]
        values x_1, ..., x_n
    a : Callable[[int], Fraction]
        the shift sequence as a rule k -> a_k, k >= 1
    n : int, optional
        number of variables, defaults to ``len(x)``

    Returns
    -------
    Fraction
        sum over semistandard tableaux T of prod (x_T(α) + a_{T(α)+c(α)}),
        zero if the shape has more than n rows

    """
    n = len(x) if n is None else n
    total = Fraction(0)
    for tableau in semistandard_tableaux(as_diagram(shape), n):
        total += math.prod(
            (x[t - 1] + a(t + j - i) for (i, j), t in tableau.items()),
            start=Fraction(1),
        )
    return total


def schur(shape: YoungDiagram, x: Sequence[Fraction]) -> Fraction:
    return factorial_schur(shape, x, lambda k: Fraction(0))


def elementary_symmetric(x: Sequence[Fraction], m: int) -> Fraction:
    return sum(
        (math.prod(c, start=Fraction(1)) for c in itertools.combinations(x, m)),
        start=Fraction(0),
    )


def ssyt_count(shape: YoungDiagram, n: int) -> int:
    return len(semistandard_tableaux(as_diagram(shape), n))


def hook_length_count(shape: YoungDiagram) -> int:
    """Number of standard tableaux by the hook length formula."""
    shape = as_diagram(shape)
    width = shape.rows[0] if shape.rows else 0
    cols = [sum(1 for r in shape.rows if r > j) for j in range(width)]
    hooks = math.prod(
        (shape.rows[i] - j) + (cols[j] - i) - 1 for i, j in shape.boxes()
    )
    return math.factorial(shape.size) // hooks


def partitions(size: int, max_parts: int | None = None) -> list[YoungDiagram]:
    """Partitions of ``size`` with at most ``max_parts`` parts, largest first."""

    def gen(rest: int, bound: int, parts: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        if parts == 0:
            return
        for first in range(min(rest, bound), 0, -1):
            for tail in gen(rest - first, first, parts - 1):
                yield (first, *tail)

    limit = size if max_parts is None else max_parts
    return [YoungDiagram(p) for p in gen(size, size, limit)]


def immanant_shift(z: Fraction, cfg: QConfig) -> Callable[[int], Fraction]:
    """Shift sequence a_k = z q^{2-2k} governing the eigenvalues of S_U(z)."""
    z = Fraction(z)
    return lambda k: z * cfg.power(2 - 2 * k)


def highest_weight_variables(
    shape: YoungDiagram, n: int, cfg: QConfig
) -> tuple[Fraction, ...]:
    """Eigenvalue variables x_i = q^{2ℓ_i} with ℓ_i = λ_i - i + 1."""
    return tuple(
        cfg.power(2 * (lam - i)) for i, lam in enumerate(as_diagram(shape).padded(n))
    )
