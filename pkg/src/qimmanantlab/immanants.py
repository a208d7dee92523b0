"""q-immanants, quantum Gelfand invariants and the generating function E(u).

S_U(z) is built on ``m`` auxiliary copies of C^n followed by the module sites
of a representation, as the q-trace over the auxiliary copies of

    (L_ō1 + z q^{-2c_1}) ... (L_ōm + z q^{-2c_m}) E_U,

and independently as the plain trace of

    (L+_1 + z q^{-2c_1} L-_1) ... (L+_m + z q^{-2c_m} L-_m)
        (L-_m)^{-1} ... (L-_1)^{-1} D_1 ... D_m E_U.

Both constructions must give the same operator coefficients.

"""

# Standard library
import dataclasses as dc
import itertools
import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import cache, reduce

# Local
from .combinatorics import (
    StandardTableau,
    YoungDiagram,
    as_diagram,
    elementary_symmetric,
    factorial_schur,
    highest_weight_variables,
    immanant_shift,
    partitions,
    standard_tableaux,
)
from .exact import Poly, QConfig, poly_mul, poly_substitute_scaled
from .hecke import HeckeAction, primitive_idempotent
from .rep import (
    EvaluatedRep,
    NotScalarError,
    build_rep,
    central_eigenvalue,
    generator_blocks,
    isotypic_projector,
)
from .report import Outcome, check_equal
from .tensor import (
    AUX,
    MODULE,
    TensorOp,
    bar_conjugate,
    build_D,
    embed,
    matrix_from_rows,
    q_trace,
    rank,
    trace_sites,
)

logger = logging.getLogger(__name__)


class RouteMismatchError(RuntimeError):
    pass


@dc.dataclass(frozen=True, eq=False)
class ImmanantPoly:
    """The polynomial S_U(z) with operator coefficients on the module sites.

    Attributes
    ----------
    tableau : StandardTableau
        the tableau U, its shape is μ
    poly : Poly[TensorOp]
        coefficients by power of z
    n, N : int
        rank and number of module sites
    route : str
        ``"both"`` if the two constructions were compared, else ``"q-trace"``

    """

    tableau: StandardTableau
    poly: Poly
    n: int
    N: int
    route: str

    @property
    def shape(self) -> YoungDiagram:
        return self.tableau.shape

    def zero(self) -> TensorOp:
        return TensorOp.zeros(self.n, (MODULE,) * self.N)

    def coefficient(self, k: int) -> TensorOp:
        return self.poly.coefficient(k, self.zero())

    def at(self, z: Fraction) -> TensorOp:
        return self.poly.evaluate(z, zero=self.zero())


def _aux_layout(rep: EvaluatedRep, m: int) -> tuple[str, ...]:
    return (AUX,) * m + rep.module_layout


def _aux_idempotent(rep: EvaluatedRep, tableau: StandardTableau) -> TensorOp:
    m = tableau.size
    e = primitive_idempotent(HeckeAction(rep.n, m, rep.cfg), tableau)
    return embed(e, list(range(1, m + 1)), _aux_layout(rep, m))


def _product(factors: Iterable[Poly]) -> Poly:
    return reduce(poly_mul, factors)


def _q_trace_route(rep: EvaluatedRep, tableau: StandardTableau) -> Poly:
    m, cfg = tableau.size, rep.cfg
    layout = _aux_layout(rep, m)
    first = rep.on_aux(rep.L, 1, layout)
    identity = TensorOp.identity(rep.n, layout)
    factors = [
        Poly({0: bar_conjugate(first, k, cfg), 1: identity * cfg.power(-2 * c)})
        for k, c in enumerate(tableau.contents(), start=1)
    ]
    product = poly_mul(_product(factors), Poly.constant(_aux_idempotent(rep, tableau)))
    return product.map(lambda op: q_trace(op, range(1, m + 1), cfg))


def _plain_trace_route(rep: EvaluatedRep, tableau: StandardTableau) -> Poly:
    m, cfg = tableau.size, rep.cfg
    layout = _aux_layout(rep, m)
    factors = [
        Poly(
            {
                0: rep.on_aux(rep.Lplus, k, layout),
                1: rep.on_aux(rep.Lminus, k, layout) * cfg.power(-2 * c),
            }
        )
        for k, c in enumerate(tableau.contents(), start=1)
    ]
    tail = TensorOp.identity(rep.n, layout)
    for k in range(m, 0, -1):
        tail = tail @ rep.on_aux(rep.Lminus_inv, k, layout)
    for k in range(1, m + 1):
        tail = tail @ embed(build_D(rep.n, cfg), [k], layout)
    tail = tail @ _aux_idempotent(rep, tableau)
    product = poly_mul(_product(factors), Poly.constant(tail))
    return product.map(lambda op: trace_sites(op, range(1, m + 1)))


@cache
def build_immanant_poly(
    rep: EvaluatedRep, tableau: StandardTableau, check_routes: bool = True
) -> ImmanantPoly:
    """Construct S_U(z) on the module sites of ``rep``.

    Parameters
    ----------
    rep : EvaluatedRep
        the representation
    tableau : StandardTableau
        the tableau U with m boxes, m auxiliary copies are used
    check_routes : bool
        also build S_U(z) from L^± and D and compare

    Raises
    ------
    RouteMismatchError
        if the two constructions disagree.

    """
    if tableau.size == 0:
        raise ValueError("the empty tableau has no immanant")
    logger.info("Building S_U(z) for U=%s on n=%s N=%s", tableau, rep.n, rep.N)
    poly = _q_trace_route(rep, tableau)
    if check_routes:
        other = _plain_trace_route(rep, tableau)
        if other != poly:
            logger.error("Constructions of S_U(z) differ for U=%s", tableau)
            raise RouteMismatchError(f"constructions of S_U(z) differ for U={tableau}")
    return ImmanantPoly(
        tableau, poly, rep.n, rep.N, "both" if check_routes else "q-trace"
    )


def q_immanant(rep: EvaluatedRep, shape: YoungDiagram) -> TensorOp:
    """The q-immanant S_μ = S_U(0) for the first standard tableau of μ."""
    tableau = standard_tableaux(as_diagram(shape))[0]
    return build_immanant_poly(rep, tableau).coefficient(0)


@dc.dataclass
class CentralFamily:
    """Labelled operators expected to lie in the centre."""

    members: list[tuple[str, TensorOp]] = dc.field(default_factory=list)

    def add(self, label: str, op: TensorOp) -> None:
        self.members.append((label, op))

    def __getitem__(self, label: str) -> TensorOp:
        return dict(self.members)[label]

    def check_commuting(self) -> list[Outcome]:
        """Pairwise commutation of all members."""
        return [
            check_equal(f"[{a}, {b}]", x @ y, y @ x)
            for (a, x), (b, y) in itertools.combinations(self.members, 2)
        ]


def verify_centrality(poly: ImmanantPoly, rep: EvaluatedRep) -> list[Outcome]:
    """Every z-coefficient commutes with all generators l^±_{ij}."""
    generators = {
        f"l{sign}{i}{j}": op
        for sign, matrix in (("+", rep.Lplus), ("-", rep.Lminus))
        for (i, j), op in generator_blocks(rep, matrix).items()
    }
    outcomes = []
    for k in range(len(poly.tableau.contents()) + 1):
        coeff = poly.coefficient(k)
        failing = [
            label
            for label, gen in generators.items()
            if coeff @ gen != gen @ coeff
        ]
        outcomes.append(
            Outcome(f"central z^{k}", not failing, witness=failing or None)
        )
    return outcomes


def verify_tableau_independence(
    shape: YoungDiagram, rep: EvaluatedRep
) -> list[Outcome]:
    """S_U(z) agrees for all standard tableaux of the shape."""
    first, *others = standard_tableaux(as_diagram(shape))
    reference = build_immanant_poly(rep, first)
    outcomes = []
    for tableau in others:
        same = build_immanant_poly(rep, tableau).poly == reference.poly
        outcomes.append(
            Outcome(
                f"U={first} U'={tableau}",
                same,
                witness=None if same else [str(first), str(tableau)],
            )
        )
    if not outcomes:
        outcomes.append(Outcome("single tableau", True))
    return outcomes


def weights_of(rep: EvaluatedRep) -> list[YoungDiagram]:
    """Highest weights occurring on the N module sites."""
    return partitions(rep.N, rep.n)


def verify_eigenvalues(
    shape: YoungDiagram,
    rep: EvaluatedRep,
    z_samples: Sequence[Fraction],
    weights: Sequence[YoungDiagram] | None = None,
) -> list[Outcome]:
    """Compare the eigenvalues of S_U(z) with the factorial Schur polynomial.

    At least m + 1 distinct samples of z are needed to pin the polynomial.
    """
    shape = as_diagram(shape)
    z_samples = [Fraction(z) for z in z_samples]
    if len(set(z_samples)) < shape.size + 1:
        raise ValueError(
            f"{len(set(z_samples))} distinct z samples cannot pin a degree "
            f"{shape.size} polynomial"
        )
    poly = build_immanant_poly(rep, standard_tableaux(shape)[0])
    outcomes = []
    for lam in weights_of(rep) if weights is None else weights:
        proj = isotypic_projector(rep, lam)
        x = highest_weight_variables(lam, rep.n, rep.cfg)
        for z in z_samples:
            expected = factorial_schur(shape, x, immanant_shift(z, rep.cfg), rep.n)
            name = f"χ λ={lam} z={z}"
            try:
                chi = central_eigenvalue(poly.at(z), proj)
            except NotScalarError as err:
                outcomes.append(Outcome(name, False, witness=str(err)))
                continue
            outcomes.append(
                check_equal(
                    name,
                    chi,
                    expected,
                    values={"lambda": lam, "z": z, "chi": chi},
                )
            )
    return outcomes


def gelfand_invariants(rep: EvaluatedRep, M: int) -> CentralFamily:
    """The quantum Gelfand invariants tr_q L^m for m = 1..M."""
    if M < 1:
        raise ValueError(f"M={M} must be positive")
    family = CentralFamily()
    power = rep.L
    for m in range(1, M + 1):
        family.add(f"tr_q L^{m}", q_trace(power, [1], rep.cfg))
        power = power @ rep.L
    return family


def column(m: int) -> YoungDiagram:
    return YoungDiagram((1,) * m)


def build_E_poly(rep: EvaluatedRep) -> Poly:
    """E(u) = Σ_m (-1)^m S_(1^m) u^{-m}, m = 0..n, in the variable u."""
    coeffs = {0: rep.module_identity}
    for m in range(1, rep.n + 1):
        coeffs[-m] = q_immanant(rep, column(m)) * (-1) ** m
    return Poly(coeffs, "u")


def _trace_series(rep: EvaluatedRep, M: int) -> Poly:
    factor = 1 - rep.cfg.power(-2)
    invariants = gelfand_invariants(rep, M)
    coeffs = {0: rep.module_identity}
    for m in range(1, M + 1):
        coeffs[-m] = invariants[f"tr_q L^{m}"] * factor
    return Poly(coeffs, "u")


def _first_difference(lhs: Poly, rhs: Poly, lowest: int) -> int | None:
    diff = (lhs - rhs).truncate(lowest)
    return diff.high


def verify_newton(rep: EvaluatedRep, M: int) -> list[Outcome]:
    """E(u) (1 + (1 - q^{-2}) Σ tr_q L^m u^{-m}) = E(u q^2) up to u^{-M}.

    Both multiplication orders are checked.
    """
    if M < rep.n:
        raise ValueError(f"truncation order {M} is below n={rep.n}")
    e = build_E_poly(rep)
    series = _trace_series(rep, M)
    target = poly_substitute_scaled(e, rep.cfg.power(2))
    outcomes = []
    for name, lhs in (("E·T", poly_mul(e, series)), ("T·E", poly_mul(series, e))):
        failing = _first_difference(lhs, target, -M)
        outcomes.append(
            Outcome(
                f"newton {name}",
                failing is None,
                witness=None if failing is None else {"u_power": failing},
            )
        )
    return outcomes


def _eigenvalue_series(x: Sequence[Fraction], cfg: QConfig, M: int) -> Poly:
    # ∏ (1 - x_i q^{-2} u^{-1}) / (1 - x_i u^{-1}) expanded to order u^{-M}
    result = Poly.constant(Fraction(1), "u")
    for xi in x:
        numerator = Poly({0: Fraction(1), -1: -xi * cfg.power(-2)}, "u")
        geometric = Poly({-k: xi**k for k in range(M + 1)}, "u")
        result = poly_mul(poly_mul(result, numerator), geometric).truncate(-M)
    return result


def verify_eigenvalue_genfn(
    shape: YoungDiagram, rep: EvaluatedRep, M: int
) -> list[Outcome]:
    """Eigenvalues of tr_q L^m against the product formula in u."""
    shape = as_diagram(shape)
    proj = isotypic_projector(rep, shape)
    invariants = gelfand_invariants(rep, M)
    factor = 1 - rep.cfg.power(-2)
    chis = [
        central_eigenvalue(invariants[f"tr_q L^{m}"], proj) for m in range(1, M + 1)
    ]
    lhs = Poly(
        {0: Fraction(1), **{-m: chi * factor for m, chi in enumerate(chis, 1)}}, "u"
    )
    x = highest_weight_variables(shape, rep.n, rep.cfg)
    rhs = _eigenvalue_series(x, rep.cfg, M)
    failing = _first_difference(lhs, rhs, -M)
    return [
        Outcome(
            f"genfn λ={shape}",
            failing is None,
            witness=None if failing is None else {"u_power": failing},
            values={"lambda": shape, "tr_q L^m": chis},
        )
    ]


def verify_column_eigenvalues(shape: YoungDiagram, rep: EvaluatedRep) -> list[Outcome]:
    """χ(S_(1^m)) equals the elementary symmetric polynomial e_m(q^{2ℓ})."""
    shape = as_diagram(shape)
    proj = isotypic_projector(rep, shape)
    x = highest_weight_variables(shape, rep.n, rep.cfg)
    outcomes = []
    for m in range(1, rep.n + 1):
        chi = central_eigenvalue(q_immanant(rep, column(m)), proj)
        outcomes.append(
            check_equal(
                f"column m={m} λ={shape}",
                chi,
                elementary_symmetric(x, m),
                values={"lambda": shape, "chi": chi},
            )
        )
    return outcomes


def central_family(rep: EvaluatedRep, m_max: int, M: int) -> CentralFamily:
    """Gelfand invariants, E(u) coefficients and q-immanants with m <= m_max."""
    family = gelfand_invariants(rep, M)
    for k, coeff in build_E_poly(rep).coeffs.items():
        family.add(f"E[u^{k}]", coeff)
    for m in range(1, m_max + 1):
        for shape in partitions(m, rep.n):
            family.add(f"S{shape}", q_immanant(rep, shape))
    return family


def basis_shapes(n: int, m_max: int) -> list[YoungDiagram]:
    """The empty diagram followed by all shapes with m <= m_max and <= n rows."""
    return [shape for m in range(m_max + 1) for shape in partitions(m, n)]


def basis_weights(n: int, N_max: int) -> list[YoungDiagram]:
    return [lam for N in range(N_max + 1) for lam in partitions(N, n)]


def eigenvalue_table(
    n: int, cfg: QConfig, m_max: int, N_max: int, z: Fraction = Fraction(0)
) -> list[list[Fraction]]:
    """Eigenvalues of the operators S_μ(z) on the highest weight modules.

    Rows follow :func:`basis_shapes`, columns follow :func:`basis_weights`.
    Every entry is read off the action of S_μ(z) on the isotypic component of
    λ inside the representation on N = |λ| module sites; S_∅ is the identity.
    """
    shapes = basis_shapes(n, m_max)
    table: dict[YoungDiagram, list[Fraction]] = {mu: [] for mu in shapes}
    for N in range(N_max + 1):
        rep = build_rep(n, N, cfg)
        operators = {
            mu: build_immanant_poly(rep, standard_tableaux(mu)[0]).at(z)
            for mu in shapes
            if mu.size
        }
        for lam in weights_of(rep):
            proj = isotypic_projector(rep, lam)
            for mu in shapes:
                if mu.size == 0:
                    table[mu].append(Fraction(1))
                else:
                    table[mu].append(central_eigenvalue(operators[mu], proj))
    return [table[mu] for mu in shapes]


def verify_basis_rank(
    n: int, cfg: QConfig, m_max: int, N_max: int, z: Fraction = Fraction(0)
) -> list[Outcome]:
    """Linear independence of the eigenvalue vectors of the S_μ(z).

    The matrix has one row per shape μ, including the empty one, and one
    column per weight λ with at most ``N_max`` boxes. Its entries come from
    the operators, see :func:`eigenvalue_table`, and are compared with the
    Harish-Chandra values s_μ(q^{2ℓ} | a) as well.
    """
    shapes = basis_shapes(n, m_max)
    weights = basis_weights(n, N_max)
    rows = eigenvalue_table(n, cfg, m_max, N_max, z)
    shift = immanant_shift(z, cfg)
    expected = [
        [
            factorial_schur(mu, highest_weight_variables(lam, n, cfg), shift, n)
            for lam in weights
        ]
        for mu in shapes
    ]
    got = rank(matrix_from_rows(rows, len(weights)))
    return [
        Outcome(
            f"basis z={z}",
            got == len(shapes),
            witness=None if got == len(shapes) else {"rank": got},
            values={"rank": got, "rows": len(shapes), "columns": len(weights)},
        ),
        check_equal(f"basis eigenvalues z={z}", rows, expected),
    ]
