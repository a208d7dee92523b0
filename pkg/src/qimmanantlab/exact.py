"""Exact scalars, the deformation parameter and Laurent polynomials.

All computations happen over the rationals. The public scalar type is
:class:`fractions.Fraction`, which keeps numerator and denominator in lowest
terms with a positive denominator after every operation.

"""

# Standard library
import dataclasses as dc
import operator
from collections.abc import Callable, Mapping
from fractions import Fraction
from functools import cache, reduce
from typing import Any, Generic, TypeVar

Scalar = Fraction
C = TypeVar("C")


class NonGenericParameterError(ArithmeticError):
    pass


class VariableMismatchError(ValueError):
    pass


def as_scalar(value: int | str | Fraction) -> Fraction:
    """Parse an exact rational from an integer, a fraction or a ``"p/r"`` string."""
    return Fraction(value)


def scalar_to_str(value: Fraction) -> str:
    """Serialise a scalar losslessly, e.g. ``"97/36"`` or ``"-2"``."""
    return str(Fraction(value))


@cache
def _power(q: Fraction, k: int) -> Fraction:
    return q**k


@dc.dataclass(frozen=True)
class QConfig:
    """Specialisation of the deformation parameter q.

    Rational values other than 0 and ±1 have absolute value different from one
    and are therefore never roots of unity.
    """

    q: Fraction = Fraction(3, 2)

    def __post_init__(self):
        q = as_scalar(self.q)
        if q == 0 or abs(q) == 1:
            raise NonGenericParameterError(f"q={q} is a root of unity or zero")
        object.__setattr__(self, "q", q)

    def power(self, k: int) -> Fraction:
        return _power(self.q, k)

    @property
    def qdiff(self) -> Fraction:
        """The recurring factor q - q^{-1}."""
        return self.q - self.power(-1)

    def __str__(self) -> str:
        return scalar_to_str(self.q)


def q_power(cfg: QConfig, k: int) -> Fraction:
    return cfg.power(k)


def _product(a: Any, b: Any) -> Any:
    # operator-valued coefficients compose, scalars multiply
    if hasattr(a, "__matmul__") and hasattr(b, "__matmul__"):
        return a @ b
    return a * b


@dc.dataclass(frozen=True)
class Poly(Generic[C]):
    """Laurent polynomial in one formal variable.

    Coefficients are stored by exponent and may be scalars or any ring element
    supporting ``+``, ``-``, multiplication by scalars and ``@`` composition.
    Zero coefficients are never stored.

    Attributes
    ----------
    coeffs : Mapping[int, C]
        coefficient by exponent, negative exponents allowed
    var : str
        name of the variable, polynomials in different variables do not mix

    """

    coeffs: Mapping[int, C]
    var: str = "z"

    def __post_init__(self):
        coeffs = {k: c for k, c in sorted(self.coeffs.items()) if c}
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, value: C, var: str = "z") -> "Poly[C]":
        return cls({0: value}, var)

    @classmethod
    def monomial(cls, value: C, exponent: int, var: str = "z") -> "Poly[C]":
        return cls({exponent: value}, var)

    @property
    def exponents(self) -> list[int]:
        return list(self.coeffs)

    @property
    def low(self) -> int | None:
        return min(self.coeffs, default=None)

    @property
    def high(self) -> int | None:
        return max(self.coeffs, default=None)

    def coefficient(self, exponent: int, zero: Any = Fraction(0)) -> Any:
        return self.coeffs.get(exponent, zero)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check_var(self, other: "Poly") -> None:
        if self.var != other.var:
            raise VariableMismatchError(f"{self.var} != {other.var}")

    def __add__(self, other: "Poly[C]") -> "Poly[C]":
        return poly_add(self, other)

    def __neg__(self) -> "Poly[C]":
        return Poly({k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other: "Poly[C]") -> "Poly[C]":
        return poly_add(self, -other)

    def __mul__(self, other: "Poly[C] | Fraction | int") -> "Poly[C]":
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return Poly({k: c * other for k, c in self.coeffs.items()}, self.var)

    def map(self, fn: Callable[[C], Any]) -> "Poly":
        """Apply ``fn`` to every coefficient."""
        return Poly({k: fn(c) for k, c in self.coeffs.items()}, self.var)

    def truncate(self, lowest: int) -> "Poly[C]":
        """Drop all terms with exponent below ``lowest``."""
        return Poly({k: c for k, c in self.coeffs.items() if k >= lowest}, self.var)

    def evaluate(self, value: Fraction | int, zero: Any = Fraction(0)) -> Any:
        """Substitute an exact scalar for the variable."""
        value = as_scalar(value)
        terms = [c * value**k if k else c for k, c in self.coeffs.items()]
        if not terms:
            return zero
        return reduce(operator.add, terms)


def poly_add(a: Poly[C], b: Poly[C]) -> Poly[C]:
    a._check_var(b)
    acc = dict(a.coeffs)
    for k, c in b.coeffs.items():
        acc[k] = acc[k] + c if k in acc else c
    return Poly(acc, a.var)


def poly_mul(a: Poly[C], b: Poly[C]) -> Poly[C]:
    """Multiply two polynomials, keeping the order of the factors.

    Raises
    ------
    VariableMismatchError
        if the polynomials are in different variables.

    """
    a._check_var(b)
    acc: dict[int, Any] = {}
    for i, x in a.coeffs.items():
        for j, y in b.coeffs.items():
            term = _product(x, y)
            acc[i + j] = acc[i + j] + term if i + j in acc else term
    return Poly(acc, a.var)


def poly_substitute_scaled(p: Poly[C], factor: Fraction) -> Poly[C]:
    """Substitute ``var -> var * factor``.

    The coefficient at exponent k is multiplied by ``factor**k``; with the
    variable u and factor q^2 this realises E(u) -> E(u q^2).
    """
    factor = as_scalar(factor)
    return Poly(
        {k: c * factor**k if k else c for k, c in p.coeffs.items()},
        p.var,
    )
