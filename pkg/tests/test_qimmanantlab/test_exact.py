# Standard library
from fractions import Fraction

# Third-party
import numpy as np
import pytest

# First-party
from qimmanantlab.exact import (
    NonGenericParameterError,
    Poly,
    QConfig,
    VariableMismatchError,
    as_scalar,
    poly_mul,
    poly_substitute_scaled,
    scalar_to_str,
)
from qimmanantlab.tensor import AUX, TensorOp, build_P, build_R


def test_scalars():
    assert as_scalar("97/36") == Fraction(97, 36)
    assert as_scalar(3) == Fraction(3)
    assert scalar_to_str(Fraction(-4, 6)) == "-2/3"
    assert scalar_to_str(Fraction(2)) == "2"


@pytest.mark.parametrize("q", [0, 1, -1, "1", "-3/3"])
def test_non_generic_q(q):
    with pytest.raises(NonGenericParameterError):
        QConfig(q)


def test_qconfig(cfg):
    assert cfg.q == Fraction(3, 2)
    assert cfg.power(-2) == Fraction(4, 9)
    assert cfg.qdiff == Fraction(5, 6)
    assert str(cfg) == "3/2"
    assert QConfig("3/2") == cfg


def test_poly_drops_zeros():
    p = Poly({0: Fraction(1), 1: Fraction(0), -2: Fraction(3)})
    assert p.exponents == [-2, 0]
    assert p.low == -2
    assert p.high == 0
    assert p.coefficient(5) == 0
    assert not Poly({})


def test_poly_arithmetic():
    a = Poly({0: Fraction(1), 1: Fraction(1)})
    b = Poly({0: Fraction(1), 1: Fraction(-1)})
    assert a * b == Poly({0: Fraction(1), 2: Fraction(-1)})
    assert a + b == Poly.constant(Fraction(2))
    assert a - a == Poly({})
    assert a * 3 == Poly({0: Fraction(3), 1: Fraction(3)})


def test_poly_variable_mismatch():
    with pytest.raises(VariableMismatchError):
        Poly.constant(Fraction(1), "z") + Poly.constant(Fraction(1), "u")
    with pytest.raises(VariableMismatchError):
        Poly.constant(Fraction(1), "z") * Poly.constant(Fraction(1), "u")


def test_poly_evaluate():
    p = Poly({0: Fraction(1), -1: Fraction(2)}, "u")
    assert p.evaluate(2) == 2
    assert Poly({}).evaluate(5) == 0


def test_truncate_and_scale():
    p = Poly({0: Fraction(1), -1: Fraction(1), -3: Fraction(1)}, "u")
    assert p.truncate(-2) == Poly({0: Fraction(1), -1: Fraction(1)}, "u")
    scaled = poly_substitute_scaled(p, Fraction(4))
    assert scaled == Poly(
        {0: Fraction(1), -1: Fraction(1, 4), -3: Fraction(1, 64)}, "u"
    )


def random_scalars(rng, count):
    numerators = rng.integers(-50, 51, size=count)
    denominators = rng.integers(1, 30, size=count)
    return [as_scalar(f"{p}/{r}") for p, r in zip(numerators, denominators)]


def test_field_axioms():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = random_scalars(rng, 3)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0
        if a:
            assert a * (1 / a) == 1
        assert (a * b).denominator > 0


def test_poly_mul_associative():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a, b, c = (
            Poly(dict(zip(range(-1, 2), random_scalars(rng, 3)))) for _ in range(3)
        )
        assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))
        assert poly_mul(a, b) == poly_mul(b, a)


def test_poly_mul_operator_coefficients(cfg):
    R = build_R(2, cfg)
    P = build_P(2)
    one = TensorOp.identity(2, (AUX, AUX))
    a = Poly({0: R, 1: one})
    b = Poly({0: P, -1: R})
    c = Poly({1: R @ P, 2: P})
    assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))
    # operator coefficients keep the order of the factors
    assert poly_mul(Poly.constant(R), Poly.constant(P)) == Poly.constant(R @ P)
