import random
from fractions import Fraction

import pytest

from app.core.exceptions import DenominatorVanishes, DivisionByZero, LevelTooSmall, ParseError
from app.services.coeff import (
    Cyclotomic, GenericField, LaurentPoly, RationalFunction, RootOfUnityField, eval_formula, q_power, qint,
    scalar_to_json, specialize,
)


def test_quantum_integers():
    assert qint(0) == 0
    assert qint(1) == 1
    assert qint(2) == LaurentPoly({1: 1, -1: 1})
    assert qint(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert qint(-3) == -qint(3)


def test_quantum_integer_recursion():
    for n in range(2, 8):
        assert qint(2) * qint(n) == qint(n + 1) + qint(n - 1)


def test_laurent_arithmetic():
    a = LaurentPoly({1: 1, -1: 1})
    assert a * a == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert (a - a).is_zero()
    assert a.shift(2) == LaurentPoly({3: 1, 1: 1})
    assert a.scale_exponents(2) == LaurentPoly({2: 1, -2: 1})
    assert a.evaluate(2) == Fraction(5, 2)


def test_laurent_equality_ignores_variable():
    assert LaurentPoly({1: 1}, var="A") == LaurentPoly({1: 1}, var="q")


def test_laurent_text_parse():
    poly = LaurentPoly({-8: -1, -6: 1, -2: 1})
    assert poly.to_text() == "-q^-8 + q^-6 + q^-2"
    assert LaurentPoly.parse("-q^-8 + q^-6 + q^-2") == poly
    assert LaurentPoly.from_json(poly.to_json()) == poly


def test_rational_functions_are_canonical():
    ratio = RationalFunction(LaurentPoly({2: 1, 0: -1}), LaurentPoly({1: 1, 0: -1}))
    assert ratio.is_laurent()
    assert ratio.as_laurent() == LaurentPoly({1: 1, 0: 1})

    halved = RationalFunction(LaurentPoly.constant(1), LaurentPoly({1: 2}))
    assert halved.as_laurent() == LaurentPoly({-1: Fraction(1, 2)})

    pole = RationalFunction(LaurentPoly.constant(1), LaurentPoly({1: 1, 0: -1}))
    assert not pole.is_laurent()
    assert pole.denominator.coefficient(0) == 1


def test_rational_inverse():
    x = qint(3) / qint(2)
    assert x * x.inverse() == 1
    with pytest.raises(DivisionByZero):
        RationalFunction(LaurentPoly()).inverse()


@pytest.mark.parametrize(
    "formula, expected",
    [
        ("(r - r^-1)/(q - q^-1) + 1", qint(2) ** 2),
        ("r^-1", q_power(-3)),
        ("r*q^-1", q_power(2)),
        ("q + q^-1", qint(2)),
    ],
)
def test_eval_formula(formula, expected):
    assert eval_formula(formula) == expected


@pytest.mark.parametrize("formula, error", [("1/(q-q)", DivisionByZero), ("q + s", ParseError), ("q +* ", ParseError)])
def test_eval_formula_errors(formula, error):
    with pytest.raises(error):
        eval_formula(formula)


@pytest.mark.parametrize("ell", range(3, 11))
def test_specialize_kills_level_integer(ell):
    assert specialize(qint(ell), ell).is_zero()
    assert specialize(q_power(2 * ell), ell) == 1
    assert specialize(q_power(2 * ell), ell, sign=-1) == 1


def test_specialize_quantum_two():
    assert specialize(qint(2), 6) == Cyclotomic.root(12, 1) + Cyclotomic.root(12, -1)


def test_specialize_errors():
    with pytest.raises(LevelTooSmall):
        specialize(qint(2), 2)
    with pytest.raises(DenominatorVanishes):
        specialize(qint(6).inverse(), 6)


def test_cyclotomic_arithmetic():
    z = Cyclotomic.root(12, 1)
    assert z ** 12 == 1
    assert z ** 6 == -1
    w = z + 2
    assert w * w.inverse() == 1
    assert (z - z).is_zero()
    with pytest.raises(DivisionByZero):
        Cyclotomic.rational(12, 0).inverse()


def test_cyclotomic_galois_conjugate():
    z = Cyclotomic.root(20, 1)
    assert z.galois(3) == Cyclotomic.root(20, 3)
    assert z.galois(-1) * z == 1


def test_fields_agree():
    generic, root = GenericField(), RootOfUnityField(8)
    value = generic.qint(3) * generic.q_power(-2) + generic.from_int(5)
    assert root.coerce(value) == root.qint(3) * root.q_power(-2) + root.from_int(5)
    assert root.qint(8).is_zero()


def test_scalar_json():
    assert scalar_to_json(qint(2))["text"] == "q^-1 + q"
    assert set(scalar_to_json(qint(2).inverse())) == {"text", "numerator", "denominator"}
    assert scalar_to_json(Cyclotomic.root(12, 1))["conductor"] == 12


# -- randomized ring laws ------------------------------------------------------


def _random_laurent(rng, max_terms=4, spread=5):
    return LaurentPoly({rng.randint(-spread, spread): rng.randint(-4, 4) for _ in range(rng.randint(1, max_terms))})


def _random_nonzero_laurent(rng):
    poly = _random_laurent(rng)
    return poly if not poly.is_zero() else LaurentPoly.monomial(rng.randint(-3, 3), rng.choice([-2, -1, 1, 2]))


def _random_rational(rng):
    # c + q^k with |c| >= 2 never vanishes on the unit circle
    denominator = LaurentPoly({0: rng.choice([-3, -2, 2, 3]), rng.randint(1, 3): 1})
    return RationalFunction(_random_laurent(rng), denominator)


def test_laurent_ring_laws():
    rng = random.Random(101)
    for _ in range(1000):
        a, b, c = _random_laurent(rng), _random_laurent(rng), _random_laurent(rng)
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


@pytest.mark.slow
def test_rational_function_ring_laws():
    rng = random.Random(202)
    for _ in range(1000):
        a, b, c = _random_rational(rng), _random_rational(rng), _random_rational(rng)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_canonical_form_ignores_common_factors():
    rng = random.Random(303)
    for _ in range(200):
        a, b, k = _random_laurent(rng), _random_nonzero_laurent(rng), _random_nonzero_laurent(rng)
        plain, scaled = RationalFunction(a, b), RationalFunction(k * a, k * b)
        assert plain == scaled
        assert (plain.numerator, plain.denominator) == (scaled.numerator, scaled.denominator)
        assert plain.denominator.min_degree == 0
        assert plain.denominator.coefficient(0) == 1


@pytest.mark.parametrize("ell", [6, 7, 10])
def test_specialize_is_multiplicative(ell):
    rng = random.Random(404 + ell)
    for _ in range(500 if ell == 6 else 100):
        f, g = _random_rational(rng), _random_rational(rng)
        sign = rng.choice([1, -1])
        assert specialize(f * g, ell, sign) == specialize(f, ell, sign) * specialize(g, ell, sign)
        assert specialize(f + g, ell, sign) == specialize(f, ell, sign) + specialize(g, ell, sign)


@pytest.mark.parametrize("ell", range(3, 11))
@pytest.mark.parametrize("sign", [1, -1])
def test_quantum_integers_reflect_at_the_level(ell, sign):
    for d in range(1, ell):
        assert specialize(qint(ell - d), ell, sign) == specialize(qint(d), ell, sign)
