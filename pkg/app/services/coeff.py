"""
Exact scalars for the path models.

LaurentPoly and RationalFunction live in Q(q); Cyclotomic holds values of the
2l-th cyclotomic field after specializing q = exp(+-pi*i/l). Nothing here ever
touches floating point.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from app.core.exceptions import DenominatorVanishes, DivisionByZero, LevelTooSmall, ParseError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

_POLY_RING, _ = ring("q", QQ)


class LaurentPoly:
    """Finite sum of rational multiples of integer powers of one variable"""

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None, var: str = "q"):
        clean: Dict[int, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            value = Fraction(coefficient)
            if value:
                clean[int(exponent)] = value
        self._terms = clean
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1, var: str = "q") -> "LaurentPoly":
        return cls({exponent: coefficient}, var)

    @classmethod
    def constant(cls, value: Rational, var: str = "q") -> "LaurentPoly":
        return cls({0: value}, var)

    # -- inspection -------------------------------------------------------

    def items(self) -> List[Tuple[int, Fraction]]:
        """(exponent, coefficient) pairs in ascending exponent order"""
        return sorted(self._terms.items())

    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    @property
    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    @property
    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    def exponents(self) -> List[int]:
        return sorted(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.var)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            result[exponent] = result.get(exponent, 0) + coefficient
        return LaurentPoly(result, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(result, self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            if len(self._terms) != 1:
                raise DivisionByZero("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly({e * exponent: c ** exponent}, self.var)
        result = LaurentPoly.constant(1, self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var**k"""
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.var)

    def scale_exponents(self, factor: int, var: Optional[str] = None) -> "LaurentPoly":
        """Substitute var -> new_var**factor"""
        return LaurentPoly({e * factor: c for e, c in self._terms.items()}, var or self.var)

    def evaluate(self, value: Rational) -> Fraction:
        value = Fraction(value)
        return sum((c * value ** e for e, c in self._terms.items()), Fraction(0))

    def evaluate_mod(self, prime: int, point: int) -> int:
        total = 0
        for e, c in self._terms.items():
            total += _fraction_mod(c, prime) * pow(point, e, prime)
        return total % prime

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- text / json ------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for exponent, coefficient in self.items():
            negative = coefficient < 0
            magnitude = -coefficient if negative else coefficient
            if exponent == 0:
                body = str(magnitude)
            else:
                power = self.var if exponent == 1 else f"{self.var}^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def to_json(self) -> Dict[str, str]:
        return {str(e): str(c) for e, c in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str], var: str = "q") -> "LaurentPoly":
        try:
            return cls({int(e): Fraction(c) for e, c in data.items()}, var)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "LaurentPoly":
        """Parse the `to_text` grammar (any ordering of monomials is accepted)"""
        symbol = sympy.Symbol(var)
        try:
            expr = sympy.sympify(text.replace("^", "**"), locals={var: symbol})
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ParseError(f"cannot parse polynomial {text!r}") from exc
        expr = sympy.expand(expr)
        if expr.free_symbols - {symbol}:
            raise ParseError(f"unexpected symbols in {text!r}")
        terms: Dict[int, Fraction] = {}
        for term in sympy.Add.make_args(expr):
            coefficient, exponent = term.as_coeff_exponent(symbol)
            if not (coefficient.is_Rational and exponent.is_Integer):
                raise ParseError(f"not a Laurent polynomial: {text!r}")
            value = Fraction(int(coefficient.p), int(coefficient.q))
            terms[int(exponent)] = terms.get(int(exponent), 0) + value
        return cls(terms, var)


def _fraction_mod(value: Fraction, prime: int) -> int:
    if value.denominator % prime == 0:
        raise DenominatorVanishes(f"{value} has no image mod {prime}")
    return value.numerator * pow(value.denominator, -1, prime) % prime


def _to_ring(poly: LaurentPoly):
    return _POLY_RING.from_dict({(e,): QQ(c.numerator, c.denominator) for e, c in poly.items()})


def _from_ring(element, var: str) -> LaurentPoly:
    return LaurentPoly(
        {monom[0]: Fraction(int(c.numerator), int(c.denominator)) for monom, c in element.items()},
        var,
    )


class RationalFunction:
    """
    numerator / denominator in canonical form.

    The denominator is an ordinary polynomial with constant term 1 and shares no
    factor with the numerator; all powers of q sit in the numerator.
    """

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(self, numerator, denominator=None, _canonical: bool = False):
        numerator = _as_laurent(numerator)
        denominator = LaurentPoly.constant(1, numerator.var) if denominator is None else _as_laurent(denominator)
        if not _canonical:
            numerator, denominator = _canonicalize(numerator, denominator)
        self.numerator = numerator
        self.denominator = denominator
        self._hash = None

    @classmethod
    def from_laurent(cls, poly: LaurentPoly) -> "RationalFunction":
        return cls(poly, LaurentPoly.constant(1, poly.var), _canonical=True)

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1) -> "RationalFunction":
        return cls.from_laurent(LaurentPoly.monomial(exponent, coefficient))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_laurent(self) -> bool:
        return self.denominator == 1

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.numerator

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.from_laurent(LaurentPoly.constant(other))
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_laurent(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.denominator == 1 and other.denominator == 1:
            return RationalFunction.from_laurent(self.numerator + other.numerator)
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalFunction.from_laurent(LaurentPoly())
        if self.denominator == 1 and other.denominator == 1:
            return RationalFunction.from_laurent(self.numerator * other.numerator)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.denominator == 1:
            return RationalFunction.from_laurent(self.numerator ** exponent)
        return RationalFunction(self.numerator ** exponent, self.denominator ** exponent, _canonical=True)

    def evaluate(self, value: Rational) -> Fraction:
        denominator = self.denominator.evaluate(value)
        if denominator == 0:
            raise DenominatorVanishes(f"{self} has a pole at q={value}")
        return self.numerator.evaluate(value) / denominator

    def evaluate_mod(self, prime: int, point: int) -> int:
        denominator = self.denominator.evaluate_mod(prime, point)
        if denominator == 0:
            raise DenominatorVanishes(f"{self} has a pole at q={point} mod {prime}")
        return self.numerator.evaluate_mod(prime, point) * pow(denominator, -1, prime) % prime

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.numerator, self.denominator))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if self.denominator == 1:
            return self.numerator.to_text()
        return f"({self.numerator.to_text()})/({self.denominator.to_text()})"


def _as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a Laurent polynomial")


def _canonicalize(numerator: LaurentPoly, denominator: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    var = numerator.var
    if denominator.is_zero():
        raise DivisionByZero("zero denominator")
    if numerator.is_zero():
        return LaurentPoly(var=var), LaurentPoly.constant(1, var)
    low = denominator.min_degree
    numerator, denominator = numerator.shift(-low), denominator.shift(-low)
    if denominator.is_constant():
        return numerator * (1 / denominator.coefficient(0)), LaurentPoly.constant(1, var)
    shift = numerator.min_degree
    reduced_num, reduced_den = _to_ring(numerator.shift(-shift)).cancel(_to_ring(denominator))
    numerator = _from_ring(reduced_num, var).shift(shift)
    denominator = _from_ring(reduced_den, var)
    lead = denominator.coefficient(0)
    if lead != 1:
        numerator, denominator = numerator * (1 / lead), denominator * (1 / lead)
    return numerator, denominator


@lru_cache(maxsize=None)
def qint(n: int) -> RationalFunction:
    """Quantum integer [n] = (q^n - q^-n)/(q - q^-1)"""
    if n < 0:
        return -qint(-n)
    return RationalFunction.from_laurent(LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)}))


def q_power(k: int) -> RationalFunction:
    return RationalFunction.monomial(k)


def eval_formula(text: str) -> RationalFunction:
    """Evaluate an expression in q and r after substituting r = q^3"""
    q, r = sympy.symbols("q r")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"q": q, "r": r})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse formula {text!r}") from exc
    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise DivisionByZero(f"formula {text!r} divides by zero")
    if expr.free_symbols - {q, r}:
        raise ParseError(f"unexpected symbols in {text!r}")
    expr = sympy.together(expr.subs(r, q ** 3))
    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise DivisionByZero(f"formula {text!r} divides by zero")
    numerator, denominator = sympy.fraction(sympy.cancel(expr))
    if denominator == 0:
        raise DivisionByZero(f"formula {text!r} divides by zero")
    return RationalFunction(_sympy_to_laurent(numerator, q), _sympy_to_laurent(denominator, q))


def _sympy_to_laurent(expr, symbol) -> LaurentPoly:
    terms: Dict[int, Fraction] = {}
    for term in sympy.Add.make_args(sympy.expand(expr)):
        coefficient, exponent = term.as_coeff_exponent(symbol)
        if not (coefficient.is_Rational and exponent.is_Integer):
            raise ParseError(f"non-rational term {term} in formula")
        terms[int(exponent)] = terms.get(int(exponent), 0) + Fraction(int(coefficient.p), int(coefficient.q))
    return LaurentPoly(terms)


# -- cyclotomic fields ---------------------------------------------------------


class _CyclotomicTables:
    """Reduction data for Q(zeta_n)"""

    def __init__(self, n: int):
        x = sympy.Symbol("x")
        self.n = n
        self.phi = int(sympy.totient(n))
        coeffs = [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()]
        low_first = list(reversed(coeffs))[:-1]
        powers: List[Tuple[int, ...]] = []
        current = [0] * self.phi
        current[0] = 1
        for _ in range(n):
            powers.append(tuple(current))
            carry = current[-1]
            current = [0] + current[:-1]
            if carry:
                current = [c - carry * a for c, a in zip(current, low_first)]
        self.powers = powers
        self.units = [k for k in range(1, n) if gcd(k, n) == 1]

    def reduce(self, poly: Sequence[Rational]) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.phi
        for k, c in enumerate(poly):
            if not c:
                continue
            if k < self.phi:
                out[k] += c
                continue
            for i, v in enumerate(self.powers[k % self.n]):
                if v:
                    out[i] += c * v
        return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_tables(n: int) -> _CyclotomicTables:
    logger.debug(f"Building cyclotomic tables for conductor {n}")
    return _CyclotomicTables(n)


class Cyclotomic:
    """Element of Q(zeta_n) as coordinates on 1, zeta, ..., zeta^(phi(n)-1)"""

    __slots__ = ("conductor", "coords", "_hash")

    def __init__(self, conductor: int, coords: Iterable[Rational]):
        tables = cyclotomic_tables(conductor)
        values = [Fraction(c) for c in coords]
        if len(values) != tables.phi:
            values = list(tables.reduce(values))
        self.conductor = conductor
        self.coords: Tuple[Fraction, ...] = tuple(values)
        self._hash = None

    @classmethod
    def rational(cls, conductor: int, value: Rational) -> "Cyclotomic":
        return cls(conductor, [value])

    @classmethod
    def root(cls, conductor: int, k: int = 1) -> "Cyclotomic":
        tables = cyclotomic_tables(conductor)
        return cls(conductor, tables.powers[k % conductor])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def _coerce(self, other) -> Optional["Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            if other.conductor != self.conductor:
                raise ValueError("mixed cyclotomic conductors")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self.conductor, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclotomic(self.conductor, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclotomic(self.conductor, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Cyclotomic(self.conductor, [])
        if other.is_rational():
            scale = other.coords[0]
            return Cyclotomic(self.conductor, [a * scale for a in self.coords])
        if self.is_rational():
            scale = self.coords[0]
            return Cyclotomic(self.conductor, [b * scale for b in other.coords])
        product = [Fraction(0)] * (2 * len(self.coords) - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        product[i + j] += a * b
        return Cyclotomic(self.conductor, cyclotomic_tables(self.conductor).reduce(product))

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k"""
        tables = cyclotomic_tables(self.conductor)
        image = [Fraction(0)] * self.conductor
        for j, c in enumerate(self.coords):
            if c:
                image[(j * k) % self.conductor] += c
        return Cyclotomic(self.conductor, tables.reduce(image))

    def norm_cofactor(self) -> "Cyclotomic":
        """Product of the non-identity Galois conjugates"""
        result = Cyclotomic.rational(self.conductor, 1)
        for k in cyclotomic_tables(self.conductor).units:
            if k != 1:
                result = result * self.galois(k)
        return result

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.rational(self.conductor, 1 / self.coords[0])
        cofactor = self.norm_cofactor()
        norm = (self * cofactor).coords[0]
        return Cyclotomic(self.conductor, [c / norm for c in cofactor.coords])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.rational(self.conductor, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate_mod(self, prime: int, root: int) -> int:
        total = 0
        for j, c in enumerate(self.coords):
            if c:
                total += _fraction_mod(c, prime) * pow(root, j, prime)
        return total % prime

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, Cyclotomic):
            return self.conductor == other.conductor and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.conductor, self.coords))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        return LaurentPoly(dict(enumerate(self.coords)), var="z").to_text()

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coordinates": [str(c) for c in self.coords]}


def specialize(f: RationalFunction, ell: int, sign: int = 1) -> Cyclotomic:
    """Image of f under q -> exp(sign*pi*i/ell) in Q(zeta_{2 ell})"""
    if ell < 3:
        raise LevelTooSmall(f"specialization needs ell >= 3, got {ell}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = 2 * ell
    denominator = _laurent_at_root(f.denominator, n, sign)
    if denominator.is_zero():
        raise DenominatorVanishes(f"{f} has a pole at q = exp({'+' if sign > 0 else '-'}pi i/{ell})")
    numerator = _laurent_at_root(f.numerator, n, sign)
    if f.denominator == 1:
        return numerator
    return numerator * denominator.inverse()


def _laurent_at_root(poly: LaurentPoly, n: int, sign: int) -> Cyclotomic:
    image = [Fraction(0)] * n
    for exponent, coefficient in poly.items():
        image[(sign * exponent) % n] += coefficient
    return Cyclotomic(n, cyclotomic_tables(n).reduce(image))


# -- coefficient fields used by the path models --------------------------------

Scalar = Union[RationalFunction, Cyclotomic]


class GenericField:
    """Q(q) itself"""

    name = "generic"

    def coerce(self, f: RationalFunction) -> RationalFunction:
        return f

    def from_int(self, value: Rational) -> RationalFunction:
        return RationalFunction.from_laurent(LaurentPoly.constant(value))

    @property
    def zero(self) -> RationalFunction:
        return self.from_int(0)

    @property
    def one(self) -> RationalFunction:
        return self.from_int(1)

    def q_power(self, k: int) -> RationalFunction:
        return q_power(k)

    def qint(self, n: int) -> RationalFunction:
        return qint(n)

    def reduce_mod(self, value: RationalFunction, prime: int, point: int) -> int:
        return value.evaluate_mod(prime, point)

    def __repr__(self):
        return "GenericField()"


class RootOfUnityField:
    """Q(zeta_{2 ell}) with q = zeta^sign"""

    def __init__(self, ell: int, sign: int = 1):
        if ell < 3:
            raise LevelTooSmall(f"root-of-unity field needs ell >= 3, got {ell}")
        self.ell = ell
        self.sign = sign
        self.conductor = 2 * ell
        self.name = f"q=exp({'+' if sign > 0 else '-'}pi*i/{ell})"

    def coerce(self, f: RationalFunction) -> Cyclotomic:
        return specialize(f, self.ell, self.sign)

    def from_int(self, value: Rational) -> Cyclotomic:
        return Cyclotomic.rational(self.conductor, value)

    @property
    def zero(self) -> Cyclotomic:
        return self.from_int(0)

    @property
    def one(self) -> Cyclotomic:
        return self.from_int(1)

    def q_power(self, k: int) -> Cyclotomic:
        return Cyclotomic.root(self.conductor, self.sign * k)

    def qint(self, n: int) -> Cyclotomic:
        return self.coerce(qint(n))

    def reduce_mod(self, value: Cyclotomic, prime: int, point: int) -> int:
        # point is the image of q, i.e. of zeta^sign
        root = point if self.sign > 0 else pow(point, -1, prime)
        return value.evaluate_mod(prime, root)

    def __repr__(self):
        return f"RootOfUnityField(ell={self.ell}, sign={self.sign})"


def scalar_to_json(value) -> dict:
    if isinstance(value, Cyclotomic):
        return value.to_json()
    if isinstance(value, RationalFunction):
        if value.is_laurent():
            return {"text": value.to_text(), "terms": value.numerator.to_json()}
        return {
            "text": value.to_text(),
            "numerator": value.numerator.to_json(),
            "denominator": value.denominator.to_json(),
        }
    if isinstance(value, LaurentPoly):
        return {"text": value.to_text(), "terms": value.to_json()}
    return {"text": str(value)}


def scalar_text(value) -> str:
    return value.to_text() if hasattr(value, "to_text") else str(value)
