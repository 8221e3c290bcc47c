"""
Link invariants of braid closures.

jones      J = (-[2])^(n-1) q^(-e) tr(rho(beta))
kauffman   K = x^(n-1) r^(-e) tr^2(Phi(beta)),  x = [2]^2, r = q^3
oracle     Kauffman bracket state sum in A, normalized by (-A)^(-3e)

With these normalizations K = J^2 and J(q = A^2) equals the oracle.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import CapExceeded, ConsistencyError
from app.services.braid_words import BraidWord, random_word
from app.services.coeff import LaurentPoly, RationalFunction
from app.services.diagrams import INF, Level, level_text
from app.services.pathmodel import path_model, represent_word
from app.services.squares import build_square

logger = logging.getLogger(__name__)

__all__ = [
    "BraidWord", "random_word", "InvariantValue", "LickorishResult", "closure_components",
    "jones", "kauffman_special", "lickorish_check", "bracket_oracle", "bracket_variable",
]

BRACKET_VAR = "A"


@dataclass(frozen=True)
class InvariantValue:
    kind: str
    value: object
    strands: int
    exponent_sum: int
    components: int
    ell: Level = INF

    def text(self) -> str:
        return self.value.to_text()


@dataclass(frozen=True)
class LickorishResult:
    lhs: InvariantValue
    rhs: InvariantValue
    equal: bool
    components: int


def closure_components(word: BraidWord) -> int:
    permutation = word.permutation()
    seen = [False] * word.strands
    cycles = 0
    for start in range(word.strands):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = permutation[k]
    return cycles


def _finish(kind: str, raw, word: BraidWord, ell: Level) -> InvariantValue:
    if isinstance(raw, RationalFunction):
        if not raw.is_laurent():
            raise ConsistencyError(f"{kind} of {word} is not a Laurent polynomial: {raw}")
        raw = raw.as_laurent()
    return InvariantValue(kind, raw, word.strands, word.exponent_sum, closure_components(word), ell)


def jones(word: BraidWord, ell: Level = INF, sign: int = 1) -> InvariantValue:
    model = path_model(word.strands, ell, sign)
    f = model.field
    trace = model.trace(represent_word(word, ell, sign))
    prefactor = (-f.qint(2)) ** (word.strands - 1) * f.q_power(-word.exponent_sum)
    value = _finish("jones", prefactor * trace, word, ell)
    logger.debug(f"jones({word}; n={word.strands}, l={level_text(ell)}) = {value.text()}")
    return value


def kauffman_special(word: BraidWord, ell: Level = INF, sign: int = 1) -> InvariantValue:
    rep = build_square(word.strands, ell, sign)
    trace = rep.trace(rep.phi(word))
    prefactor = rep.x ** (word.strands - 1) * rep.r ** (-word.exponent_sum)
    value = _finish("kauffman", prefactor * trace, word, ell)
    logger.debug(f"kauffman({word}; n={word.strands}, l={level_text(ell)}) = {value.text()}")
    return value


def lickorish_check(word: BraidWord, ell: Level = INF) -> LickorishResult:
    """K(beta; q^3, q) against J(beta; q)^2"""
    lhs = kauffman_special(word, ell)
    j = jones(word, ell)
    rhs = InvariantValue("jones_squared", j.value * j.value, j.strands, j.exponent_sum, j.components, ell)
    return LickorishResult(lhs, rhs, lhs.value == rhs.value, lhs.components)


# -- Kauffman bracket oracle ---------------------------------------------------

# A Temperley-Lieb monoid element on n strands is a perfect matching of the
# points 0..n-1 (top) and n..2n-1 (bottom), stored as partner[point].
Matching = Tuple[int, ...]


def _identity_matching(n: int) -> Matching:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _cup_cap(n: int, i: int) -> Matching:
    """U_i joins top i-1 with top i and bottom i-1 with bottom i (1-based i)"""
    partner = list(_identity_matching(n))
    a, b = i - 1, i
    partner[a], partner[b] = b, a
    partner[n + a], partner[n + b] = n + b, n + a
    return tuple(partner)


@lru_cache(maxsize=65536)
def _compose(upper: Matching, lower: Matching) -> Tuple[Matching, int]:
    """Stack upper on lower; returns the product and the number of closed loops"""
    n = len(upper) // 2
    result = [0] * (2 * n)
    # middle point k is the bottom point n+k of upper and the top point k of lower
    used = [False] * n

    def through_lower(k: int) -> int:
        while True:
            used[k] = True
            y = lower[k]
            if y >= n:
                return y
            used[y] = True
            x = upper[n + y]
            if x < n:
                return x
            k = x - n

    def through_upper(k: int) -> int:
        while True:
            used[k] = True
            x = upper[n + k]
            if x < n:
                return x
            used[x - n] = True
            y = lower[x - n]
            if y >= n:
                return y
            k = y

    for p in range(n):
        x = upper[p]
        result[p] = x if x < n else through_lower(x - n)
    for p in range(n, 2 * n):
        y = lower[p]
        result[p] = y if y >= n else through_upper(y)

    loops = 0
    for k in range(n):
        if used[k]:
            continue
        loops += 1
        current = k
        while not used[current]:
            used[current] = True
            y = lower[current]
            used[y] = True
            current = upper[n + y] - n
    return tuple(result), loops


def _closure_loops(matching: Matching) -> int:
    """Loops of the closure, which joins bottom point n+k to top point k"""
    n = len(matching) // 2
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            partner = matching[p]
            seen[partner] = True
            p = partner - n if partner >= n else partner + n
    return loops


def bracket_variable(poly: LaurentPoly) -> LaurentPoly:
    """The bridge q -> A^2 from the trace-based Jones polynomial to the bracket variable"""
    return poly.scale_exponents(2, var=BRACKET_VAR)


def bracket_oracle(word: BraidWord, cap: Optional[int] = None) -> LaurentPoly:
    cap = settings.bracket_cap if cap is None else cap
    if word.crossings > cap:
        raise CapExceeded(f"{word.crossings} crossings exceed the bracket cap {cap}")
    n = word.strands
    one = LaurentPoly.constant(1, BRACKET_VAR)
    a = LaurentPoly.monomial(1, 1, BRACKET_VAR)
    a_inv = LaurentPoly.monomial(-1, 1, BRACKET_VAR)
    delta = LaurentPoly({2: -1, -2: -1}, BRACKET_VAR)

    identity = _identity_matching(n)
    states: Dict[Matching, LaurentPoly] = {identity: one}
    for letter in word.letters:
        cup = _cup_cap(n, abs(letter))
        smooth, turn = (a, a_inv) if letter > 0 else (a_inv, a)
        following: Dict[Matching, LaurentPoly] = {}
        for matching, weight in states.items():
            for resolution, factor in ((identity, smooth), (cup, turn)):
                product, loops = _compose(matching, resolution)
                term = weight * factor * delta ** loops
                following[product] = following.get(product, LaurentPoly({}, BRACKET_VAR)) + term
        states = {k: v for k, v in following.items() if not v.is_zero()}
        logger.debug(f"bracket oracle: {len(states)} planar states after letter {letter}")

    bracket = LaurentPoly({}, BRACKET_VAR)
    for matching, weight in states.items():
        bracket = bracket + weight * delta ** (_closure_loops(matching) - 1)
    writhe = word.exponent_sum
    sign = -1 if writhe % 2 else 1
    return bracket * LaurentPoly.monomial(-3 * writhe, sign, BRACKET_VAR)
