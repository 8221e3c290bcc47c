"""
Symmetric squares of the Temperley-Lieb path models and the BMW generators
G~_i = q (g_i (x) g_i), E~_i = x (e_i (x) e_i) acting on them.

The square of a block-diagonal algebra splits into one tensor block per pair of
TL blocks s < t and a symmetric and an alternating block per TL block s. Every
square block is labelled by the BMW diagram it carries:

    TENSOR(s, t) -> [m - s - t, t - s]
    SYM(s)       -> [m - 2s]
    ALT(s)       -> [m - 2s]*
"""

import logging
import random
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import nextprime, primitive_root

from app.core.exceptions import (
    ConsistencyError, DenominatorVanishes, InvalidInput, LevelTooSmall, NotInGamma, NotInLambda,
)
from app.services.braid_words import BraidWord, random_word
from app.services.diagrams import (
    Diagram, Level, gamma_set, in_gamma, in_lambda, is_finite, lambda_set, level_text, require_parity, star,
)
from app.services.pathmodel import BlockMatrix, PathModel, path_model
from app.services.tableaux import count_osc, count_tableaux

logger = logging.getLogger(__name__)


class SourceKind(str, Enum):
    TENSOR = "TENSOR"
    SYM = "SYM"
    ALT = "ALT"


@dataclass(frozen=True, order=True)
class BlockSource:
    kind: SourceKind
    s: int
    t: Optional[int] = None

    def __str__(self):
        if self.kind == SourceKind.TENSOR:
            return f"({self.s},{self.t})"
        return f"({self.s},{self.kind.value})"


@dataclass(frozen=True)
class SquareBlock:
    source: BlockSource
    label: Diagram
    dim: int


# -- labels --------------------------------------------------------------------


def _tl_label(m: int, s: int, ell: Level) -> Diagram:
    if s < 0 or m - s < s:
        raise NotInLambda(f"[{m - s},{s}] is not a two-row diagram")
    label = Diagram.of(m - s, s)
    if not in_lambda(label, m, ell):
        raise NotInLambda(f"{label} is not in Lambda({m}, {level_text(ell)})")
    return label


def block_label(m: int, ell: Level, source: BlockSource) -> Diagram:
    _tl_label(m, source.s, ell)
    if source.kind == SourceKind.TENSOR:
        if source.t is None or source.t <= source.s:
            raise InvalidInput(f"tensor sources need s < t, got {source}")
        _tl_label(m, source.t, ell)
        return Diagram.of(m - source.s - source.t, source.t - source.s)
    plain = Diagram.of(m - 2 * source.s)
    if source.kind == SourceKind.SYM:
        return plain
    return star(plain, ell)


def block_source(m: int, nu: Diagram, ell: Level) -> BlockSource:
    if not in_gamma(nu, ell):
        raise NotInGamma(f"{nu} is not in Gamma({level_text(ell)})")
    require_parity(m, nu)
    if nu.length >= 3:
        plain = star(nu, ell)
        return BlockSource(SourceKind.ALT, (m - plain.row(1)) // 2)
    if nu.length <= 1:
        return BlockSource(SourceKind.SYM, (m - nu.row(1)) // 2)
    s = (m - nu.row(1) - nu.row(2)) // 2
    return BlockSource(SourceKind.TENSOR, s, s + nu.row(2))


# -- squares of single matrices ------------------------------------------------


def _pairs(n: int, strict: bool) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a + (1 if strict else 0), n)]


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    da, db = a.shape[0], b.shape[0]
    return np.multiply.outer(a, b).transpose(0, 2, 1, 3).reshape(da * db, da * db)


def sym_square(matrix: np.ndarray, field) -> np.ndarray:
    """Action of M (x) M on span{e_a e_b : a <= b}"""
    pairs = _pairs(matrix.shape[0], strict=False)
    result = np.empty((len(pairs), len(pairs)), dtype=object)
    two = field.from_int(2)
    for col, (a, b) in enumerate(pairs):
        for row, (c, d) in enumerate(pairs):
            if a == b:
                result[row, col] = matrix[c, a] * matrix[d, a]
            elif c == d:
                result[row, col] = two * matrix[c, a] * matrix[c, b]
            else:
                result[row, col] = matrix[c, a] * matrix[d, b] + matrix[c, b] * matrix[d, a]
    return result


def alt_square(matrix: np.ndarray, field) -> np.ndarray:
    """Action of M (x) M on span{e_a ^ e_b : a < b}"""
    pairs = _pairs(matrix.shape[0], strict=True)
    result = np.empty((len(pairs), len(pairs)), dtype=object)
    for col, (a, b) in enumerate(pairs):
        for row, (c, d) in enumerate(pairs):
            result[row, col] = matrix[c, a] * matrix[d, b] - matrix[c, b] * matrix[d, a]
    return result


# -- the square representation -------------------------------------------------


class SquareRep:
    """S^2 of the TL path model at (m, l), with the generators G~_i and E~_i"""

    def __init__(self, m: int, ell: Level, sign: int = 1):
        if is_finite(ell) and ell < 6:
            raise LevelTooSmall(f"the square construction needs l >= 6, got {level_text(ell)}")
        self.m = m
        self.ell = ell
        self.sign = sign
        self.base: PathModel = path_model(m, ell, sign)
        self.field = self.base.field
        self._tl: Dict[int, Diagram] = {label.row(2): label for label in self.base.bases}
        dims = {s: len(self.base.bases[label]) for s, label in self._tl.items()}

        blocks: List[SquareBlock] = []
        for s, t in combinations(sorted(dims), 2):
            source = BlockSource(SourceKind.TENSOR, s, t)
            blocks.append(SquareBlock(source, block_label(m, ell, source), dims[s] * dims[t]))
        for s in sorted(dims):
            source = BlockSource(SourceKind.SYM, s)
            blocks.append(SquareBlock(source, block_label(m, ell, source), comb(dims[s] + 1, 2)))
            if dims[s] >= 2:
                source = BlockSource(SourceKind.ALT, s)
                blocks.append(SquareBlock(source, block_label(m, ell, source), comb(dims[s], 2)))
        self.blocks: List[SquareBlock] = sorted(blocks, key=lambda b: b.label)
        self._by_label = {b.label: b for b in self.blocks}
        if len(self._by_label) != len(self.blocks):
            raise ConsistencyError(f"two square blocks share a label at m={m}")
        for block in self.blocks:
            expected = count_osc(m, block.label, ell)
            if expected != block.dim:
                raise ConsistencyError(
                    f"block {block.source} has dim {block.dim} but count_osc({m}, {block.label}) = {expected}"
                )
        self._cache: Dict[Tuple[str, int, int], BlockMatrix] = {}
        self._lock = threading.RLock()
        logger.debug(f"Square model m={m} l={level_text(ell)} blocks={[(str(b.label), b.dim) for b in self.blocks]}")

    @property
    def dims(self) -> Dict[Diagram, int]:
        return {b.label: b.dim for b in self.blocks}

    def block(self, label: Diagram) -> SquareBlock:
        if label not in self._by_label:
            raise NotInGamma(f"{label} labels no block of the square at m={self.m}, l={level_text(self.ell)}")
        return self._by_label[label]

    @property
    def x(self):
        return self.field.qint(2) ** 2

    @property
    def r(self):
        return self.field.q_power(3)

    def identity(self) -> BlockMatrix:
        return BlockMatrix.identity(self.dims, self.field)

    def lift(self, element: BlockMatrix) -> BlockMatrix:
        """a -> a (x) a, written block by block"""
        blocks = {}
        for block in self.blocks:
            src = block.source
            left = element.blocks[self._tl[src.s]]
            if src.kind == SourceKind.TENSOR:
                blocks[block.label] = kron(left, element.blocks[self._tl[src.t]])
            elif src.kind == SourceKind.SYM:
                blocks[block.label] = sym_square(left, self.field)
            else:
                blocks[block.label] = alt_square(left, self.field)
        return BlockMatrix(blocks, self.field)

    def _cached(self, key, build) -> BlockMatrix:
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def G(self, i: int, twist_power: int = 1) -> BlockMatrix:
        return self._cached(("G", i, twist_power),
                            lambda: self.lift(self.base.g(i)).scale(self.field.q_power(twist_power)))

    def G_inv(self, i: int, twist_power: int = 1) -> BlockMatrix:
        return self._cached(("G_inv", i, twist_power),
                            lambda: self.lift(self.base.g_inv(i)).scale(self.field.q_power(-twist_power)))

    def E(self, i: int) -> BlockMatrix:
        return self._cached(("E", i, 1), lambda: self.lift(self.base.e(i)).scale(self.x))

    def letter(self, letter: int, twist_power: int = 1) -> BlockMatrix:
        return self.G(letter, twist_power) if letter > 0 else self.G_inv(-letter, twist_power)

    def phi(self, word: BraidWord) -> BlockMatrix:
        """Phi(beta) = q^e(beta) lift(rho(beta))"""
        if word.strands != self.m:
            raise InvalidInput(f"word on {word.strands} strands used at m={self.m}")
        rho = self.base.identity()
        for letter in word.letters:
            rho = rho @ self.base.letter(letter)
        return self.lift(rho).scale(self.field.q_power(word.exponent_sum))

    def weights(self) -> Dict[Diagram, object]:
        tl_weights = self.base.weights()
        found = {}
        for block in self.blocks:
            w_s = tl_weights[self._tl[block.source.s]]
            if block.source.kind == SourceKind.TENSOR:
                found[block.label] = self.field.from_int(2) * w_s * tl_weights[self._tl[block.source.t]]
            else:
                found[block.label] = w_s * w_s
        return found

    def trace(self, element: BlockMatrix):
        weights = self.weights()
        total = self.field.zero
        for label, value in element.block_traces().items():
            total = total + weights[label] * value
        return total


@lru_cache(maxsize=32)
def build_square(m: int, ell: Level, sign: int = 1) -> SquareRep:
    return SquareRep(m, ell, sign)


def square_trace(element: BlockMatrix, rep: SquareRep):
    return rep.trace(element)


# -- relation suites -----------------------------------------------------------


def _random_square_element(rep: SquareRep, rng: random.Random, strands: int, length: int) -> BlockMatrix:
    element = rep.identity()
    if strands < 2:
        return element
    for _ in range(length):
        i = rng.randint(1, strands - 1)
        choice = rng.randrange(3)
        element = element @ (rep.E(i) if choice == 2 else rep.letter(i if choice == 0 else -i))
    return element


def verify_trace_axioms(m: int, ell: Level, samples: int = 3, seed: int = 0) -> Dict[str, bool]:
    """tr^2 o Phi against the five defining properties of the BMW Markov trace"""
    rep = build_square(m, ell)
    f = rep.field
    rng = random.Random(seed)
    report = {"trace_one": rep.trace(rep.identity()) == f.one}

    cyclic = True
    for _ in range(samples):
        a = rep.phi(random_word(rng, m, 4)) if m > 1 else rep.identity()
        b = rep.phi(random_word(rng, m, 4)) if m > 1 else rep.identity()
        cyclic = cyclic and rep.trace(a @ b) == rep.trace(b @ a)
    report["trace_cyclic"] = cyclic

    if m >= 2:
        inv_x = rep.x ** -1
        gens = range(1, m)
        report["trace_E"] = all(rep.trace(rep.E(i)) == inv_x for i in gens)
        report["trace_G"] = all(rep.trace(rep.G(i)) == rep.r * inv_x for i in gens)
        report["trace_G_inv"] = all(rep.trace(rep.G_inv(i)) == rep.r ** -1 * inv_x for i in gens)
        markov = True
        for chi in (rep.G(m - 1), rep.G_inv(m - 1), rep.E(m - 1)):
            chi_trace = rep.trace(chi)
            for _ in range(samples):
                a = _random_square_element(rep, rng, m - 1, 3)
                b = _random_square_element(rep, rng, m - 1, 3)
                markov = markov and rep.trace(a @ chi @ b) == chi_trace * rep.trace(a @ b)
        report["trace_markov"] = markov
    return report


def verify_bmw_relations(
    m: int, ell: Level, samples: int = 3, seed: int = 0, twist_power: int = 1
) -> Dict[str, bool]:
    """
    Cubic relation, the E~ definition, the tangle relation and braid relations
    for G~ = q^twist_power (g (x) g), followed by the trace axioms of tr^2.
    twist_power != 1 is a negative control.
    """
    rep = build_square(m, ell)
    f = rep.field
    q, q_inv, r = f.q_power(1), f.q_power(-1), rep.r
    one = rep.identity()
    gens = range(1, m)
    G = lambda i: rep.G(i, twist_power)
    G_inv = lambda i: rep.G_inv(i, twist_power)
    report: Dict[str, bool] = {}

    report["R1"] = all(
        (G(i).plus_scalar(-(r ** -1)) @ G(i).plus_scalar(-q) @ G(i).plus_scalar(q_inv)).is_zero() for i in gens
    )
    report["inverse"] = all((G(i) @ G_inv(i)).equals(one) for i in gens)
    report["E"] = all(
        (one - rep.E(i)).scale(q - q_inv).equals(G(i) - G_inv(i)) for i in gens
    )
    neighbours = [(i, j) for i in gens for j in gens if abs(i - j) == 1]
    report["R2"] = all(
        (rep.E(i) @ G(j) @ rep.E(i)).equals(rep.E(i).scale(r))
        and (rep.E(i) @ G_inv(j) @ rep.E(i)).equals(rep.E(i).scale(r ** -1))
        for i, j in neighbours
    )
    report["B1"] = all(
        (G(i) @ G(i + 1) @ G(i)).equals(G(i + 1) @ G(i) @ G(i + 1)) for i in range(1, m - 1)
    )
    report["B2"] = all(
        (G(i) @ G(j)).equals(G(j) @ G(i)) for i in gens for j in gens if abs(i - j) >= 2
    )
    if twist_power == 1:
        report.update(verify_trace_axioms(m, ell, samples=samples, seed=seed))
    logger.debug(f"BMW relations m={m} l={level_text(ell)} twist={twist_power}: {report}")
    return report


# -- dimension audit -----------------------------------------------------------


@dataclass(frozen=True)
class AuditRow:
    label: Diagram
    source: BlockSource
    dim: int
    osc_count: int


@dataclass(frozen=True)
class DimAudit:
    m: int
    ell: Level
    osc_total: int
    tl_total: int
    block_total: int
    rows: Tuple[AuditRow, ...]

    @property
    def agrees(self) -> bool:
        labels_ok = all(row.dim == row.osc_count for row in self.rows)
        return labels_ok and self.osc_total == self.tl_total == self.block_total


def _osc_labels(m: int, ell: Level) -> List[Diagram]:
    return [nu for nu in gamma_set(ell, max_size=m) if (m - nu.size) % 2 == 0]


def dim_audit(m: int, ell: Level) -> DimAudit:
    osc_total = sum(count_osc(m, nu, ell) ** 2 for nu in _osc_labels(m, ell))
    tl_dims = [count_tableaux(label, ell) for label in lambda_set(m, ell)]
    tl_total = sum((a * b) ** 2 for a, b in combinations(tl_dims, 2))
    tl_total += sum(comb(d + 1, 2) ** 2 + comb(d, 2) ** 2 for d in tl_dims)
    if m == 0:
        # no strands: the single SYM block on the empty diagram
        source = BlockSource(SourceKind.SYM, 0)
        label = block_label(0, ell, source)
        rows = (AuditRow(label, source, 1, count_osc(0, label, ell)),)
    else:
        rep = build_square(m, ell)
        rows = tuple(AuditRow(b.label, b.source, b.dim, count_osc(m, b.label, ell)) for b in rep.blocks)
    block_total = sum(row.dim ** 2 for row in rows)
    audit = DimAudit(m, ell, osc_total, tl_total, block_total, rows)
    logger.info(f"Dimension audit m={m} l={level_text(ell)}: {osc_total} / {tl_total} / {block_total}")
    return audit


# -- generated algebra ---------------------------------------------------------


@dataclass(frozen=True)
class SpanResult:
    dimension: int
    upper_bound: int
    prime: int
    point: int

    @property
    def certified(self) -> bool:
        return self.dimension == self.upper_bound


def _prime_and_point(ell: Level, floor: int) -> Tuple[int, int]:
    if not is_finite(ell):
        return int(nextprime(floor)), 2
    n = 2 * int(ell)
    candidate = nextprime(floor)
    while (candidate - 1) % n:
        candidate = nextprime(candidate)
    point = pow(int(primitive_root(candidate)), (candidate - 1) // n, candidate)
    return int(candidate), point


class _RowReducer:
    """Fully reduced row-echelon basis over F_p"""

    def __init__(self, width: int, prime: int):
        self.prime = prime
        self.rows = np.zeros((0, width), dtype=np.int64)
        self.pivots: List[int] = []

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        if not self.pivots:
            return vector % self.prime
        coefficients = vector[self.pivots] % self.prime
        return (vector - coefficients @ self.rows) % self.prime

    def add(self, vector: np.ndarray) -> bool:
        reduced = self.reduce(vector)
        nonzero = np.flatnonzero(reduced)
        if nonzero.size == 0:
            return False
        pivot = int(nonzero[0])
        reduced = reduced * pow(int(reduced[pivot]), -1, self.prime) % self.prime
        if self.pivots:
            column = self.rows[:, pivot].copy()
            self.rows = (self.rows - np.outer(column, reduced) % self.prime) % self.prime
        self.rows = np.vstack([self.rows, reduced])
        self.pivots.append(pivot)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _reduce_blocks(element: BlockMatrix, rep: SquareRep, prime: int, point: int) -> Dict[Diagram, np.ndarray]:
    reduced = {}
    for label, block in element.blocks.items():
        values = [rep.field.reduce_mod(v, prime, point) for v in block.flat]
        reduced[label] = np.array(values, dtype=np.int64).reshape(block.shape)
    return reduced


def generated_dimension(m: int, ell: Level, prime_floor: int = 1 << 20) -> SpanResult:
    """Dimension of the algebra generated by the G~_i, by span closure mod p"""
    rep = build_square(m, ell)
    upper = sum(b.dim ** 2 for b in rep.blocks)
    prime, point = _prime_and_point(ell, prime_floor)
    try:
        generators = [_reduce_blocks(rep.G(i), rep, prime, point) for i in range(1, m)]
    except DenominatorVanishes:
        logger.warning(f"q={point} is a pole mod {prime}; retrying above it")
        return generated_dimension(m, ell, prime + 1)

    labels = [b.label for b in rep.blocks]

    def flatten(blocks: Dict[Diagram, np.ndarray]) -> np.ndarray:
        return np.concatenate([blocks[label].ravel() for label in labels])

    def multiply(left: Dict[Diagram, np.ndarray], right: Dict[Diagram, np.ndarray]) -> Dict[Diagram, np.ndarray]:
        return {label: left[label] @ right[label] % prime for label in labels}

    identity = {label: np.eye(rep.dims[label], dtype=np.int64) for label in labels}
    reducer = _RowReducer(upper, prime)
    reducer.add(flatten(identity))
    frontier = [identity]
    while frontier:
        following = []
        for element in frontier:
            for generator in generators:
                product = multiply(element, generator)
                if reducer.add(flatten(product)):
                    following.append(product)
        frontier = following
        logger.debug(f"span closure m={m} l={level_text(ell)}: rank {reducer.rank}")
    return SpanResult(reducer.rank, upper, prime, point)
