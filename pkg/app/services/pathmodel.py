"""
Path-model representations of the Temperley-Lieb quotients.

Basis vectors of the block labelled [m-p, p] are the restricted tableaux of that
shape. e_i only touches level i of a path: when levels i-1 and i+1 differ by one
box in each row, the entry from path p to the path p' with middle shape mu' is

    [d(mu')] / ([d(sigma)] [2]),   sigma = lambda^(i-1),  d([a,b]) = a - b + 1,

so e_i is a rank-one idempotent on each two-dimensional (or one-dimensional)
local space and e_i e_{i+-1} e_i = e_i / [2]^2.
"""

import logging
import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.core.exceptions import ConsistencyError, IndexOutOfRange
from app.services.braid_words import BraidWord
from app.services.coeff import GenericField, RootOfUnityField
from app.services.diagrams import (
    Diagram, Level, adjacent, gamma_set, is_finite, lambda_set, level_text, require_level,
)
from app.services.tableaux import Tableau2Row, count_osc, count_tableaux, enum_tableaux

logger = logging.getLogger(__name__)


def field_for(ell: Level, sign: int = 1):
    if not is_finite(ell):
        return GenericField()
    return RootOfUnityField(int(ell), sign)


def _d(shape: Diagram) -> int:
    return shape.row(1) - shape.row(2) + 1


# -- block matrices ------------------------------------------------------------


class BlockMatrix:
    """Block-diagonal matrix over a coefficient field, blocks keyed by label"""

    __slots__ = ("blocks", "field")

    def __init__(self, blocks: Dict[Diagram, np.ndarray], field):
        self.blocks = dict(sorted(blocks.items()))
        self.field = field

    @classmethod
    def zeros(cls, dims: Dict[Diagram, int], field) -> "BlockMatrix":
        blocks = {}
        for label, dim in dims.items():
            block = np.empty((dim, dim), dtype=object)
            block.fill(field.zero)
            blocks[label] = block
        return cls(blocks, field)

    @classmethod
    def identity(cls, dims: Dict[Diagram, int], field) -> "BlockMatrix":
        result = cls.zeros(dims, field)
        for block in result.blocks.values():
            for k in range(block.shape[0]):
                block[k, k] = field.one
        return result

    @property
    def dims(self) -> Dict[Diagram, int]:
        return {label: block.shape[0] for label, block in self.blocks.items()}

    def _check_shape(self, other: "BlockMatrix") -> None:
        if self.dims != other.dims:
            raise ConsistencyError("block structures differ")

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check_shape(other)
        return BlockMatrix({k: np.dot(v, other.blocks[k]) for k, v in self.blocks.items()}, self.field)

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check_shape(other)
        return BlockMatrix({k: v + other.blocks[k] for k, v in self.blocks.items()}, self.field)

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check_shape(other)
        return BlockMatrix({k: v - other.blocks[k] for k, v in self.blocks.items()}, self.field)

    def __neg__(self) -> "BlockMatrix":
        return BlockMatrix({k: -v for k, v in self.blocks.items()}, self.field)

    def scale(self, scalar) -> "BlockMatrix":
        return BlockMatrix({k: v * scalar for k, v in self.blocks.items()}, self.field)

    def plus_scalar(self, scalar) -> "BlockMatrix":
        """self + scalar * 1"""
        return self + BlockMatrix.identity(self.dims, self.field).scale(scalar)

    def equals(self, other: "BlockMatrix") -> bool:
        if self.dims != other.dims:
            return False
        return all(
            x == y for k, v in self.blocks.items() for x, y in zip(v.flat, other.blocks[k].flat)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for v in self.blocks.values() for x in v.flat)

    def block_traces(self) -> Dict[Diagram, object]:
        traces = {}
        for label, block in self.blocks.items():
            total = self.field.zero
            for k in range(block.shape[0]):
                total = total + block[k, k]
            traces[label] = total
        return traces

    def map_blocks(self, fn: Callable[[Diagram, np.ndarray], np.ndarray]) -> "BlockMatrix":
        return BlockMatrix({k: fn(k, v) for k, v in self.blocks.items()}, self.field)

    def __repr__(self):
        return f"BlockMatrix({', '.join(f'{k}:{v.shape[0]}' for k, v in self.blocks.items())})"


# -- Bratteli diagrams ---------------------------------------------------------


@dataclass(frozen=True)
class BratteliDiagram:
    kind: str
    ell: Level
    levels: Tuple[Tuple[Diagram, ...], ...]
    edges: Tuple[Tuple[Tuple[Diagram, Diagram], ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def path_counts(self) -> List[Dict[Diagram, int]]:
        counts = [{d: 1 for d in self.levels[0]}]
        for j, edges in enumerate(self.edges):
            level: Dict[Diagram, int] = {d: 0 for d in self.levels[j + 1]}
            for lower, upper in edges:
                level[upper] += counts[j].get(lower, 0)
            counts.append(level)
        return counts


def tl_bratteli(m: int, ell: Level) -> BratteliDiagram:
    require_level(ell, 3)
    levels = tuple(tuple(lambda_set(j, ell)) for j in range(m + 1))
    edges = []
    for j in range(m):
        upper = set(levels[j + 1])
        edges.append(tuple((d, child) for d in levels[j] for child in d.grow() if child in upper))
    return BratteliDiagram("TL", ell, levels, tuple(edges))


def bmw_bratteli(m: int, ell: Level) -> BratteliDiagram:
    """Gamma(l)-restricted Bratteli diagram; edges add or remove one box"""
    universe = gamma_set(ell, max_size=m)
    levels = tuple(
        tuple(d for d in universe if d.size <= j and (j - d.size) % 2 == 0) for j in range(m + 1)
    )
    edges = []
    for j in range(m):
        edges.append(tuple((d, e) for d in levels[j] for e in levels[j + 1] if adjacent(d, e)))
    return BratteliDiagram("BMW", ell, levels, tuple(edges))


# -- the path model ------------------------------------------------------------


class PathModel:
    """Restricted path representation of T_m (semisimple quotient for finite l)"""

    def __init__(self, m: int, ell: Level, sign: int = 1):
        require_level(ell, 3)
        if m < 1:
            raise IndexOutOfRange(f"path models need m >= 1, got {m}")
        self.m = m
        self.ell = ell
        self.sign = sign
        self.field = field_for(ell, sign)
        self.labels: List[Diagram] = lambda_set(m, ell)
        self.bases: Dict[Diagram, List[Tableau2Row]] = {}
        for label in self.labels:
            basis = enum_tableaux(label, ell)
            if basis:
                self.bases[label] = basis
        self._index = {label: {t.steps: k for k, t in enumerate(basis)} for label, basis in self.bases.items()}
        self._cache: Dict[Tuple[str, int], BlockMatrix] = {}
        self._lock = threading.RLock()
        self._scalars: Dict[int, object] = {}
        logger.debug(f"Path model m={m} l={level_text(ell)} dims={self.dims}")

    @property
    def dims(self) -> Dict[Diagram, int]:
        return {label: len(basis) for label, basis in self.bases.items()}

    def _qint(self, n: int):
        if n not in self._scalars:
            if is_finite(self.ell) and n % int(self.ell) == 0:
                raise ConsistencyError(f"[{n}] vanishes at l={level_text(self.ell)}")
            self._scalars[n] = self.field.qint(n)
        return self._scalars[n]

    def identity(self) -> BlockMatrix:
        return BlockMatrix.identity(self.dims, self.field)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.m - 1:
            raise IndexOutOfRange(f"generator index {i} outside 1..{self.m - 1}")

    def _build_e(self, i: int) -> BlockMatrix:
        result = BlockMatrix.zeros(self.dims, self.field)
        two = self._qint(2)
        for label, basis in self.bases.items():
            block = result.blocks[label]
            index = self._index[label]
            for col, path in enumerate(basis):
                local = path.steps[i - 1:i + 1]
                if local not in ("12", "21"):
                    continue
                sigma = path.shapes()[i - 1]
                scale = self._qint(_d(sigma)) * two
                for replacement, middle_d in (("12", _d(sigma) + 1), ("21", _d(sigma) - 1)):
                    row = index.get(path.steps[:i - 1] + replacement + path.steps[i + 1:])
                    if row is None or middle_d < 1:
                        continue
                    block[row, col] = self._qint(middle_d) / scale
        return result

    def _cached(self, key: Tuple[str, int], build: Callable[[], BlockMatrix]) -> BlockMatrix:
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def e(self, i: int) -> BlockMatrix:
        self._check_index(i)
        return self._cached(("e", i), lambda: self._build_e(i))

    def g(self, i: int) -> BlockMatrix:
        """g_i = (1 + q^-2) e_i - 1"""
        self._check_index(i)
        coefficient = self.field.one + self.field.q_power(-2)
        return self._cached(("g", i), lambda: self.e(i).scale(coefficient).plus_scalar(-self.field.one))

    def g_inv(self, i: int) -> BlockMatrix:
        """g_i^-1 = (q^2 + 1) e_i - 1"""
        self._check_index(i)
        coefficient = self.field.one + self.field.q_power(2)
        return self._cached(("g_inv", i), lambda: self.e(i).scale(coefficient).plus_scalar(-self.field.one))

    def letter(self, letter: int) -> BlockMatrix:
        return self.g(letter) if letter > 0 else self.g_inv(-letter)

    def weights(self) -> Dict[Diagram, object]:
        denominator = self._qint(2) ** self.m
        return {label: self._qint(_d(label)) / denominator for label in self.bases}

    def trace(self, x: BlockMatrix):
        weights = self.weights()
        total = self.field.zero
        for label, value in x.block_traces().items():
            total = total + weights[label] * value
        return total

    def embed(self, x: BlockMatrix, smaller: "PathModel") -> BlockMatrix:
        """Image of an element of T_{m-1} under the inclusion T_{m-1} -> T_m"""
        if smaller.m != self.m - 1:
            raise ConsistencyError("embedding needs consecutive sizes")
        result = BlockMatrix.zeros(self.dims, self.field)
        for label, basis in self.bases.items():
            block = result.blocks[label]
            index = self._index[label]
            for col, path in enumerate(basis):
                prefix = Tableau2Row(path.steps[:-1])
                source = smaller.bases[prefix.shape]
                source_col = smaller._index[prefix.shape][prefix.steps]
                for source_row, other in enumerate(source):
                    row = index[other.steps + path.steps[-1]]
                    block[row, col] = x.blocks[prefix.shape][source_row, source_col]
        return result


@lru_cache(maxsize=64)
def path_model(m: int, ell: Level, sign: int = 1) -> PathModel:
    return PathModel(m, ell, sign)


def tl_generator(m: int, i: int, ell: Level, sign: int = 1) -> BlockMatrix:
    return path_model(m, ell, sign).e(i)


def represent_word(word: BraidWord, ell: Level, sign: int = 1) -> BlockMatrix:
    """Product of g_i^(+-1) over the word, left to right"""
    model = path_model(word.strands, ell, sign)
    result = model.identity()
    for letter in word.letters:
        result = result @ model.letter(letter)
    return result


def markov_trace(x: BlockMatrix, m: int, ell: Level, sign: int = 1):
    return path_model(m, ell, sign).trace(x)


# -- relation suite ------------------------------------------------------------


def restriction_check(m: int, ell: Level) -> bool:
    """Dropping the last step maps each block basis onto its predecessor blocks"""
    model = path_model(m, ell)
    if m == 1:
        return True
    smaller = path_model(m - 1, ell)
    for label, basis in model.bases.items():
        truncated = sorted(t.steps[:-1] for t in basis)
        expected = sorted(
            t.steps for lower in smaller.bases if label in set(lower.grow()) for t in smaller.bases[lower]
        )
        if truncated != expected:
            return False
    return True


def _random_element(model: PathModel, rng: random.Random, words: int = 3, length: int = 4) -> BlockMatrix:
    total = BlockMatrix.zeros(model.dims, model.field)
    for _ in range(words):
        term = model.identity()
        for _ in range(length if model.m > 1 else 0):
            i = rng.randint(1, model.m - 1)
            term = term @ (model.e(i) if rng.random() < 0.5 else model.letter(rng.choice((1, -1)) * i))
        total = total + term.scale(model.field.from_int(rng.randint(-3, 3)))
    return total


def verify_tl_relations(m: int, ell: Level, samples: int = 5, seed: int = 0) -> Dict[str, bool]:
    model = path_model(m, ell)
    f = model.field
    one = model.identity()
    inv_square = f.qint(2) ** -2
    report: Dict[str, bool] = {}
    gens = range(1, m)
    pairs = [(i, j) for i in gens for j in gens if abs(i - j) == 1]
    far = [(i, j) for i in gens for j in gens if abs(i - j) >= 2]

    report["T1"] = all(
        (model.e(i) @ model.e(j) @ model.e(i)).equals(model.e(i).scale(inv_square)) for i, j in pairs
    )
    report["T2"] = all((model.e(i) @ model.e(j)).equals(model.e(j) @ model.e(i)) for i, j in far)
    report["H"] = all((model.e(i) @ model.e(i)).equals(model.e(i)) for i in gens)
    report["B1"] = all(
        (model.g(i) @ model.g(i + 1) @ model.g(i)).equals(model.g(i + 1) @ model.g(i) @ model.g(i + 1))
        for i in range(1, m - 1)
    )
    report["B2"] = all((model.g(i) @ model.g(j)).equals(model.g(j) @ model.g(i)) for i, j in far)
    report["T3"] = all((model.g(i) @ model.g_inv(i)).equals(one) for i in gens)
    report["T4"] = all((model.g(i) @ model.e(i)).equals(model.e(i).scale(f.q_power(-2))) for i in gens)
    t5_scalar = -(f.one + f.q_power(-2)) ** -1
    report["T5"] = all(
        (model.e(i) @ model.g(j) @ model.e(i)).equals(model.e(i).scale(t5_scalar)) for i, j in pairs
    )
    report["T6"] = all(
        (model.g(i) @ model.g(j) @ model.g(i) + model.g(i) @ model.g(j) + model.g(j) @ model.g(i)
         + model.g(i) + model.g(j) + one).is_zero()
        for i, j in pairs
    )
    report["T7"] = all(
        (model.g(i).plus_scalar(f.one) @ model.g(i).plus_scalar(-f.q_power(-2))).is_zero() for i in gens
    )

    rng = random.Random(seed)
    report["M1"] = model.trace(one) == f.one
    m2 = True
    for _ in range(samples):
        a, b = _random_element(model, rng), _random_element(model, rng)
        m2 = m2 and model.trace(a @ b) == model.trace(b @ a)
    report["M2"] = m2
    if m >= 2:
        smaller = path_model(m - 1, ell)
        m3 = True
        for _ in range(samples):
            a = _random_element(smaller, rng)
            lifted = model.embed(a, smaller)
            m3 = m3 and model.trace(lifted @ model.e(m - 1)) == smaller.trace(a) * inv_square
        report["M3"] = m3
    report["dimensions"] = all(count_tableaux(label, ell) == dim for label, dim in model.dims.items())
    report["restriction"] = restriction_check(m, ell)
    return report


def bmw_level_counts(m: int, ell: Level) -> Dict[Diagram, int]:
    """Top-level path counts of the BMW Bratteli diagram, cross-checked against count_osc"""
    counts = bmw_bratteli(m, ell).path_counts()[m]
    for label, value in counts.items():
        if value != count_osc(m, label, ell):
            raise ConsistencyError(f"Bratteli count for {label} disagrees with count_osc")
    return {label: value for label, value in counts.items() if value}
