"""
Young diagrams and the restricted label sets.

Lambda(j, l) labels the simple components of the Temperley-Lieb quotients and
Gamma(l) labels those of the BMW quotients; star is the involution on Gamma(l)
that replaces the first column length c by 4 - c.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple, Union

from sympy.utilities.iterables import partitions

from app.core.exceptions import InvalidInput, LevelTooSmall, NotInGamma, ParityViolation

logger = logging.getLogger(__name__)

INF = math.inf
Level = Union[int, float]


def is_finite(ell: Level) -> bool:
    return not math.isinf(ell)


def level_text(ell: Level) -> str:
    return "inf" if not is_finite(ell) else str(int(ell))


def require_level(ell: Level, minimum: int) -> None:
    if is_finite(ell) and ell < minimum:
        raise LevelTooSmall(f"level {level_text(ell)} is below the minimum {minimum}")


@dataclass(frozen=True, order=True)
class Diagram:
    """Weakly decreasing positive row lengths; () is the empty diagram [0]"""

    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidInput(f"not a Young diagram: {list(self.rows)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, *rows: int) -> "Diagram":
        return cls(tuple(rows))

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> int:
        """1-based row length, 0 past the last row"""
        return self.rows[i - 1] if 0 < i <= len(self.rows) else 0

    @property
    def columns(self) -> Tuple[int, ...]:
        if not self.rows:
            return ()
        return tuple(sum(1 for r in self.rows if r >= c) for c in range(1, self.rows[0] + 1))

    def column(self, i: int) -> int:
        cols = self.columns
        return cols[i - 1] if 0 < i <= len(cols) else 0

    def transpose(self) -> "Diagram":
        return Diagram(self.columns)

    def grow(self) -> Iterator["Diagram"]:
        """Diagrams with one more box, top row first"""
        for i in range(len(self.rows) + 1):
            if i == 0 or self.rows[i - 1] > self.row(i + 1):
                rows = list(self.rows) + [0]
                rows[i] += 1
                yield Diagram(tuple(rows))

    def shrink(self) -> Iterator["Diagram"]:
        """Diagrams with one box fewer, top row first"""
        for i in range(len(self.rows)):
            if self.rows[i] > self.row(i + 2):
                rows = list(self.rows)
                rows[i] -= 1
                yield Diagram(tuple(rows))

    def neighbours(self) -> List["Diagram"]:
        return sorted(set(self.grow()) | set(self.shrink()))

    def __str__(self):
        return "[" + ",".join(str(r) for r in self.rows) + "]"

    def __repr__(self):
        return f"Diagram({self})"


EMPTY = Diagram()


def in_lambda(d: Diagram, j: int, ell: Level) -> bool:
    if d.length > 2 or d.size != j:
        return False
    return d.row(1) - d.row(2) <= ell - 2


def lambda_set(j: int, ell: Level) -> List[Diagram]:
    """Lambda(j, l) in row-lex order"""
    shapes = [Diagram.of(j - p, p) for p in range(j // 2 + 1)]
    return sorted(d for d in shapes if in_lambda(d, j, ell))


def in_gamma(d: Diagram, ell: Level) -> bool:
    require_level(ell, 6)
    if is_finite(ell) and d.rows == (int(ell) - 2, 1, 1):
        return True
    if d.column(1) + d.column(2) > 4:
        return False
    return d.row(1) + d.row(2) <= ell - 2


def _four_row_partitions(n: int) -> Iterator[Diagram]:
    if n == 0:
        yield EMPTY
        return
    for multiplicities in partitions(n, m=4):
        rows: List[int] = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            rows.extend([part] * count)
        yield Diagram(tuple(rows))


def gamma_set(ell: Level, max_size: int = None) -> List[Diagram]:
    """Gamma(l) in row-lex order; INF needs a size bound"""
    require_level(ell, 6)
    if max_size is None:
        if not is_finite(ell):
            raise ValueError("Gamma(inf) is infinite; pass max_size")
        max_size = int(ell)
    found = [d for n in range(max_size + 1) for d in _four_row_partitions(n) if in_gamma(d, ell)]
    return sorted(set(found))


def star(d: Diagram, ell: Level) -> Diagram:
    if not in_gamma(d, ell):
        raise NotInGamma(f"{d} is not in Gamma({level_text(ell)})")
    cols = list(d.columns) or [0]
    cols[0] = 4 - cols[0]
    return Diagram(tuple(c for c in cols if c)).transpose()


def adjacent(d1: Diagram, d2: Diagram) -> bool:
    if abs(d1.size - d2.size) != 1:
        return False
    small, big = (d1, d2) if d1.size < d2.size else (d2, d1)
    return big in set(small.grow())


def contains(outer: Diagram, inner: Diagram) -> bool:
    return all(outer.row(i) >= inner.row(i) for i in range(1, inner.length + 1))


def require_parity(m: int, d: Diagram) -> None:
    gap = m - d.size
    if gap < 0 or gap % 2:
        raise ParityViolation(f"{m} - |{d}| = {gap} is not a non-negative even integer")


def predecessors(m: int, d: Diagram, ell: Level) -> List[Diagram]:
    """P(m, d): the level m-1 neighbours of d inside Gamma(l)"""
    if not in_gamma(d, ell):
        raise NotInGamma(f"{d} is not in Gamma({level_text(ell)})")
    require_parity(m, d)
    found = []
    for nu in d.neighbours():
        gap = (m - 1) - nu.size
        if gap >= 0 and gap % 2 == 0 and in_gamma(nu, ell):
            found.append(nu)
    return found
