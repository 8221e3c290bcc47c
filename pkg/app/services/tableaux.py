"""
Restricted Young tableaux and oscillating tableaux.

A Tableau2Row is stored as its step string: digit j says which row receives the
j-th box, so "112" passes through [1], [2], [2,1]. Counts are computed by
level-by-level dynamic programming and always agree with the enumerations.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Tuple

from app.core.exceptions import InvalidOscTableau, NotInGamma, NotInLambda, ParseError, UnsupportedLevel
from app.services.diagrams import (
    EMPTY, Diagram, INF, Level, adjacent, contains, in_gamma, in_lambda, is_finite,
    level_text, require_parity,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tableau2Row:
    steps: str

    def __post_init__(self):
        if any(ch not in "12" for ch in self.steps):
            raise ParseError(f"step string {self.steps!r} must use only 1 and 2")
        first = second = 0
        for ch in self.steps:
            if ch == "1":
                first += 1
            else:
                second += 1
            if second > first:
                raise NotInLambda(f"step string {self.steps!r} leaves the Young lattice")

    @property
    def length(self) -> int:
        return len(self.steps)

    def shapes(self) -> List[Diagram]:
        """lambda^(0), ..., lambda^(m)"""
        first = second = 0
        found = [EMPTY]
        for ch in self.steps:
            if ch == "1":
                first += 1
            else:
                second += 1
            found.append(Diagram.of(first, second))
        return found

    def first_rows(self) -> List[int]:
        """lambda_1^(j) for j = 0..m"""
        return [d.row(1) for d in self.shapes()]

    @property
    def shape(self) -> Diagram:
        return Diagram.of(self.steps.count("1"), self.steps.count("2"))

    def is_valid(self, ell: Level) -> bool:
        return all(in_lambda(d, j, ell) for j, d in enumerate(self.shapes()))

    def __str__(self):
        return self.steps


def tableau_from_shapes(shapes: List[Diagram]) -> Tableau2Row:
    steps = []
    for before, after in zip(shapes, shapes[1:]):
        if after.row(1) == before.row(1) + 1 and after.row(2) == before.row(2):
            steps.append("1")
        elif after.row(2) == before.row(2) + 1 and after.row(1) == before.row(1):
            steps.append("2")
        else:
            raise NotInLambda(f"{before} -> {after} is not a single box in the first two rows")
    return Tableau2Row("".join(steps))


@dataclass(frozen=True)
class OscTableau:
    shapes: Tuple[Diagram, ...]

    def __post_init__(self):
        if not self.shapes or self.shapes[0] != EMPTY:
            raise InvalidOscTableau("an oscillating tableau starts at the empty diagram")
        for j, (before, after) in enumerate(zip(self.shapes, self.shapes[1:]), start=1):
            if not adjacent(before, after):
                raise InvalidOscTableau(f"step {j}: {before} and {after} are not adjacent")

    @property
    def length(self) -> int:
        return len(self.shapes) - 1

    @property
    def shape(self) -> Diagram:
        return self.shapes[-1]

    def is_valid(self, ell: Level) -> bool:
        return all(in_gamma(d, ell) for d in self.shapes)

    def __str__(self):
        return ";".join(str(d) for d in self.shapes)


def _require_lambda(shape: Diagram, ell: Level) -> None:
    if not in_lambda(shape, shape.size, ell):
        raise NotInLambda(f"{shape} is not in Lambda({shape.size}, {level_text(ell)})")


def _require_gamma_target(m: int, shape: Diagram, ell: Level) -> None:
    if not in_gamma(shape, ell):
        raise NotInGamma(f"{shape} is not in Gamma({level_text(ell)})")
    require_parity(m, shape)


@lru_cache(maxsize=4096)
def count_tableaux(shape: Diagram, ell: Level) -> int:
    _require_lambda(shape, ell)
    level: Dict[Diagram, int] = {EMPTY: 1}
    for j in range(1, shape.size + 1):
        following: Dict[Diagram, int] = {}
        for d, paths in level.items():
            for child in d.grow():
                if contains(shape, child) and in_lambda(child, j, ell):
                    following[child] = following.get(child, 0) + paths
        level = following
    return level.get(shape, 0)


def enum_tableaux(shape: Diagram, ell: Level) -> List[Tableau2Row]:
    """T_l(shape) in lexicographic order of step strings"""
    _require_lambda(shape, ell)
    found: List[Tableau2Row] = []

    def walk(current: Diagram, steps: str) -> None:
        j = len(steps)
        if j == shape.size:
            found.append(Tableau2Row(steps))
            return
        for digit, child in (("1", Diagram.of(current.row(1) + 1, current.row(2))),
                             ("2", Diagram.of(current.row(1), current.row(2) + 1))):
            if child.row(2) <= child.row(1) and contains(shape, child) and in_lambda(child, j + 1, ell):
                walk(child, steps + digit)

    walk(EMPTY, "")
    return found


def _osc_children(current: Diagram, target: Diagram, remaining: int, ell: Level) -> Iterator[Diagram]:
    """Admissible next shapes: removals before additions, row-lex within each"""
    for child in sorted(current.shrink()):
        if abs(child.size - target.size) <= remaining and in_gamma(child, ell):
            yield child
    for child in sorted(current.grow()):
        if abs(child.size - target.size) <= remaining and in_gamma(child, ell):
            yield child


@lru_cache(maxsize=4096)
def count_osc(m: int, shape: Diagram, ell: Level) -> int:
    _require_gamma_target(m, shape, ell)
    level: Dict[Diagram, int] = {EMPTY: 1}
    for j in range(1, m + 1):
        following: Dict[Diagram, int] = {}
        for d, paths in level.items():
            for child in _osc_children(d, shape, m - j, ell):
                following[child] = following.get(child, 0) + paths
        level = following
    return level.get(shape, 0)


def enum_osc(m: int, shape: Diagram, ell: Level) -> List[OscTableau]:
    _require_gamma_target(m, shape, ell)
    found: List[OscTableau] = []

    def walk(path: List[Diagram]) -> None:
        j = len(path) - 1
        if j == m:
            if path[-1] == shape:
                found.append(OscTableau(tuple(path)))
            return
        for child in _osc_children(path[-1], shape, m - j - 1, ell):
            path.append(child)
            walk(path)
            path.pop()

    walk([EMPTY])
    return found


def closed_form_dim(m: int, p: int, ell: Level) -> int:
    """Closed forms for |T_l([m-p, p])| at l = inf and l = 6"""
    if is_finite(ell) and ell != 6:
        raise UnsupportedLevel(f"closed forms exist only for l = 6 and inf, not {level_text(ell)}")
    if p < 0 or m - p < p:
        raise NotInLambda(f"[{m - p},{p}] is not a diagram")
    _require_lambda(Diagram.of(m - p, p), ell)
    if ell == INF:
        return comb(m, p) - (comb(m, p - 1) if p >= 1 else 0)
    if m == 0:
        return 1
    power = 3 ** ((m - 1) // 2)
    gap = m - 2 * p
    if gap in (0, 1):
        return (power + 1) // 2
    if gap == 2:
        return power
    return (power - 1) // 2
