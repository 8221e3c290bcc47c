"""
Closed projective images of the braid group in the simple blocks of the
specialized BMW algebra at q = exp(pi i / l), r = q^3.

classify_image walks the classification case ladder; enumerate_projective_group
counts the projective group generated by the G~_i on one block by breadth-first
search over exact cyclotomic-integer matrices.
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from math import gcd, lcm
from typing import List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import IndexOutOfRange, NotInGamma, NotInLambda, UnsupportedLevel
from app.services.coeff import Cyclotomic, cyclotomic_tables
from app.services.diagrams import (
    Diagram, Level, in_gamma, in_lambda, is_finite, require_level, require_parity,
)
from app.services.pathmodel import BlockMatrix
from app.services.squares import build_square
from app.services.tableaux import count_tableaux

logger = logging.getLogger(__name__)


class GroupKind(str, Enum):
    TRIVIAL = "TRIVIAL"
    PSP = "PSP"
    PSP_SEMIDIRECT = "PSP_SEMIDIRECT"
    A5 = "A5"
    A5_X_PSU = "A5_x_PSU"
    PSU = "PSU"
    PSU_X_PSU = "PSU_x_PSU"


@dataclass(frozen=True)
class GroupDescriptor:
    kind: GroupKind
    provenance: str
    rank: int = 0
    dims: Tuple[int, ...] = ()

    @property
    def expected_order(self) -> Optional[int]:
        """None stands for an infinite group"""
        return group_order(self)

    @property
    def is_finite(self) -> bool:
        return self.expected_order is not None

    @property
    def name(self) -> str:
        if self.kind == GroupKind.TRIVIAL:
            return "1"
        if self.kind == GroupKind.PSP:
            return f"PSp_{self.rank}(3)"
        if self.kind == GroupKind.PSP_SEMIDIRECT:
            return f"PSp_{self.rank}(3) x| (Z_3)^{self.rank}"
        if self.kind == GroupKind.A5:
            return "A_5"
        if self.kind == GroupKind.A5_X_PSU:
            return f"A_5 x PSU({self.dims[0]})"
        if self.kind == GroupKind.PSU:
            return f"PSU({self.dims[0]})"
        return " x ".join(f"PSU({d})" for d in self.dims)


def _sp_order(rank: int) -> int:
    k = rank // 2
    order = 3 ** (k * k)
    for i in range(1, k + 1):
        order *= 3 ** (2 * i) - 1
    return order


def group_order(descriptor: GroupDescriptor) -> Optional[int]:
    kind = descriptor.kind
    if kind == GroupKind.TRIVIAL:
        return 1
    if kind == GroupKind.PSP:
        return _sp_order(descriptor.rank) // 2
    if kind == GroupKind.PSP_SEMIDIRECT:
        return _sp_order(descriptor.rank) // 2 * 3 ** descriptor.rank
    if kind == GroupKind.A5:
        return 60
    if kind in (GroupKind.PSU, GroupKind.PSU_X_PSU, GroupKind.A5_X_PSU):
        if all(d <= 1 for d in descriptor.dims):
            return 60 if kind == GroupKind.A5_X_PSU else 1
        return None
    raise ValueError(f"unknown group kind {kind}")


# -- case tables ---------------------------------------------------------------


def _require_image_level(ell: Level) -> int:
    if not is_finite(ell):
        raise UnsupportedLevel("projective images are classified at roots of unity only")
    require_level(ell, 6)
    return int(ell)


def _d(m: int, s: int, ell: int) -> int:
    return count_tableaux(Diagram.of(m - s, s), ell)


def tl_image_group(m: int, s: int, ell: Level) -> GroupDescriptor:
    ell = _require_image_level(ell)
    if m < 3:
        raise IndexOutOfRange(f"Jones representation images need m >= 3, got {m}")
    if s < 0 or m - s < s or not in_lambda(Diagram.of(m - s, s), m, ell):
        raise NotInLambda(f"[{m - s},{s}] is not in Lambda({m}, {ell})")
    d = _d(m, s, ell)
    if d == 1:
        return GroupDescriptor(GroupKind.TRIVIAL, "d=1", dims=(1,))
    if ell == 6 and m % 2:
        return GroupDescriptor(GroupKind.PSP, "a1", rank=m - 1)
    if ell == 6:
        if s == m // 2 - 1:
            return GroupDescriptor(GroupKind.PSP_SEMIDIRECT, "a2", rank=m - 2)
        return GroupDescriptor(GroupKind.PSP, "a2", rank=m - 2)
    if ell == 10 and (m, s) in ((3, 1), (4, 2)):
        return GroupDescriptor(GroupKind.A5, "b")
    return GroupDescriptor(GroupKind.PSU, "c", dims=(d,))


# l = 6, m even: the labels whose sources avoid s = m/2 - 1
_PSP_LABELS_AT_SIX = frozenset(
    Diagram.of(*rows) for rows in ((4,), (4, 1, 1), (1, 1, 1, 1), (2, 2), ())
)


def classify_image(m: int, nu: Diagram, ell: Level) -> GroupDescriptor:
    ell = _require_image_level(ell)
    if m < 1:
        raise IndexOutOfRange(f"m must be positive, got {m}")
    if not in_gamma(nu, ell):
        raise NotInGamma(f"{nu} is not in Gamma({ell})")
    require_parity(m, nu)

    if nu == Diagram.of(m):
        return GroupDescriptor(GroupKind.TRIVIAL, "1")
    if m == 2:
        return GroupDescriptor(GroupKind.TRIVIAL, "2")
    if m == 3 and nu == Diagram.of(1, 1, 1):
        return GroupDescriptor(GroupKind.TRIVIAL, "3")
    if m == 4 and nu == Diagram.of(1, 1, 1, 1):
        return GroupDescriptor(GroupKind.TRIVIAL, "4")
    if ell == 6 and m % 2:
        return GroupDescriptor(GroupKind.PSP, "5", rank=m - 1)
    if ell == 6 and nu in _PSP_LABELS_AT_SIX:
        return GroupDescriptor(GroupKind.PSP, "6", rank=m - 2)
    if ell == 6:
        return GroupDescriptor(GroupKind.PSP_SEMIDIRECT, "7", rank=m - 2)
    if ell == 10 and m == 3 and nu in (Diagram.of(2, 1), Diagram.of(1)):
        return GroupDescriptor(GroupKind.A5, "8")
    if ell == 10 and m == 4 and nu in (Diagram.of(2, 2), Diagram.of()):
        return GroupDescriptor(GroupKind.A5, "9")
    if ell == 10 and m == 4 and nu == Diagram.of(1, 1):
        return GroupDescriptor(GroupKind.A5_X_PSU, "10", dims=(3,))
    if nu.length <= 1:
        return GroupDescriptor(GroupKind.PSU, "11", dims=(_d(m, (m - nu.row(1)) // 2, ell),))
    if nu.length == 3 and nu.row(2) == 1 and nu.row(3) == 1:
        return GroupDescriptor(GroupKind.PSU, "12", dims=(_d(m, (m - nu.row(1)) // 2, ell),))
    if nu == Diagram.of(1, 1, 1, 1):
        return GroupDescriptor(GroupKind.PSU, "13", dims=(_d(m, m // 2, ell),))
    first = (m - nu.row(1) + nu.row(2)) // 2
    second = (m - nu.row(1) - nu.row(2)) // 2
    return GroupDescriptor(GroupKind.PSU_X_PSU, "GENERIC", dims=(_d(m, first, ell), _d(m, second, ell)))


# -- projective group enumeration ----------------------------------------------


class _IntegerCyclotomics:
    """Matrices over Z[zeta_n] stored as integer arrays of shape (d, d, phi(n))"""

    SAFE = 1 << 62

    def __init__(self, conductor: int):
        tables = cyclotomic_tables(conductor)
        self.conductor = conductor
        self.phi = tables.phi
        reduction = np.zeros((self.phi, self.phi, self.phi), dtype=np.int64)
        for a in range(self.phi):
            for b in range(self.phi):
                reduction[a, b, :] = tables.powers[a + b]
        self.reduction = reduction
        self.reduction_bound = int(np.abs(reduction).max())

    def _dtype_for(self, left: np.ndarray, right: np.ndarray, inner: int):
        bound = int(np.abs(left).max()) * int(np.abs(right).max()) * inner * self.phi * self.phi
        bound *= max(self.reduction_bound, 1)
        return np.int64 if bound < self.SAFE else object

    def multiply(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        dtype = self._dtype_for(left, right, left.shape[1])
        a, b = left.astype(dtype), right.astype(dtype)
        # (i, j, x) . (j, k, y) -> (i, x, k, y) -> (i, k, z)
        outer = np.tensordot(a, b, axes=([1], [0]))
        return np.tensordot(outer, self.reduction.astype(dtype), axes=([1, 3], [0, 1]))

    def scale(self, matrix: np.ndarray, scalar: List[int]) -> np.ndarray:
        """matrix * scalar for a single cyclotomic integer"""
        coefficient = np.tensordot(np.array(scalar, dtype=object), self.reduction.astype(object), axes=([0], [1]))
        return np.tensordot(matrix.astype(object), coefficient, axes=([2], [0]))

    def canonical(self, matrix: np.ndarray) -> np.ndarray:
        """Representative of the projective class: first nonzero entry rational and positive, content 1"""
        flat = matrix.reshape(-1, self.phi)
        lead = next(row for row in flat if any(row))
        if any(lead[1:]):
            cofactor = Cyclotomic(self.conductor, [int(c) for c in lead]).norm_cofactor()
            matrix = self.scale(matrix, [int(c) for c in cofactor.coords])
            flat = matrix.reshape(-1, self.phi)
            lead = next(row for row in flat if any(row))
        content = reduce(gcd, (int(v) for v in matrix.flat if v), 0)
        if int(lead[0]) < 0:
            content = -content
        result = np.array([int(v) // content for v in matrix.flat], dtype=object).reshape(matrix.shape)
        if int(np.abs(result).max()) < (1 << 31):
            return result.astype(np.int64)
        return result


@dataclass
class EnumerationResult:
    order: int
    hit_cap: bool
    budget: int
    dim: int
    elapsed: float
    expected: GroupDescriptor

    @property
    def status(self) -> str:
        if self.hit_cap:
            return "consistent" if not self.expected.is_finite else "inconclusive"
        return "verified" if self.order == self.expected.expected_order else "mismatch"


def _integer_block(block: np.ndarray, conductor: int) -> np.ndarray:
    d = block.shape[0]
    coords = [[list(block[i, k].coords) for k in range(d)] for i in range(d)]
    denominators = [c.denominator for row in coords for entry in row for c in entry]
    scale = reduce(lcm, denominators, 1)
    return np.array(
        [[[int(c * scale) for c in entry] for entry in row] for row in coords], dtype=object
    )


def block_generators(m: int, nu: Diagram, ell: int) -> List[np.ndarray]:
    rep = build_square(m, ell)
    rep.block(nu)
    return [rep.G(i).blocks[nu] for i in range(1, m)]


def enumerate_projective_group(m: int, nu: Diagram, ell: Level, budget: Optional[int] = None) -> EnumerationResult:
    expected = classify_image(m, nu, ell)
    ell = int(ell)
    budget = settings.bfs_budget if budget is None else budget
    started = time.monotonic()
    conductor = 2 * ell
    arithmetic = _IntegerCyclotomics(conductor)
    generators = [arithmetic.canonical(_integer_block(g, conductor)) for g in block_generators(m, nu, ell)]
    dim = generators[0].shape[0] if generators else 1

    identity = np.zeros((dim, dim, arithmetic.phi), dtype=np.int64)
    for k in range(dim):
        identity[k, k, 0] = 1
    seen = {tuple(identity.ravel().tolist())}
    frontier = [identity]
    hit_cap = False
    while frontier and not hit_cap:
        following = []
        for element in frontier:
            for generator in generators:
                product = arithmetic.canonical(arithmetic.multiply(element, generator))
                key = tuple(int(v) for v in product.ravel())
                if key in seen:
                    continue
                seen.add(key)
                following.append(product)
                if len(seen) > budget:
                    hit_cap = True
                    break
            if hit_cap:
                break
        frontier = following
        logger.debug(f"BFS m={m} {nu} l={ell}: {len(seen)} elements, frontier {len(frontier)}")

    result = EnumerationResult(len(seen), hit_cap, budget, dim, time.monotonic() - started, expected)
    logger.info(f"Projective image m={m} {nu} l={ell}: order {result.order} ({result.status}, expected {expected.name})")
    return result


@dataclass(frozen=True)
class EigenvalueCheck:
    divides: bool
    present: Tuple[str, ...]


def half_twist_eigenvalues(m: int, nu: Diagram, ell: Level) -> EigenvalueCheck:
    """Which of q, -q^-1, r^-1 occur as eigenvalues of G~_1 on the nu block"""
    if m < 2:
        raise IndexOutOfRange("a half twist needs at least two strands")
    rep = build_square(m, ell)
    rep.block(nu)
    f = rep.field
    block = BlockMatrix({nu: rep.G(1).blocks[nu]}, f)
    roots = {"q": f.q_power(1), "-q^-1": -f.q_power(-1), "r^-1": rep.r ** -1}
    factors = {name: block.plus_scalar(-value) for name, value in roots.items()}
    names = list(roots)
    divides = (factors[names[0]] @ factors[names[1]] @ factors[names[2]]).is_zero()
    present = []
    for name in names:
        others = [factors[other] for other in names if other != name]
        if not (others[0] @ others[1]).is_zero():
            present.append(name)
    return EigenvalueCheck(divides, tuple(present))
