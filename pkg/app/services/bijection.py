"""
The bijection between pairs of restricted two-row tableaux and restricted
oscillating tableaux.

Level j of the oscillating tableau is [f, g] = [a + b - j, |a - b|] where a, b
are the first-row lengths of the two tableaux at level j, reflected by star
whenever the most recent nonzero sign of a - b is negative.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from app.core.exceptions import (
    ConsistencyError, InvalidInput, InvalidOscTableau, NotInLambda, OrderViolation, ShapeMismatch,
)
from app.services.diagrams import Diagram, Level, in_gamma, in_lambda, level_text, star
from app.services.tableaux import OscTableau, Tableau2Row, tableau_from_shapes

logger = logging.getLogger(__name__)


class Comparison(str, Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@dataclass(frozen=True)
class SignTrack:
    """s^(j) and the anchor m_j for j = 0..m"""

    signs: Tuple[int, ...]
    anchors: Tuple[int, ...]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sign_track(t_lambda: Tableau2Row, t_mu: Tableau2Row) -> SignTrack:
    a, b = t_lambda.first_rows(), t_mu.first_rows()
    signs, anchors = [1], [0]
    anchor = 0
    for j in range(1, len(a)):
        if a[j] != b[j]:
            anchor = j
        anchors.append(anchor)
        signs.append(1 if anchor == 0 else _sign(a[anchor] - b[anchor]))
    return SignTrack(tuple(signs), tuple(anchors))


def compare(t_lambda: Tableau2Row, t_mu: Tableau2Row) -> Comparison:
    """
    Lexicographic order on (lambda_1^(m), ..., lambda_1^(1)), the first-row
    lengths read from the last step back. This is not the dominance order.
    """
    if t_lambda.length != t_mu.length:
        raise ShapeMismatch(f"tableaux of lengths {t_lambda.length} and {t_mu.length}")
    left = list(reversed(t_lambda.first_rows()[1:]))
    right = list(reversed(t_mu.first_rows()[1:]))
    if left > right:
        return Comparison.GT
    if left < right:
        return Comparison.LT
    return Comparison.EQ


def _require_restricted(t: Tableau2Row, ell: Level) -> None:
    if not t.is_valid(ell):
        raise NotInLambda(f"tableau {t} leaves Lambda(., {level_text(ell)})")


def forward(t_lambda: Tableau2Row, t_mu: Tableau2Row, ell: Level) -> OscTableau:
    if t_lambda.length != t_mu.length:
        raise ShapeMismatch(f"tableaux of lengths {t_lambda.length} and {t_mu.length}")
    _require_restricted(t_lambda, ell)
    _require_restricted(t_mu, ell)
    if t_lambda.shape.row(1) < t_mu.shape.row(1):
        raise OrderViolation(f"{t_lambda.shape} has a shorter first row than {t_mu.shape}")

    a, b = t_lambda.first_rows(), t_mu.first_rows()
    track = sign_track(t_lambda, t_mu)
    shapes: List[Diagram] = [Diagram()]
    for j in range(1, t_lambda.length + 1):
        plain = Diagram.of(a[j] + b[j] - j, abs(a[j] - b[j]))
        if not in_gamma(plain, ell):
            raise ConsistencyError(f"level {j}: {plain} escaped Gamma({level_text(ell)})")
        shapes.append(plain if track.signs[j] == 1 else star(plain, ell))
    try:
        return OscTableau(tuple(shapes))
    except InvalidOscTableau as exc:
        raise ConsistencyError(f"forward image is not an oscillating tableau: {exc}") from exc


def _unstarred(nu: Diagram, ell: Level) -> Tuple[int, int, int]:
    """(nu_1, nu_2, sign) where sign is 0 for an undetermined two-row shape"""
    if nu.length <= 1:
        return nu.row(1), 0, 1
    if nu.length == 2:
        return nu.row(1), nu.row(2), 0
    plain = star(nu, ell)
    return plain.row(1), 0, -1


def inverse(o: OscTableau, ell: Level) -> Tuple[Tableau2Row, Tableau2Row]:
    if not o.is_valid(ell):
        raise InvalidOscTableau(f"{o} leaves Gamma({level_text(ell)})")
    m = o.length
    parts = [_unstarred(nu, ell) for nu in o.shapes]

    # two-row levels inherit the sign of the next level with != 2 rows
    signs = [0] * (m + 1)
    pending = 1
    for j in range(m, -1, -1):
        if parts[j][2] != 0:
            pending = parts[j][2]
        signs[j] = pending

    lambdas: List[Diagram] = [Diagram()]
    mus: List[Diagram] = [Diagram()]
    for j in range(1, m + 1):
        nu1, nu2, _ = parts[j]
        twice_lambda, twice_mu = j + nu1 + signs[j] * nu2, j + nu1 - signs[j] * nu2
        if twice_lambda % 2 or twice_mu % 2:
            raise InvalidOscTableau(f"level {j} of {o} has the wrong parity")
        lam1, mu1 = twice_lambda // 2, twice_mu // 2
        try:
            lam, mu = Diagram.of(lam1, j - lam1), Diagram.of(mu1, j - mu1)
        except InvalidInput as exc:
            raise InvalidOscTableau(f"level {j} of {o} reconstructs no diagram") from exc
        if not (in_lambda(lam, j, ell) and in_lambda(mu, j, ell)):
            raise InvalidOscTableau(f"level {j} of {o} reconstructs outside Lambda({j}, {level_text(ell)})")
        lambdas.append(lam)
        mus.append(mu)
    try:
        return tableau_from_shapes(lambdas), tableau_from_shapes(mus)
    except NotInLambda as exc:
        raise InvalidOscTableau(f"{o} does not come from a pair of tableaux") from exc
