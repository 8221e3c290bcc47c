"""
Acceptance suites behind `verify-all`.

Each suite returns (passed, detail). iter_suites yields one SuiteResult at a
time so the HTTP stream can report progress; verify_all collects them.
"""

import logging
import random
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Iterator, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import BmwSquareError
from app.models import SuiteResult, VerificationReport
from app.services.bijection import forward, inverse
from app.services.diagrams import INF, Diagram, gamma_set, in_lambda, lambda_set, level_text, star
from app.services.images import GroupKind, classify_image, enumerate_projective_group
from app.services.invariants import (
    BraidWord, bracket_oracle, bracket_variable, closure_components, jones, kauffman_special,
    lickorish_check, random_word,
)
from app.services.pathmodel import verify_tl_relations
from app.services.squares import dim_audit, verify_bmw_relations
from app.services.tableaux import closed_form_dim, count_osc, count_tableaux, enum_osc, enum_tableaux

logger = logging.getLogger(__name__)

SuiteOutcome = Tuple[bool, str]

ALGEBRA_LEVELS = (INF, 6, 7, 8)
TREFOIL = BraidWord(2, (1, 1, 1))
FIGURE_EIGHT = BraidWord(3, (1, -2, 1, -2))


@dataclass(frozen=True)
class Sizes:
    bijection_m: int
    counting_m: int
    closed_form_m: int
    tl_m: int
    tl_samples: int
    bmw_m: int
    audit_m: int
    lickorish_words: int
    lickorish_strands: int
    markov_words: int
    oracle_words: int
    large_image: bool
    infinite_budget: int


QUICK = Sizes(
    bijection_m=5, counting_m=8, closed_form_m=10, tl_m=4, tl_samples=5, bmw_m=3, audit_m=4,
    lickorish_words=12, lickorish_strands=4, markov_words=6, oracle_words=12, large_image=False, infinite_budget=2_000,
)
FULL = Sizes(
    bijection_m=9, counting_m=12, closed_form_m=14, tl_m=6, tl_samples=100, bmw_m=5, audit_m=6,
    lickorish_words=200, lickorish_strands=5, markov_words=100, oracle_words=30, large_image=True, infinite_budget=20_000,
)


# -- combinatorics -------------------------------------------------------------


def bijection_round_trip(max_m: int) -> SuiteOutcome:
    pairs = tableaux = 0
    for ell in ALGEBRA_LEVELS:
        for m in range(max_m + 1):
            shapes = lambda_set(m, ell)
            for lam in shapes:
                for mu in shapes:
                    if lam.row(1) < mu.row(1):
                        continue
                    for t_lambda in enum_tableaux(lam, ell):
                        for t_mu in enum_tableaux(mu, ell):
                            pairs += 1
                            if inverse(forward(t_lambda, t_mu, ell), ell) != (t_lambda, t_mu):
                                return False, f"inverse(forward({t_lambda}, {t_mu})) differs at l={level_text(ell)}"
            for nu in gamma_set(ell, max_size=m):
                if (m - nu.size) % 2:
                    continue
                for o in enum_osc(m, nu, ell):
                    tableaux += 1
                    if forward(*inverse(o, ell), ell) != o:
                        return False, f"forward(inverse({o})) differs at l={level_text(ell)}"
    return True, f"{pairs} tableau pairs and {tableaux} oscillating tableaux, m <= {max_m}"


def counting_identities(max_m: int) -> SuiteOutcome:
    checked = 0
    for ell in (6, 7, 8, 9, 10, INF):
        for m in range(max_m + 1):
            for lam, mu in combinations_with_replacement(lambda_set(m, ell), 2):
                t_lambda, t_mu = count_tableaux(lam, ell), count_tableaux(mu, ell)
                nu1 = lam.row(1) + mu.row(1) - m
                if lam != mu:
                    nu = Diagram.of(nu1, abs(lam.row(1) - mu.row(1)))
                    ok = count_osc(m, nu, ell) == t_lambda * t_mu
                else:
                    sym, alt = Diagram.of(nu1), star(Diagram.of(nu1), ell)
                    ok = count_osc(m, sym, ell) == comb(t_lambda + 1, 2) and count_osc(m, alt, ell) == comb(t_lambda, 2)
                if not ok:
                    return False, f"count mismatch for {lam}, {mu} at m={m}, l={level_text(ell)}"
                checked += 1
    return True, f"{checked} label pairs, m <= {max_m}"


def closed_forms(max_m: int) -> SuiteOutcome:
    checked = 0
    for ell in (6, INF):
        for m in range(max_m + 1):
            for p in range(m // 2 + 1):
                if not in_lambda(Diagram.of(m - p, p), m, ell):
                    continue
                if closed_form_dim(m, p, ell) != count_tableaux(Diagram.of(m - p, p), ell):
                    return False, f"closed form differs at m={m}, p={p}, l={level_text(ell)}"
                checked += 1
    return True, f"{checked} closed forms, m <= {max_m}"


# -- algebras ------------------------------------------------------------------


def tl_relations(max_m: int, samples: int) -> SuiteOutcome:
    for ell in ALGEBRA_LEVELS:
        for m in range(1, max_m + 1):
            report = verify_tl_relations(m, ell, samples=samples, seed=settings.seed)
            failed = [name for name, ok in report.items() if not ok]
            if failed:
                return False, f"m={m}, l={level_text(ell)}: {', '.join(failed)} failed"
    return True, f"TL relations and Markov axioms, m <= {max_m}, {samples} samples"


def bmw_relations(max_m: int) -> SuiteOutcome:
    for ell in ALGEBRA_LEVELS:
        for m in range(2, max_m + 1):
            report = verify_bmw_relations(m, ell, samples=3, seed=settings.seed)
            failed = [name for name, ok in report.items() if not ok]
            if failed:
                return False, f"m={m}, l={level_text(ell)}: {', '.join(failed)} failed"
    control = verify_bmw_relations(3, INF, twist_power=2)
    if control["R1"]:
        return False, "negative control q^2 (g x g) satisfies R1"
    return True, f"BMW relations and trace axioms, m <= {max_m}; negative control fails R1"


def dimension_audit(max_m: int) -> SuiteOutcome:
    for ell in ALGEBRA_LEVELS:
        for m in range(1, max_m + 1):
            audit = dim_audit(m, ell)
            if not audit.agrees:
                return False, (
                    f"m={m}, l={level_text(ell)}: totals {audit.osc_total} / {audit.tl_total} / {audit.block_total}"
                )
    return True, f"three totals and every block agree, m <= {max_m}"


# -- invariants ----------------------------------------------------------------


def _corpus(rng: random.Random, count: int, max_strands: int, max_length: int) -> List[BraidWord]:
    words = [TREFOIL, FIGURE_EIGHT]
    while len(words) < count + 2:
        strands = rng.randint(2, max_strands)
        words.append(random_word(rng, strands, rng.randint(1, max_length)))
    return words


def lickorish_identity(count: int, max_strands: int, markov_words: int) -> SuiteOutcome:
    rng = random.Random(settings.seed)
    words = _corpus(rng, count, max_strands, 12)
    for word in words:
        if not lickorish_check(word).equal:
            return False, f"K != J^2 for {word} on {word.strands} strands"

    # stabilization may reach max_strands + 1
    moved_words = words[:markov_words]
    for word in moved_words:
        base_j, base_k = jones(word).value, kauffman_special(word).value
        conjugator = random_word(rng, word.strands, 2)
        for moved in (word.conjugate(conjugator), word.stabilize(1), word.stabilize(-1)):
            if jones(moved).value != base_j or kauffman_special(moved).value != base_k:
                return False, f"Markov move changed the invariants of {word}"
    return True, (
        f"K = J^2 on {len(words)} words; {len(moved_words)} words invariant under conjugation and stabilization"
    )


def oracle_agreement(count: int) -> SuiteOutcome:
    rng = random.Random(settings.seed + 1)
    words = _corpus(rng, count, 4, 10)
    for word in words:
        value = jones(word).value
        if bracket_variable(value) != bracket_oracle(word):
            return False, f"jones and the bracket oracle differ on {word} ({word.strands} strands)"
        # knot closures carry a single exponent parity class in q
        if closure_components(word) == 1 and len({e % 2 for e in value.exponents()}) > 1:
            return False, f"jones of the knot {word} mixes exponent parities"
    return True, f"jones(q = A^2) equals the bracket state sum on {len(words)} words"


# -- images --------------------------------------------------------------------

FINITE_IMAGES = (
    (3, (2, 1), 10, 60),
    (4, (2, 2), 10, 60),
    (4, (), 10, 60),
    (3, (1,), 6, 12),
    (4, (1, 1), 6, 108),
)
LARGE_FINITE_IMAGES = ((5, (3, 1, 1), 6, 25920),)
INFINITE_IMAGES = ((3, (2, 1), 7), (3, (2, 1), 8), (4, (2,), 8))

# (m, nu, l) -> (kind, case, rank, dims)
CLASSIFICATION_TABLE = (
    ((3, (3,), 8), (GroupKind.TRIVIAL, "1", 0, ())),
    ((2, (1, 1), 7), (GroupKind.TRIVIAL, "2", 0, ())),
    ((3, (1, 1, 1), 8), (GroupKind.TRIVIAL, "3", 0, ())),
    ((4, (1, 1, 1, 1), 7), (GroupKind.TRIVIAL, "4", 0, ())),
    ((3, (1,), 6), (GroupKind.PSP, "5", 2, ())),
    ((5, (3, 1, 1), 6), (GroupKind.PSP, "5", 4, ())),
    ((4, (2, 2), 6), (GroupKind.PSP, "6", 2, ())),
    ((4, (), 6), (GroupKind.PSP, "6", 2, ())),
    ((4, (1, 1), 6), (GroupKind.PSP_SEMIDIRECT, "7", 2, ())),
    ((4, (2,), 6), (GroupKind.PSP_SEMIDIRECT, "7", 2, ())),
    ((3, (2, 1), 10), (GroupKind.A5, "8", 0, ())),
    ((3, (1,), 10), (GroupKind.A5, "8", 0, ())),
    ((4, (2, 2), 10), (GroupKind.A5, "9", 0, ())),
    ((4, (1, 1), 10), (GroupKind.A5_X_PSU, "10", 0, (3,))),
    ((4, (2,), 8), (GroupKind.PSU, "11", 0, (3,))),
    ((5, (1,), 8), (GroupKind.PSU, "11", 0, (5,))),
    ((5, (3, 1, 1), 8), (GroupKind.PSU, "12", 0, (4,))),
    ((6, (1, 1, 1, 1), 8), (GroupKind.PSU, "13", 0, (5,))),
    ((4, (1, 1), 8), (GroupKind.PSU_X_PSU, "GENERIC", 0, (2, 3))),
    ((5, (2, 1), 7), (GroupKind.PSU_X_PSU, "GENERIC", 0, (5, 4))),
)


def finite_images(large: bool) -> SuiteOutcome:
    cases = FINITE_IMAGES + (LARGE_FINITE_IMAGES if large else ())
    orders = []
    for m, rows, ell, expected in cases:
        result = enumerate_projective_group(m, Diagram(rows), ell, budget=max(settings.bfs_budget, 2 * expected))
        if result.hit_cap or result.order != expected:
            return False, f"({m}, {Diagram(rows)}, {ell}): found {result.order}, expected {expected}"
        orders.append(str(result.order))
    return True, f"BFS orders {', '.join(orders)} match the predicted groups"


def infinite_images(budget: int) -> SuiteOutcome:
    for m, rows, ell in INFINITE_IMAGES:
        result = enumerate_projective_group(m, Diagram(rows), ell, budget=budget)
        if result.status != "consistent":
            return False, f"({m}, {Diagram(rows)}, {ell}): {result.status} after {result.order} elements"
    for (m, rows, ell), (kind, case, rank, dims) in CLASSIFICATION_TABLE:
        descriptor = classify_image(m, Diagram(rows), ell)
        if descriptor.kind != kind or descriptor.provenance != case:
            return False, f"({m}, {Diagram(rows)}, {ell}) classified as {descriptor.name} (case {descriptor.provenance})"
        if (rank and descriptor.rank != rank) or (dims and tuple(descriptor.dims) != dims):
            return False, f"({m}, {Diagram(rows)}, {ell}) has parameters {descriptor.rank}, {descriptor.dims}"
    return True, (
        f"{len(INFINITE_IMAGES)} predicted-infinite searches exceed {budget} elements; "
        f"{len(CLASSIFICATION_TABLE)} classifications match the case table"
    )


# -- driver --------------------------------------------------------------------


def suites(quick: bool) -> List[Tuple[str, Callable[[], SuiteOutcome]]]:
    sizes = QUICK if quick else FULL
    return [
        ("bijection round trip", lambda: bijection_round_trip(sizes.bijection_m)),
        ("counting identities", lambda: counting_identities(sizes.counting_m)),
        ("closed forms", lambda: closed_forms(sizes.closed_form_m)),
        ("TL relations", lambda: tl_relations(sizes.tl_m, sizes.tl_samples)),
        ("BMW relations", lambda: bmw_relations(sizes.bmw_m)),
        ("dimension audit", lambda: dimension_audit(sizes.audit_m)),
        ("Lickorish identity", lambda: lickorish_identity(sizes.lickorish_words, sizes.lickorish_strands, sizes.markov_words)),
        ("oracle agreement", lambda: oracle_agreement(sizes.oracle_words)),
        ("finite images", lambda: finite_images(sizes.large_image)),
        ("infinite images", lambda: infinite_images(sizes.infinite_budget)),
    ]


def run_suite(index: int, name: str, check: Callable[[], SuiteOutcome]) -> SuiteResult:
    started = time.monotonic()
    try:
        passed, detail = check()
    except BmwSquareError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = round(time.monotonic() - started, 3)
    logger.info(f"Suite {index} ({name}): {'PASS' if passed else 'FAIL'} in {elapsed}s - {detail}")
    return SuiteResult(index=index, name=name, passed=passed, detail=detail, elapsed_seconds=elapsed)


def iter_suites(quick: bool = False, only: Optional[List[int]] = None) -> Iterator[SuiteResult]:
    for index, (name, check) in enumerate(suites(quick), start=1):
        if only and index not in only:
            continue
        yield run_suite(index, name, check)


def verify_all(quick: bool = False, only: Optional[List[int]] = None) -> VerificationReport:
    started = time.monotonic()
    results = list(iter_suites(quick, only))
    return VerificationReport(
        quick=quick,
        passed=all(r.passed for r in results),
        suites=results,
        elapsed_seconds=round(time.monotonic() - started, 3),
        settings=settings.as_dict(),
    )
