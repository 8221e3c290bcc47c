import logging
from typing import Optional

from fastapi import APIRouter, Query

from app.controllers.errors import http_errors
from app.models import InvariantResponse, LickorishResponse
from app.services.invariants import (
    InvariantValue, bracket_oracle, closure_components, jones, kauffman_special, lickorish_check,
)
from app.utils.text_formats import parse_level, parse_word, render_word

router = APIRouter(prefix="/invariants", tags=["invariants"])
logger = logging.getLogger(__name__)


@router.get("/jones", response_model=InvariantResponse)
def jones_polynomial(
    strands: int = Query(..., ge=1, description="Number of strands"),
    word: str = Query("", description="Braid word, e.g. 1 1 1"),
    ell: str = Query("inf", description="Level; finite levels evaluate at q = exp(pi i / l)"),
) -> InvariantResponse:
    with http_errors("compute the Jones polynomial"):
        braid = parse_word(strands, word)
        return InvariantResponse.from_invariant(jones(braid, parse_level(ell)), render_word(braid))


@router.get("/kauffman", response_model=InvariantResponse)
def kauffman_polynomial(
    strands: int = Query(..., ge=1, description="Number of strands"),
    word: str = Query("", description="Braid word"),
    ell: str = Query("inf", description="Level, inf or at least 6"),
) -> InvariantResponse:
    with http_errors("compute the Kauffman specialization"):
        braid = parse_word(strands, word)
        return InvariantResponse.from_invariant(kauffman_special(braid, parse_level(ell)), render_word(braid))


@router.get("/lickorish", response_model=LickorishResponse)
def lickorish(
    strands: int = Query(..., ge=1, description="Number of strands"),
    word: str = Query("", description="Braid word"),
) -> LickorishResponse:
    """K(beta; q^3, q) against J(beta; q)^2"""
    with http_errors("check the Lickorish identity"):
        braid = parse_word(strands, word)
        return LickorishResponse.from_result(lickorish_check(braid), render_word(braid))


@router.get("/oracle", response_model=InvariantResponse)
def oracle(
    strands: int = Query(..., ge=1, description="Number of strands"),
    word: str = Query("", description="Braid word"),
    cap: Optional[int] = Query(None, ge=0, description="Crossing cap, defaults to BMWSQ_BRACKET_CAP"),
) -> InvariantResponse:
    """Kauffman bracket state sum in A, writhe normalized"""
    with http_errors("evaluate the bracket oracle"):
        braid = parse_word(strands, word)
        value = InvariantValue(
            "oracle", bracket_oracle(braid, cap), braid.strands, braid.exponent_sum, closure_components(braid)
        )
        return InvariantResponse.from_invariant(value, render_word(braid))
