import logging

from fastapi import APIRouter, Query

from app.controllers.errors import http_errors
from app.models import DimAuditResponse, RelationKind, RelationReport, Scalar, SpanResponse
from app.core.config import settings
from app.services.pathmodel import markov_trace, represent_word, verify_tl_relations
from app.services.squares import dim_audit, generated_dimension, verify_bmw_relations
from app.utils.text_formats import parse_level, parse_word

router = APIRouter(tags=["algebra"])
logger = logging.getLogger(__name__)


@router.get("/tl/trace", response_model=Scalar)
def tl_trace(
    strands: int = Query(..., ge=1, description="Number of strands"),
    word: str = Query("", description="Braid word"),
    ell: str = Query("inf", description="Level, an integer or inf"),
) -> Scalar:
    """Markov trace of the path-model image of a braid word"""
    with http_errors("compute the Markov trace"):
        level = parse_level(ell)
        braid = parse_word(strands, word)
        return Scalar.from_value(markov_trace(represent_word(braid, level), strands, level))


@router.get("/tl/verify", response_model=RelationReport)
def tl_verify(
    m: int = Query(..., ge=1, description="Number of strands"),
    ell: str = Query("inf", description="Level, an integer or inf"),
) -> RelationReport:
    with http_errors("verify the TL relations"):
        level = parse_level(ell)
        checks = verify_tl_relations(m, level, seed=settings.seed)
        return RelationReport.from_checks(RelationKind.tl, m, level, checks)


@router.get("/squares/verify", response_model=RelationReport)
def squares_verify(
    m: int = Query(..., ge=1, description="Number of strands"),
    ell: str = Query("inf", description="Level, inf or at least 6"),
) -> RelationReport:
    with http_errors("verify the BMW relations"):
        level = parse_level(ell)
        checks = verify_bmw_relations(m, level, seed=settings.seed)
        return RelationReport.from_checks(RelationKind.bmw, m, level, checks)


@router.get("/squares/audit", response_model=DimAuditResponse)
def squares_audit(
    m: int = Query(..., ge=0, description="Number of strands"),
    ell: str = Query("inf", description="Level, inf or at least 6"),
) -> DimAuditResponse:
    """Oscillating tableau, TL square and block dimension totals"""
    with http_errors("audit dimensions"):
        return DimAuditResponse.from_audit(dim_audit(m, parse_level(ell)))


@router.get("/squares/span", response_model=SpanResponse)
def squares_span(
    m: int = Query(..., ge=1, description="Number of strands"),
    ell: str = Query("inf", description="Level, inf or at least 6"),
) -> SpanResponse:
    """Dimension of the algebra generated by the G~_i"""
    with http_errors("compute the generated dimension"):
        level = parse_level(ell)
        return SpanResponse.from_result(m, level, generated_dimension(m, level, settings.span_prime_floor))
