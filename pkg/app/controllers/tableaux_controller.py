import logging
from fastapi import APIRouter, Query

from app.controllers.errors import http_errors
from app.models import BijectionResponse, CountResponse
from app.services.bijection import compare, forward, inverse
from app.services.tableaux import count_osc, count_tableaux, enum_osc, enum_tableaux
from app.utils.text_formats import parse_diagram, parse_level, parse_osc, parse_steps, render_level, render_osc

router = APIRouter(tags=["tableaux"])
logger = logging.getLogger(__name__)


@router.get("/tableaux/count", response_model=CountResponse)
def tableau_count(
    shape: str = Query(..., description="Two-row diagram, e.g. [3,2]"),
    ell: str = Query("inf", description="Level, an integer or inf"),
    listing: bool = Query(False, alias="enumerate", description="Also list the step strings"),
) -> CountResponse:
    """|T_l(shape)|, optionally with the tableaux themselves"""
    with http_errors("count tableaux"):
        d, level = parse_diagram(shape), parse_level(ell)
        items = [str(t) for t in enum_tableaux(d, level)] if listing else None
        return CountResponse(
            kind="tab", shape=str(d), ell=render_level(level), length=d.size,
            count=count_tableaux(d, level), items=items,
        )


@router.get("/tableaux/osc-count", response_model=CountResponse)
def osc_count(
    length: int = Query(..., ge=0, description="Tableau length m"),
    shape: str = Query(..., description="Target diagram in Gamma(l)"),
    ell: str = Query("inf", description="Level, an integer or inf"),
    listing: bool = Query(False, alias="enumerate", description="Also list the oscillating tableaux"),
) -> CountResponse:
    """|O_l(m, shape)|, optionally with the tableaux themselves"""
    with http_errors("count oscillating tableaux"):
        d, level = parse_diagram(shape), parse_level(ell)
        items = [render_osc(o) for o in enum_osc(length, d, level)] if listing else None
        return CountResponse(
            kind="osc", shape=str(d), ell=render_level(level), length=length,
            count=count_osc(length, d, level), items=items,
        )


@router.get("/bijection/forward", response_model=BijectionResponse)
def bijection_forward(
    t1: str = Query(..., description="Step string of t_lambda"),
    t2: str = Query(..., description="Step string of t_mu"),
    ell: str = Query("inf", description="Level, an integer or inf"),
) -> BijectionResponse:
    with http_errors("apply the bijection"):
        t_lambda, t_mu, level = parse_steps(t1), parse_steps(t2), parse_level(ell)
        o = forward(t_lambda, t_mu, level)
        return BijectionResponse(op="forward", ell=render_level(level), t1=str(t_lambda), t2=str(t_mu), osc=render_osc(o))


@router.get("/bijection/inverse", response_model=BijectionResponse)
def bijection_inverse(
    osc: str = Query(..., description="Oscillating tableau, e.g. [];[1];[1,1]"),
    ell: str = Query("inf", description="Level, an integer or inf"),
) -> BijectionResponse:
    with http_errors("invert the bijection"):
        o, level = parse_osc(osc), parse_level(ell)
        t_lambda, t_mu = inverse(o, level)
        return BijectionResponse(op="inverse", ell=render_level(level), t1=str(t_lambda), t2=str(t_mu), osc=render_osc(o))


@router.get("/bijection/compare", response_model=BijectionResponse)
def bijection_compare(
    t1: str = Query(..., description="Step string"),
    t2: str = Query(..., description="Step string"),
) -> BijectionResponse:
    with http_errors("compare tableaux"):
        t_lambda, t_mu = parse_steps(t1), parse_steps(t2)
        return BijectionResponse(op="compare", t1=str(t_lambda), t2=str(t_mu), comparison=compare(t_lambda, t_mu))
