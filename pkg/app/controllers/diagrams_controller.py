import logging
from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from app.controllers.errors import http_errors
from app.models import DiagramResponse
from app.services.diagrams import in_gamma, in_lambda, predecessors, star
from app.utils.text_formats import parse_diagram, parse_level, render_diagrams, render_level

router = APIRouter(tags=["diagrams"])
logger = logging.getLogger(__name__)

DIAGRAM_OPS = ("in-lambda", "in-gamma", "star", "predecessors")


@router.get("/diagrams/{op}", response_model=DiagramResponse)
def diagram_op(
    op: str,
    shape: str = Query(..., description="Diagram, e.g. [2,1]"),
    ell: str = Query("inf", description="Level, an integer or inf"),
    m: Optional[int] = Query(None, description="Size for in-lambda and predecessors"),
) -> DiagramResponse:
    """Membership in Lambda(m, l) or Gamma(l), the star reflection, and predecessor sets"""
    if op not in DIAGRAM_OPS:
        raise HTTPException(status_code=404, detail=f"Unknown diagram operation {op}")
    with http_errors(f"run diagram operation {op}"):
        d, level = parse_diagram(shape), parse_level(ell)
        response = DiagramResponse(op=op, shape=str(d), ell=render_level(level), m=m)
        if op == "in-gamma":
            response.member = in_gamma(d, level)
        elif op == "star":
            response.result = str(star(d, level))
        else:
            if m is None:
                raise HTTPException(status_code=422, detail=f"{op} needs the size parameter m")
            if op == "in-lambda":
                response.member = in_lambda(d, m, level)
            else:
                response.results = render_diagrams(predecessors(m, d, level))
        return response
