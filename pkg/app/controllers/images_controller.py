import logging

from fastapi import APIRouter, Query

from app.controllers.errors import http_errors
from app.models import EnumerationResponse, GroupDescriptorModel, ImageClassifyResponse, ImageRequest
from app.services.images import classify_image, enumerate_projective_group
from app.utils.text_formats import parse_diagram

router = APIRouter(prefix="/images", tags=["images"])
logger = logging.getLogger(__name__)


@router.get("/classify", response_model=ImageClassifyResponse)
def classify(
    m: int = Query(..., ge=1, description="Number of strands"),
    shape: str = Query(..., description="BMW diagram, e.g. [2,1]"),
    ell: int = Query(..., description="Level, at least 6"),
) -> ImageClassifyResponse:
    """Predicted closed projective image of the braid group on one block"""
    with http_errors("classify the image"):
        nu = parse_diagram(shape)
        descriptor = classify_image(m, nu, ell)
        return ImageClassifyResponse(
            m=m, shape=str(nu), ell=str(ell), descriptor=GroupDescriptorModel.from_descriptor(descriptor)
        )


@router.post("/verify", response_model=EnumerationResponse)
def verify(request: ImageRequest) -> EnumerationResponse:
    """Count the projective image by breadth-first search and compare with the prediction"""
    with http_errors("enumerate the projective image"):
        nu = parse_diagram(request.shape)
        result = enumerate_projective_group(request.m, nu, request.ell, budget=request.budget)
        return EnumerationResponse.from_result(request.m, str(nu), request.ell, result)
