import logging
from contextlib import contextmanager

from fastapi import HTTPException

from app.core.exceptions import BmwSquareError, InvalidInput

logger = logging.getLogger(__name__)


@contextmanager
def http_errors(action: str):
    """Translate library errors: invalid input -> 422, other library errors -> 400, anything else -> 500"""
    try:
        yield
    except HTTPException:
        raise
    except InvalidInput as e:
        raise HTTPException(status_code=422, detail=str(e))
    except BmwSquareError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Failed to {action}: {e}")
        raise HTTPException(status_code=500, detail=f"Failed to {action}: {str(e)}")
