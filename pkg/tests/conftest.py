import pytest
from fastapi.testclient import TestClient

from app.services.braid_words import BraidWord
from main import app


@pytest.fixture
def client():
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def trefoil():
    return BraidWord(2, (1, 1, 1))


@pytest.fixture
def figure_eight():
    return BraidWord(3, (1, -2, 1, -2))
