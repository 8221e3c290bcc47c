import pytest


def test_root_and_health(client):
    assert client.get("/").json()["message"] == "BMW Square API"
    health = client.get("/health").json()
    assert health["status"] == "healthy"
    assert "bfs_budget" in health["settings"]


@pytest.mark.parametrize(
    "op, params, field, expected",
    [
        ("star", {"shape": "[0]", "ell": "6"}, "result", "[1,1,1,1]"),
        ("in-gamma", {"shape": "[3,2]", "ell": "8"}, "member", True),
        ("in-lambda", {"shape": "[4,2]", "ell": "6", "m": 6}, "member", True),
        ("predecessors", {"shape": "[4,1,1]", "ell": "6", "m": 6}, "results", ["[3,1,1]"]),
    ],
)
def test_diagram_ops(client, op, params, field, expected):
    response = client.get(f"/diagrams/{op}", params=params)
    assert response.status_code == 200
    assert response.json()[field] == expected


def test_diagram_errors(client):
    assert client.get("/diagrams/rotate", params={"shape": "[1]"}).status_code == 404
    assert client.get("/diagrams/predecessors", params={"shape": "[1]"}).status_code == 422
    response = client.get("/diagrams/star", params={"shape": "[3,2]", "ell": "6"})
    assert response.status_code == 422
    assert "Gamma" in response.json()["detail"]


def test_tableau_counts(client):
    body = client.get("/tableaux/count", params={"shape": "[2,1]", "enumerate": "true"}).json()
    assert body["count"] == 2
    assert body["items"] == ["112", "121"]
    body = client.get("/tableaux/osc-count", params={"length": 4, "shape": "[]"}).json()
    assert body["count"] == 3
    assert body["items"] is None


def test_bijection_routes(client):
    forward = client.get("/bijection/forward", params={"t1": "121", "t2": "112", "ell": "6"}).json()
    assert forward["osc"] == "[];[1];[1,1];[1,1,1]"
    inverse = client.get("/bijection/inverse", params={"osc": forward["osc"], "ell": "6"}).json()
    assert (inverse["t1"], inverse["t2"]) == ("121", "112")
    assert client.get("/bijection/compare", params={"t1": "121", "t2": "112"}).json()["comparison"] == "LT"
    assert client.get("/bijection/forward", params={"t1": "12", "t2": "11"}).status_code == 422


def test_invariant_routes(client):
    jones = client.get("/invariants/jones", params={"strands": 2, "word": "1 1 1"}).json()
    assert jones["value"]["text"] == "-q^-8 + q^-6 + q^-2"
    assert jones["value"]["terms"] == {"-8": "-1", "-6": "1", "-2": "1"}
    assert jones["components"] == 1

    root = client.get("/invariants/jones", params={"strands": 2, "word": "1 1 1", "ell": "10"}).json()
    assert root["value"]["conductor"] == 20
    assert root["ell"] == "10"

    lickorish = client.get("/invariants/lickorish", params={"strands": 3, "word": "1 -2 1 -2"}).json()
    assert lickorish["equal"] is True

    oracle = client.get("/invariants/oracle", params={"strands": 2, "word": "1 1 1"}).json()
    assert oracle["value"]["text"] == "-A^-16 + A^-12 + A^-4"
    assert client.get("/invariants/oracle", params={"strands": 2, "word": "1 1 1", "cap": 1}).status_code == 400
    assert client.get("/invariants/jones", params={"strands": 2, "word": "5"}).status_code == 422


def test_algebra_routes(client):
    assert client.get("/tl/trace", params={"strands": 3}).json()["text"] == "1"
    assert client.get("/tl/verify", params={"m": 3, "ell": "6"}).json()["passed"] is True
    assert client.get("/squares/verify", params={"m": 2, "ell": "7"}).json()["passed"] is True
    audit = client.get("/squares/audit", params={"m": 3}).json()
    assert audit["agrees"] is True
    assert audit["block_total"] == 15
    assert client.get("/squares/audit", params={"m": 3, "ell": "5"}).status_code == 422
    empty = client.get("/squares/audit", params={"m": 0}).json()
    assert empty["agrees"] is True
    assert empty["block_total"] == 1


def test_image_routes(client):
    body = client.get("/images/classify", params={"m": 4, "shape": "[1,1]", "ell": 10}).json()
    assert body["descriptor"]["name"] == "A_5 x PSU(3)"
    assert body["descriptor"]["finite"] is False

    response = client.post("/images/verify", json={"m": 3, "shape": "[2,1]", "ell": 10})
    assert response.status_code == 200
    assert response.json()["order"] == 60
    assert response.json()["status"] == "verified"

    assert client.get("/images/classify", params={"m": 3, "shape": "[1]", "ell": 5}).status_code == 422


@pytest.mark.slow
def test_verification_stream(client):
    events = []
    with client.websocket_connect("/verify/stream?quick=true") as websocket:
        while True:
            event = websocket.receive_json()
            events.append(event)
            if event["event_type"] == "complete":
                break
    assert events[0]["event_type"] == "status"
    suites = [e for e in events if e["event_type"] == "suite"]
    assert [e["data"]["index"] for e in suites] == list(range(1, 11))
    assert events[-1]["data"]["success"] is True
