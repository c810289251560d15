"""HTTP endpoints via the in-process test client."""

from fastapi.testclient import TestClient

from linesys.service import app

client = TestClient(app)

CNN3 = {
    "points": 8,
    "lines": [
        [0, 1, 6], [0, 2, 4], [0, 3, 7], [1, 3, 5],
        [1, 4, 7], [2, 3, 6], [2, 5, 7], [4, 5, 6],
    ],
}


def test_health():
    assert client.get("/health").json() == {"status": "ok"}


def test_generate_with_labeling():
    r = client.post("/generate", json={"construction": "cnn", "n": 3})
    assert r.status_code == 200
    doc = r.json()
    assert doc["instance"] == CNN3
    assert doc["labeling"]["name"] == "cnn_3"
    assert len(doc["labeling"]["point_labels"]) == 8


def test_generate_without_labeling():
    r = client.post("/generate", json={"construction": "matching", "m": 2, "r": 3})
    assert r.status_code == 200
    assert r.json()["labeling"] is None


def test_generate_missing_parameter():
    r = client.post("/generate", json={"construction": "plane"})
    assert r.status_code == 422
    assert "q" in r.json()["detail"]


def test_generate_random():
    body = {"construction": "random", "points": 9, "lines": 5,
            "min_size": 2, "max_size": 3, "seed": 11}
    a = client.post("/generate", json=body).json()
    b = client.post("/generate", json=body).json()
    assert a == b


def test_solve_both():
    r = client.post("/solve", json={"instance": CNN3})
    assert r.status_code == 200
    doc = r.json()
    assert doc["tau"]["optimum"] == 4
    assert doc["nu2"]["optimum"] == 4
    assert doc["tau"]["proven_optimal"] is True
    assert doc["tau"]["witness"] == [0, 1, 2, 4]


def test_solve_only_tau():
    r = client.post("/solve", json={"instance": CNN3, "what": "tau"})
    assert r.json()["nu2"] is None


def test_invalid_instance_is_422():
    bad = {"points": 4, "lines": [[0, 1, 2], [0, 1, 3]]}
    r = client.post("/solve", json={"instance": bad})
    assert r.status_code == 422
    assert "share" in r.json()["detail"]


def test_pad():
    r = client.post("/pad", json={"instance": CNN3, "r": 4})
    assert r.status_code == 200
    assert r.json()["points"] == 16


def test_c44_listing():
    r = client.get("/c44")
    assert r.status_code == 200
    members = r.json()
    assert len(members) == 8
    assert members[0]["instance"]["points"] == 10
    assert members[-1]["instance"]["points"] == 13


def test_verify_family():
    r = client.post("/verify", json={"family": "cnn", "ns": [3]})
    assert r.status_code == 200
    doc = r.json()
    assert doc["exit_code"] == 0
    assert doc["instances"][0]["summary"]["tau"] == 4


def test_verify_explicit_instances():
    r = client.post("/verify", json={"instances": [CNN3]})
    assert r.json()["instances"][0]["summary"]["name"] == "instance_0"


def test_verify_empty_is_422():
    assert client.post("/verify", json={}).status_code == 422


def test_iso():
    r = client.post("/iso", json={"first": CNN3, "second": CNN3})
    assert r.json() == {"result": "isomorphic"}
    other = client.post(
        "/generate", json={"construction": "plane", "q": 2}
    ).json()["instance"]
    r = client.post("/iso", json={"first": CNN3, "second": other})
    assert r.json() == {"result": "not-isomorphic"}


def test_iso_undecided_under_budget():
    plane = client.post(
        "/generate", json={"construction": "plane", "q": 3}
    ).json()["instance"]
    r = client.post("/iso", json={"first": plane, "second": plane, "max_nodes": 2})
    assert r.json() == {"result": "undecided"}


def test_canon_stable():
    a = client.post("/canon", json={"instance": CNN3}).json()["canonical"]
    b = client.post("/canon", json={"instance": CNN3}).json()["canonical"]
    assert a == b
    assert a.startswith('{"points": 8,')


def test_canon_budget_is_422():
    plane = client.post(
        "/generate", json={"construction": "plane", "q": 3}
    ).json()["instance"]
    r = client.post("/canon", json={"instance": plane, "max_nodes": 2})
    assert r.status_code == 422
    assert "undecided" in r.json()["detail"]
