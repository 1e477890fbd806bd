"""Tests for the qf-api HTTP service."""

import json
import sys
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

SERVICE_DIR = Path(__file__).resolve().parents[1] / "services" / "qf-api"
if str(SERVICE_DIR) not in sys.path:
    sys.path.insert(0, str(SERVICE_DIR))

from app.main import app, MAX_SHOTS, MAX_UPLOAD_SIZE  # noqa: E402

H_CIRCUIT = json.dumps({"wires": 1, "gates": [{"kind": "h", "wire": 0}]})
RZ_CIRCUIT = json.dumps({"wires": 1, "gates": [{"kind": "rz", "wire": 0, "angle": 0.8}]})


@pytest.fixture
def client():
    return TestClient(app)


def upload(name: str, text: str):
    return (name, text.encode("utf-8"), "application/json")


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "service": "qf-verify-api"}


def test_compile(client):
    response = client.post("/compile", files={"circuit_file": upload("h.json", H_CIRCUIT)},
                           data={"check": "true"})
    assert response.status_code == 200
    body = response.json()
    assert body["pass"] is True
    assert body["results"]["measurements"] == 1
    assert body["results"]["pattern"]["outputs"] == [1]
    assert body["params"]["circuit"] == "h.json"


def test_compile_then_verify(client):
    compiled = client.post("/compile", files={"circuit_file": upload("rz.jsonc", RZ_CIRCUIT)})
    pattern = json.dumps(compiled.json()["results"]["pattern"])
    response = client.post("/verify", files={
        "pattern_file": upload("p.json", pattern),
        "circuit_file": upload("rz.json", RZ_CIRCUIT),
    })
    assert response.status_code == 200
    assert response.json()["pass"] is True

    mismatch = client.post("/verify", files={
        "pattern_file": upload("p.json", pattern),
        "circuit_file": upload("h.json", H_CIRCUIT),
    })
    assert mismatch.status_code == 200
    assert mismatch.json()["pass"] is False


def test_emulate_named_channel(client):
    response = client.post("/emulate-channel", data={
        "channel": "depolarizing", "p": "1", "mode": "measurement_only",
    })
    assert response.status_code == 200
    body = response.json()
    assert body["pass"] is True
    assert body["results"]["ancillas"] == 2
    assert body["seed"] is None


def test_emulate_kraus_file(client):
    half = 0.5 ** 0.5
    kraus = json.dumps({"d_in": 2, "d_out": 2, "ops": [
        [[half, 0], [0, 0], [0, 0], [half, 0]],
        [[half, 0], [0, 0], [0, 0], [-half, 0]],
    ]})
    response = client.post("/emulate-channel", files={"kraus_file": upload("k.json", kraus)})
    assert response.status_code == 200
    assert response.json()["params"]["kraus"] == "k.json"


@pytest.mark.parametrize("data, files", [
    ({"channel": "bitflip"}, None),
    ({"channel": "depolarizing", "shots": str(MAX_SHOTS + 1)}, None),
    ({"channel": "depolarizing", "mode": "fast"}, None),
    ({}, None),
    ({}, {"kraus_file": ("k.json", b'{"d_in": 2, "d_out": 2, "ops": []}', "application/json")}),
])
def test_emulate_bad_requests(client, data, files):
    response = client.post("/emulate-channel", data=data, files=files)
    assert response.status_code == 400


def test_bad_uploads(client):
    wrong_name = client.post("/compile", files={"circuit_file": upload("h.txt", H_CIRCUIT)})
    assert wrong_name.status_code == 400
    too_big = client.post("/compile", files={"circuit_file": upload("h.json", " " * (MAX_UPLOAD_SIZE + 1))})
    assert too_big.status_code == 400
    bad_gate = client.post("/compile", files={"circuit_file": upload(
        "h.json", '{"wires": 1, "gates": [{"kind": "h", "wire": 3}]}')})
    assert bad_gate.status_code == 400
    assert "gates[0].wire" in bad_gate.json()["detail"]
