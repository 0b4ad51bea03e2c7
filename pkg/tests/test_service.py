import base64

import numpy as np
import pytest
from fastapi.testclient import TestClient

from frftkit.gridio import (
    cfield_bytes,
    normalize,
    parse_cfield,
    parse_pgm,
    pgm_bytes,
    synth_test_image,
)
from frftkit.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def b64(data: bytes) -> str:
    return base64.b64encode(data).decode()


def key_payload(**overrides):
    payload = {
        "alpha1": "7pi/8",
        "alpha2": "5pi/8",
        "gamma1": "pi/4",
        "gamma2": "3pi/8",
        "beta": 0.75,
        "seed1": 101,
        "seed2": 202,
    }
    payload.update(overrides)
    return payload


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_frft_endpoint_round_trip(client):
    img = synth_test_image(32)
    resp = client.post(
        "/v1/frft",
        json={
            "input_b64": b64(pgm_bytes(img)),
            "order": ["pi/2", "pi/2"],
            "amplitude": "linear",
            "surface": True,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    field = parse_cfield(base64.b64decode(body["field_b64"]))
    assert field.shape == (32, 32)
    amp = parse_pgm(base64.b64decode(body["amplitude_b64"]))
    assert amp.width == 32
    surface = base64.b64decode(body["surface_b64"]).decode()
    assert surface.startswith("x,y,re,im,abs")

    # inverse via the same endpoint returns the image
    resp2 = client.post(
        "/v1/frft",
        json={
            "input_b64": body["field_b64"],
            "input_format": "frc1",
            "order": ["pi/2", "pi/2"],
            "inverse": True,
        },
    )
    back = parse_cfield(base64.b64decode(resp2.json()["field_b64"]))
    assert np.abs(back - normalize(img)).max() < 1e-12


def test_frft_rejects_bad_angle(client):
    resp = client.post(
        "/v1/frft",
        json={"input_b64": b64(pgm_bytes(synth_test_image(8))), "order": ["pi/x", "pi/2"]},
    )
    assert resp.status_code == 400
    assert resp.json()["detail"]["category"] == "usage"


def test_frft_rejects_bad_payload(client):
    resp = client.post("/v1/frft", json={"input_b64": "!!!", "order": ["pi/2", "pi/2"]})
    assert resp.status_code == 422
    assert resp.json()["detail"]["category"] == "data"
    resp = client.post(
        "/v1/frft",
        json={"input_b64": b64(b"P2\n1 1\n255\n0"), "order": ["pi/2", "pi/2"]},
    )
    assert resp.status_code == 422


def test_riesz_requires_exactly_one_operator(client):
    img_b64 = b64(pgm_bytes(synth_test_image(16)))
    resp = client.post(
        "/v1/riesz",
        json={"input_b64": img_b64, "order": ["pi/4", "pi/4"], "beta": 1.0, "laplacian_z": 1.0},
    )
    assert resp.status_code == 400
    resp = client.post("/v1/riesz", json={"input_b64": img_b64, "order": ["pi/4", "pi/4"]})
    assert resp.status_code == 400


def test_riesz_potential_laplacian_inverse_pair(client):
    img_b64 = b64(pgm_bytes(synth_test_image(32)))
    r1 = client.post(
        "/v1/riesz",
        json={"input_b64": img_b64, "order": ["pi/4", "pi/4"], "beta": 1.0, "oversample": 1},
    )
    assert r1.status_code == 200
    r2 = client.post(
        "/v1/riesz",
        json={
            "input_b64": r1.json()["field_b64"],
            "input_format": "frc1",
            "order": ["pi/4", "pi/4"],
            "laplacian_z": 1.0,
            "oversample": 1,
        },
    )
    out = parse_cfield(base64.b64decode(r2.json()["field_b64"]))
    ref = normalize(synth_test_image(32))
    err = np.linalg.norm(out - ref) / np.linalg.norm(ref)
    assert err < 1e-12


def test_riesz_oracle_guard(client):
    img_b64 = b64(pgm_bytes(synth_test_image(128)))
    resp = client.post(
        "/v1/riesz",
        json={"input_b64": img_b64, "order": ["pi/4", "pi/4"], "beta": 1.0, "oracle": True},
    )
    assert resp.status_code == 400
    assert "64" in resp.json()["detail"]["message"]


def test_encrypt_decrypt_endpoints(client):
    img = synth_test_image(64)
    enc = client.post("/v1/encrypt", json={"image_b64": b64(pgm_bytes(img)), "key": key_payload()})
    assert enc.status_code == 200
    dec = client.post(
        "/v1/decrypt",
        json={
            "cipher_b64": enc.json()["cipher_b64"],
            "key": key_payload(),
            "reference_b64": b64(pgm_bytes(img)),
        },
    )
    assert dec.status_code == 200
    body = dec.json()
    assert body["mse_vs_reference"] <= 1e-4
    out = parse_pgm(base64.b64decode(body["image_b64"]))
    assert np.array_equal(out.pixels, img.pixels)


def test_encrypt_rejects_special_order(client):
    img = synth_test_image(16)
    resp = client.post(
        "/v1/encrypt",
        json={"image_b64": b64(pgm_bytes(img)), "key": key_payload(alpha1="pi")},
    )
    assert resp.status_code == 400


def test_key_model_rejects_out_of_range(client):
    img = synth_test_image(16)
    resp = client.post(
        "/v1/encrypt",
        json={"image_b64": b64(pgm_bytes(img)), "key": key_payload(beta=2.5)},
    )
    assert resp.status_code == 422  # pydantic validation


def test_sweep_endpoint(client):
    img = synth_test_image(32)
    resp = client.post(
        "/v1/sweep",
        json={
            "image_b64": b64(pgm_bytes(img)),
            "key": key_payload(),
            "parameter": "beta",
            "lo": -0.1,
            "hi": 0.1,
            "steps": 5,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["deviations"]) == len(body["mse"]) == 5
    i0 = body["deviations"].index(0.0)
    assert body["mse"][i0] == min(body["mse"])


def test_sweep_rejects_empty_range(client):
    img = synth_test_image(16)
    resp = client.post(
        "/v1/sweep",
        json={
            "image_b64": b64(pgm_bytes(img)),
            "key": key_payload(),
            "parameter": "beta",
            "lo": 0.2,
            "hi": -0.2,
            "steps": 3,
        },
    )
    assert resp.status_code == 400


def test_selftest_endpoint(client):
    resp = client.post("/v1/selftest", json={})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert len(body["checks"]) == 4
    assert all(c["passed"] for c in body["checks"])
