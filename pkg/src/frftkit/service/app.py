"""FastAPI service exposing the transform, operator, and encryption pipelines."""

from __future__ import annotations

import base64
import binascii

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import crypto, gridio, operators, selftest
from ..errors import FormatError, OracleSizeError
from ..frft import frft_2d, make_order
from ..symbols import FracLaplacian, RieszPotential, RieszTransform
from . import schemas

__all__ = ["create_app"]


def _usage(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"category": "usage", "message": message})


def _data(message: str) -> HTTPException:
    return HTTPException(status_code=422, detail={"category": "data", "message": message})


def _b64decode(text: str) -> bytes:
    try:
        return base64.b64decode(text, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise _data(f"invalid base64 payload: {exc}") from exc


def _b64(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


def _parse_order(pair) -> tuple:
    try:
        angles = tuple(crypto.parse_angle(a) for a in pair)
        return angles, make_order(angles)
    except ValueError as exc:
        raise _usage(str(exc)) from exc


def _load_field(b64: str, fmt: str) -> np.ndarray:
    raw = _b64decode(b64)
    try:
        if fmt == "pgm":
            return gridio.normalize(gridio.parse_pgm(raw)).astype(complex)
        return gridio.parse_cfield(raw)
    except FormatError as exc:
        raise _data(str(exc)) from exc


def _key_from_model(model: schemas.KeyModel) -> crypto.EncryptionKey:
    try:
        return crypto.EncryptionKey(
            alpha=(crypto.parse_angle(model.alpha1), crypto.parse_angle(model.alpha2)),
            gamma=(crypto.parse_angle(model.gamma1), crypto.parse_angle(model.gamma2)),
            beta=model.beta,
            seed1=model.seed1,
            seed2=model.seed2,
        )
    except ValueError as exc:
        raise _usage(str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(title="frftkit service", version="0.1.0")

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/frft", response_model=schemas.FrftResponse)
    def frft_endpoint(req: schemas.FrftRequest):
        angles, order = _parse_order(req.order)
        field = _load_field(req.input_b64, req.input_format)
        if req.inverse:
            order = -order
        try:
            out = frft_2d(field, order, path=req.path)
        except ValueError as exc:
            raise _usage(str(exc)) from exc
        resp = schemas.FrftResponse(field_b64=_b64(gridio.cfield_bytes(out)))
        if req.amplitude:
            resp.amplitude_b64 = _b64(gridio.pgm_bytes(gridio.amplitude_map(out, req.amplitude)))
        if req.surface:
            resp.surface_b64 = _b64(gridio.surface_csv_text(out).encode("ascii"))
        return resp

    @app.post("/v1/riesz", response_model=schemas.RieszResponse)
    def riesz_endpoint(req: schemas.RieszRequest):
        chosen = [v is not None for v in (req.beta, req.transform_axis, req.laplacian_z)]
        if sum(chosen) != 1:
            raise _usage("exactly one of beta, transform_axis, laplacian_z must be given")
        _, order = _parse_order(req.order)
        field = _load_field(req.input_b64, req.input_format)
        try:
            if req.oracle:
                if req.beta is None:
                    raise _usage("the spatial oracle is defined for the Riesz potential only")
                out = operators.riesz_potential_spatial_oracle(field, order, req.beta)
            else:
                if req.beta is not None:
                    kind = RieszPotential(req.beta)
                elif req.transform_axis is not None:
                    kind = RieszTransform(req.transform_axis)
                else:
                    kind = FracLaplacian(req.laplacian_z)
                out = operators.apply_multiplier(field, order, kind, path=req.path,
                                                 oversample=req.oversample)
        except OracleSizeError as exc:
            raise _usage(str(exc)) from exc
        except ValueError as exc:
            raise _usage(str(exc)) from exc
        resp = schemas.RieszResponse(field_b64=_b64(gridio.cfield_bytes(out)))
        if req.amplitude:
            resp.amplitude_b64 = _b64(gridio.pgm_bytes(gridio.amplitude_map(out, req.amplitude)))
        if req.output_image:
            resp.image_b64 = _b64(gridio.pgm_bytes(gridio.denormalize(np.abs(out))))
        return resp

    @app.post("/v1/encrypt", response_model=schemas.EncryptResponse)
    def encrypt_endpoint(req: schemas.EncryptRequest):
        key = _key_from_model(req.key)
        raw = _b64decode(req.image_b64)
        try:
            image = gridio.normalize(gridio.parse_pgm(raw))
        except FormatError as exc:
            raise _data(str(exc)) from exc
        try:
            cipher = crypto.encrypt(image, key, beta_channel=req.beta_channel)
        except ValueError as exc:
            raise _usage(str(exc)) from exc
        return schemas.EncryptResponse(cipher_b64=_b64(gridio.cfield_bytes(cipher)))

    @app.post("/v1/decrypt", response_model=schemas.DecryptResponse)
    def decrypt_endpoint(req: schemas.DecryptRequest):
        key = _key_from_model(req.key)
        try:
            cipher = gridio.parse_cfield(_b64decode(req.cipher_b64))
        except FormatError as exc:
            raise _data(str(exc)) from exc
        try:
            image = crypto.decrypt(cipher, key, beta_channel=req.beta_channel)
        except ValueError as exc:
            raise _usage(str(exc)) from exc
        resp = schemas.DecryptResponse(image_b64=_b64(gridio.pgm_bytes(gridio.denormalize(image))))
        if req.reference_b64 is not None:
            try:
                ref = gridio.normalize(gridio.parse_pgm(_b64decode(req.reference_b64)))
            except FormatError as exc:
                raise _data(str(exc)) from exc
            try:
                resp.mse_vs_reference = crypto.mse(image, ref)
            except ValueError as exc:
                raise _data(str(exc)) from exc
        return resp

    @app.post("/v1/sweep", response_model=schemas.SweepResponse)
    def sweep_endpoint(req: schemas.SweepRequest):
        key = _key_from_model(req.key)
        if req.hi < req.lo:
            raise _usage("sweep range is empty (hi < lo)")
        try:
            image = gridio.normalize(gridio.parse_pgm(_b64decode(req.image_b64)))
        except FormatError as exc:
            raise _data(str(exc)) from exc
        deviations = np.linspace(req.lo, req.hi, req.steps)
        try:
            result = crypto.key_sensitivity_sweep(
                image, key, req.parameter, deviations,
                beta_channel=not req.baseline_frft,
            )
        except ValueError as exc:
            raise _usage(str(exc)) from exc
        return schemas.SweepResponse(
            parameter=result.parameter,
            deviations=list(result.deviations),
            mse=list(result.mse),
            skipped=list(result.skipped),
        )

    @app.post("/v1/selftest", response_model=schemas.SelfTestResponse)
    def selftest_endpoint():
        checks = selftest.run_selftest()
        return schemas.SelfTestResponse(
            passed=all(c.passed for c in checks),
            checks=[
                schemas.SelfTestCheckModel(
                    name=c.name, max_error=c.max_error, tolerance=c.tolerance, passed=c.passed
                )
                for c in checks
            ],
        )

    return app


app = create_app()
