"""Pydantic request/response models for the HTTP service.

Binary payloads (PGM rasters, FRC1 fields) travel base64-encoded; angles
travel as strings so exact 'kpi/m' literals survive the wire.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

_U64_MAX = 2**64 - 1


class KeyModel(BaseModel):
    alpha1: str
    alpha2: str
    gamma1: str
    gamma2: str
    beta: float = Field(gt=0.0, lt=2.0)
    seed1: int = Field(ge=0, le=_U64_MAX)
    seed2: int = Field(ge=0, le=_U64_MAX)


class FrftRequest(BaseModel):
    input_b64: str
    input_format: Literal["pgm", "frc1"] = "pgm"
    order: tuple[str, str]
    path: Literal["fast", "direct"] = "fast"
    inverse: bool = False
    amplitude: Optional[Literal["linear", "log"]] = None
    surface: bool = False


class FrftResponse(BaseModel):
    field_b64: str
    amplitude_b64: Optional[str] = None
    surface_b64: Optional[str] = None


class RieszRequest(BaseModel):
    input_b64: str
    input_format: Literal["pgm", "frc1"] = "pgm"
    order: tuple[str, str]
    beta: Optional[float] = None
    transform_axis: Optional[Literal[1, 2]] = None
    laplacian_z: Optional[float] = None
    oracle: bool = False
    path: Literal["fast", "direct"] = "fast"
    oversample: int = Field(default=4, ge=1, le=16)
    amplitude: Optional[Literal["linear", "log"]] = None
    output_image: bool = False


class RieszResponse(BaseModel):
    field_b64: str
    amplitude_b64: Optional[str] = None
    image_b64: Optional[str] = None


class EncryptRequest(BaseModel):
    image_b64: str
    key: KeyModel
    beta_channel: bool = True


class EncryptResponse(BaseModel):
    cipher_b64: str


class DecryptRequest(BaseModel):
    cipher_b64: str
    key: KeyModel
    beta_channel: bool = True
    reference_b64: Optional[str] = None  # original PGM; enables the MSE report


class DecryptResponse(BaseModel):
    image_b64: str
    mse_vs_reference: Optional[float] = None


class SweepRequest(BaseModel):
    image_b64: str
    key: KeyModel
    parameter: Literal["alpha1", "alpha2", "gamma1", "gamma2", "beta"]
    lo: float
    hi: float
    steps: int = Field(ge=1)
    baseline_frft: bool = False


class SweepResponse(BaseModel):
    parameter: str
    deviations: list[float]
    mse: list[float]
    skipped: list[float]


class SelfTestCheckModel(BaseModel):
    name: str
    max_error: float
    tolerance: float
    passed: bool


class SelfTestResponse(BaseModel):
    passed: bool
    checks: list[SelfTestCheckModel]


class ErrorDetail(BaseModel):
    category: Literal["usage", "data"]
    message: str
