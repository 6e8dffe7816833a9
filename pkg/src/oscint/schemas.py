"""Pydantic request/response models for the HTTP service.

Rationals travel as strings "p/q" (or "p"), complex values as {re, im};
every response carries schemaVersion for golden-file stability.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class Complex(BaseModel):
    re: float
    im: float


class PolyhedronRequest(BaseModel):
    dim: int = Field(ge=1, le=6)
    phase: str


class PolyhedronResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    n: int
    vertices: list[list[int]]
    facets: list[dict]
    convenient: bool
    diagram: list[dict]


class PairRequest(BaseModel):
    dim: int = Field(ge=1, le=6)
    phase: str
    amp: str = "1"
    seed: int = 0


class PairResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    d: str
    m: int
    gammaPhiF: list[dict]
    essential: list[dict]
    principal: str
    orderBound: int
    signPhiGamma0: str
    nondegenerate: str


class FanRequest(BaseModel):
    dim: int = Field(ge=1, le=6)
    phase: str
    amp: Optional[str] = None


class FanResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    rays: list[list[int]]
    maxCones: list[list[int]]


class ResolveResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    rays: list[list[int]]
    maxCones: list[list[int]]
    charts: list[dict]


class PolesRequest(BaseModel):
    dim: int = Field(ge=1, le=6)
    phase: str
    amp: str = "1"
    nuMax: int = Field(default=10, ge=0)


class PolesResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    leading: str
    candidates: list[dict]


class VerdictRequest(BaseModel):
    dim: int = Field(ge=1, le=6)
    phase: str
    amp: str = "1"
    seed: int = 0
    nuMax: int = Field(default=10, ge=0)


class VerdictResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    dNewton: str
    leadingCandidate: str
    orderBound: int
    claim: str
    beta: Optional[str]
    eta: Optional[int]
    hypotheses: list[dict]
    progressions: list[dict]
    pair: dict
    symmetry: Optional[dict] = None
    amplitudePolynomialOnly: bool = True


class SymmetryRequest(BaseModel):
    dim: int = Field(ge=1, le=6)
    phase: str
    amp: str
    seed: int = 0


class SymmetryResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    dProduct: str
    d1: str
    d2: str
    betaProduct: str
    proportional: bool
    scale: Optional[str]
    hypotheses: dict
    eta: Optional[int] = None


class CutoffSpec(BaseModel):
    shape: Literal["Product", "Radial"] = "Product"
    r: float = 0.25
    R: float = 0.5


class VerifyNumericRequest(BaseModel):
    dim: int = Field(ge=1, le=2)
    phase: str
    amp: str = "1"
    cutoff: CutoffSpec = CutoffSpec()
    tauGrid: str = "2^5..2^14"
    seed: int = 0
    nuMax: int = Field(default=10, ge=0)


class VerifyNumericResponse(BaseModel):
    schemaVersion: int = SCHEMA_VERSION
    seed: int
    cutoff: dict
    samples: list[dict]
    fit: dict
    verdict: dict
    amplitudePolynomialOnly: bool
    betaAgreement: Optional[float] = None
