"""Pydantic request/response models for the coincidence-scan service."""
from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field


class DelayScanRequest(BaseModel):
    """Four-fold rate versus inter-pass delay (delay in units of t_c)."""

    first: str = "psi-minus"
    second: str = "psi-minus"
    basis_a: str = "hv"
    basis_b: str = "pm"
    dt_min: float = 0.0
    dt_max: float = 3.0
    steps: int = Field(41, ge=1, description="number of grid points")
    t_c: float = Field(1.0, gt=0, description="coherence time")
    omega: float = Field(0.0, ge=0, description="pass-phase frequency in cycles per t_c")
    phase_mode: str = "averaged"
    n_d: int = Field(1, ge=1, le=8)
    weights: Optional[List[float]] = None
    pass_ratio: float = Field(1.0, gt=0)


class ScanResponse(BaseModel):
    control_name: str
    control: List[float]
    probability: List[float]
    metadata: dict


class TableRequest(BaseModel):
    basis_a: str = "hv"
    basis_b: str = "pm"


class TableCell(BaseModel):
    kind: str  # "B" or "A"
    ratio: float


class TableResponse(BaseModel):
    basis_a: str
    basis_b: str
    order: List[str]
    cells: List[List[TableCell]]


class ModesSweepRequest(BaseModel):
    max_n: int = Field(6, ge=1, le=8)
    basis_a: str = "hv"
    basis_b: str = "pm"


class ModesRow(BaseModel):
    n_d: int
    probability: float
    alpha_min: float


class ModesSweepResponse(BaseModel):
    rows: List[ModesRow]


class AlphaSweepRequest(BaseModel):
    basis_a: str = "hv"
    basis_b: str = "pm"
    steps: int = Field(21, ge=2)
    alpha_lo: Optional[float] = None  # defaults to the two-mode lower bound
    alpha_hi: float = Field(1.0, le=1.0)


class AlphaSweepResponse(BaseModel):
    alpha: List[float]
    ratio: List[float]
    crossover: Optional[float]
    note: str = ""


class VisibilityRequest(BaseModel):
    alpha: Optional[float] = None
    n_d: int = Field(1, ge=1, le=8)
    weights: Optional[List[float]] = None
    steps: int = Field(21, ge=2)


class VisibilityResponse(ScanResponse):
    visibility: float


class StateDumpRequest(BaseModel):
    source: str = Field("double-pass", pattern="^(double-pass|multimode)$")
    first: str = "psi-minus"
    second: str = "psi-minus"
    dt: float = 0.0
    t_c: float = Field(1.0, gt=0)
    omega: float = Field(0.0, ge=0)
    n_d: int = Field(1, ge=1, le=8)
    weights: Optional[List[float]] = None
    pass_ratio: float = Field(1.0, gt=0)


class StateRecord(BaseModel):
    occupation: List[List]  # [[mode-string, count], ...]
    re: float
    im: float


class StateDumpResponse(BaseModel):
    source: str
    records: List[StateRecord]


class HealthResponse(BaseModel):
    status: str = "ok"
