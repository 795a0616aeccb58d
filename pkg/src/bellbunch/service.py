"""HTTP service exposing the delay scans, sweeps and state dumps.

All endpoints are pure computations over the request body; probabilities
are reported in arbitrary units, normalized to the fully-distinguishable
(gamma = 0) reference where one exists.
"""
from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException

from .detection import (
    KIND_ORDER,
    NoInterferenceError,
    PhaseMode,
    bunching_table,
    crossover_alpha,
    delay_scan,
    dip_peak_ratio,
    modes_scaling_point,
    visibility_scan,
)
from .fock import ZeroStateError
from .schemas import (
    AlphaSweepRequest,
    AlphaSweepResponse,
    DelayScanRequest,
    HealthResponse,
    ModesRow,
    ModesSweepRequest,
    ModesSweepResponse,
    ScanResponse,
    StateDumpRequest,
    StateDumpResponse,
    TableCell,
    TableRequest,
    TableResponse,
    VisibilityRequest,
    VisibilityResponse,
)
from .sources import (
    AlphaModel,
    BellKind,
    SourceConfig,
    alpha_min,
    double_pass_fourphoton,
    multimode_fourphoton,
)
from .transforms import BasisKind, OverlapModel

app = FastAPI(title="bellbunch", description="Bell-state bunching simulator")


def _source_config(n_d: int, weights=None, pass_ratio: float = 1.0) -> SourceConfig:
    if weights is None:
        return SourceConfig.equal_weights(n_d, pass_ratio=pass_ratio)
    if len(weights) != n_d:
        raise ValueError("weights must have one entry per mode")
    mean = sum(weights) / len(weights)
    if mean <= 0:
        raise ValueError("mode weights must have positive mean")
    scaled = tuple(w / mean for w in weights)
    return SourceConfig(n_d=n_d, weights=scaled, phases=(0.0,) * n_d,
                        pass_ratio=pass_ratio)


def _overlap_model(t_c: float, omega_cycles: float) -> OverlapModel:
    # the request's omega is in cycles per t_c; the model wants rad/time
    return OverlapModel(t_c=t_c, omega=2.0 * math.pi * omega_cycles / t_c)


def _grid(lo: float, hi: float, steps: int) -> list[float]:
    if steps == 1:
        return [lo]
    if hi <= lo:
        raise ValueError("grid upper bound must exceed lower bound")
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


def _physics_failure(exc: Exception) -> HTTPException:
    return HTTPException(status_code=409, detail=str(exc))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse()


@app.post("/scan-delay", response_model=ScanResponse)
def scan_delay(req: DelayScanRequest) -> ScanResponse:
    try:
        cfg = _source_config(req.n_d, req.weights, req.pass_ratio)
        model = _overlap_model(req.t_c, req.omega)
        grid_tc = _grid(req.dt_min, req.dt_max, req.steps)
        result = delay_scan(
            BellKind.parse(req.first),
            BellKind.parse(req.second),
            BasisKind.parse(req.basis_a),
            BasisKind.parse(req.basis_b),
            [u * req.t_c for u in grid_tc],
            model,
            PhaseMode.parse(req.phase_mode),
            cfg,
        )
    except ValueError as exc:
        raise _bad_request(exc)
    except (NoInterferenceError, ZeroStateError) as exc:
        raise _physics_failure(exc)
    reference = result.metadata["reference"]
    if reference <= 0.0:
        raise _physics_failure(
            ZeroStateError("vanishing distinguishable-pass reference rate"))
    metadata = dict(result.metadata)
    metadata["reference_raw"] = reference
    metadata["reference"] = 1.0
    metadata["delay_units"] = "t_c"
    return ScanResponse(
        control_name="dt",
        control=grid_tc,
        probability=[p / reference for p in result.probability],
        metadata=metadata,
    )


@app.post("/table", response_model=TableResponse)
def table(req: TableRequest) -> TableResponse:
    try:
        basis_a = BasisKind.parse(req.basis_a)
        basis_b = BasisKind.parse(req.basis_b)
        if basis_a is basis_b:
            raise ValueError("bases must be mutually unbiased for the bunching protocol")
    except ValueError as exc:
        raise _bad_request(exc)
    try:
        grid = bunching_table(basis_a, basis_b)
    except NoInterferenceError as exc:
        raise _physics_failure(exc)
    return TableResponse(
        basis_a=basis_a.value,
        basis_b=basis_b.value,
        order=[k.value for k in KIND_ORDER],
        cells=[[TableCell(kind=c.kind.value, ratio=c.ratio) for c in row]
               for row in grid],
    )


@app.post("/modes-sweep", response_model=ModesSweepResponse)
def modes_sweep(req: ModesSweepRequest) -> ModesSweepResponse:
    try:
        basis_a = BasisKind.parse(req.basis_a)
        basis_b = BasisKind.parse(req.basis_b)
        rows = [
            ModesRow(
                n_d=n,
                probability=modes_scaling_point(n, basis_a, basis_b),
                alpha_min=alpha_min(n),
            )
            for n in range(1, req.max_n + 1)
        ]
    except ValueError as exc:
        raise _bad_request(exc)
    return ModesSweepResponse(rows=rows)


@app.post("/alpha-sweep", response_model=AlphaSweepResponse)
def alpha_sweep(req: AlphaSweepRequest) -> AlphaSweepResponse:
    try:
        basis_a = BasisKind.parse(req.basis_a)
        basis_b = BasisKind.parse(req.basis_b)
        lo = alpha_min(2) if req.alpha_lo is None else req.alpha_lo
        if not alpha_min(2) <= lo <= req.alpha_hi <= 1.0:
            raise ValueError(
                f"alpha range must lie within [{alpha_min(2)}, 1]")
        alphas = _grid(lo, req.alpha_hi, req.steps)
        ratios = [dip_peak_ratio(a, basis_a, basis_b) for a in alphas]
    except ValueError as exc:
        raise _bad_request(exc)
    try:
        crossover = crossover_alpha(basis_a, basis_b)
        note = ""
    except NoInterferenceError as exc:
        crossover = None
        note = str(exc)
    return AlphaSweepResponse(alpha=alphas, ratio=ratios,
                              crossover=crossover, note=note)


@app.post("/visibility", response_model=VisibilityResponse)
def visibility(req: VisibilityRequest) -> VisibilityResponse:
    try:
        if req.alpha is not None:
            source: AlphaModel | SourceConfig = AlphaModel(req.alpha)
            if req.alpha < alpha_min(2):
                raise ValueError(
                    f"alpha below the two-mode bound {alpha_min(2)}")
        else:
            source = _source_config(req.n_d, req.weights)
        grid = _grid(0.0, math.pi / 4, req.steps)
        result, vis = visibility_scan(source, grid)
    except ValueError as exc:
        raise _bad_request(exc)
    except (NoInterferenceError, ZeroStateError) as exc:
        raise _physics_failure(exc)
    return VisibilityResponse(
        control_name="angle",
        control=list(result.control),
        probability=list(result.probability),
        metadata=result.metadata,
        visibility=vis,
    )


@app.post("/state-dump", response_model=StateDumpResponse)
def state_dump(req: StateDumpRequest) -> StateDumpResponse:
    try:
        cfg = _source_config(req.n_d, req.weights, req.pass_ratio)
        if req.source == "double-pass":
            model = _overlap_model(req.t_c, req.omega)
            state = double_pass_fourphoton(
                BellKind.parse(req.first),
                BellKind.parse(req.second),
                req.dt * req.t_c,
                model,
                cfg=cfg,
            )
        else:
            state, _ = multimode_fourphoton(cfg, BellKind.parse(req.first))
    except ValueError as exc:
        raise _bad_request(exc)
    except ZeroStateError as exc:
        raise _physics_failure(exc)
    return StateDumpResponse(source=req.source, records=state.to_records())
