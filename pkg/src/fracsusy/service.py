"""HTTP service wrapping the driver layer.

Every endpoint is a stateless POST taking a configuration body and returning
the same payloads the CLI prints as JSON.  Configuration problems map to
HTTP 422, successful runs always return 200 with an explicit `passed` flag
where applicable.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .drivers import (
    ConfigError,
    RunConfig,
    export_operator,
    run_coherent,
    run_spectrum,
    run_verify,
)

app = FastAPI(
    title="fracsusy",
    description="Graded ladder-algebra verification service: relation suites, "
    "spectra, coherent-state evolution, and operator export.",
    version="0.1.0",
)


class ConfigModel(BaseModel):
    k: int = 3
    n_max: int = Field(default=20, ge=1)
    guard: int = 4
    kind: str = "unit"
    c: float = 0.0
    cs: list[float] = Field(default_factory=list)
    realization: str = "abstract"
    atol: float = 1e-10
    rtol: float = 1e-10

    def to_run_config(self) -> RunConfig:
        try:
            return RunConfig(
                k=self.k,
                n_max=self.n_max,
                guard=self.guard,
                kind=self.kind,
                c=self.c,
                cs=tuple(self.cs),
                realization=self.realization,
                atol=self.atol,
                rtol=self.rtol,
                fmt="json",
            )
        except ConfigError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc


class CheckModel(BaseModel):
    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""


class VerifyResponse(BaseModel):
    title: str
    passed: bool
    checks: list[CheckModel]


class SpectrumRequest(ConfigModel):
    variant: str = "oscillator"
    levels: int = Field(default=6, ge=1)


class SpectrumLevelModel(BaseModel):
    energy: float
    multiplicity: int
    states: list[list[int]]


class SpectrumResponse(BaseModel):
    levels: list[SpectrumLevelModel]
    k: int
    guard: int


class CoherentRequest(ConfigModel):
    z_re: float = 0.5
    z_im: float = 0.0
    t: float = 0.37


class EvolutionModel(BaseModel):
    t: float
    k: int
    grade_residuals: list[float]
    grade0_extra_phase: list[float]
    grade0_extra_phase_residual: float
    unitarity_residual: float


class CoherentResponse(BaseModel):
    z: list[float]
    t: float
    k: int
    eigenvector_residual: float
    evolution: EvolutionModel


class ExportRequest(ConfigModel):
    operator: str = "K"


class MatrixResponse(BaseModel):
    dim: int
    entries: list[list[float]]


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/verify", response_model=VerifyResponse)
def verify(request: ConfigModel) -> VerifyResponse:
    config = request.to_run_config()
    try:
        report = run_verify(config)
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return VerifyResponse(
        title=report.title,
        passed=report.passed,
        checks=[CheckModel(**c.to_dict()) for c in report.checks],
    )


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum(request: SpectrumRequest) -> SpectrumResponse:
    config = request.to_run_config()
    try:
        report = run_spectrum(config, request.variant, request.levels)
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return SpectrumResponse(**report.to_dict())


@app.post("/coherent", response_model=CoherentResponse)
def coherent(request: CoherentRequest) -> CoherentResponse:
    config = request.to_run_config()
    try:
        result = run_coherent(config, complex(request.z_re, request.z_im), request.t)
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return CoherentResponse(**result)


@app.post("/export", response_model=MatrixResponse)
def export(request: ExportRequest) -> MatrixResponse:
    config = request.to_run_config()
    try:
        payload = export_operator(config, request.operator)
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return MatrixResponse(**payload)
