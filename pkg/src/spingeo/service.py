"""HTTP service wrapping the verification engine.

POST /verify runs the requested suites on a configured model space and
returns the full report; POST /table returns only the structure-constant
tables.  Reports are deterministic for a fixed config and seed: residuals
are serialized as decimal strings and timings live in a separate key.
"""

from __future__ import annotations

import time
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, field_validator, model_validator

from .model_space import model_space
from .suites import SUITES, run_suites


class RunConfig(BaseModel):
    space: str = Field(description="flat | sphere | hyperbolic")
    dim: int = Field(ge=2, le=6)
    curvature: Optional[float] = None
    suites: list[str] = Field(min_length=1)
    samples: int = Field(default=100, ge=4, le=10000)
    tolerance: float = Field(default=1e-8, gt=0)
    seed: int = 0
    box_halfwidth: Optional[float] = Field(default=None, gt=0)
    exclusion_margin: float = Field(default=0.1, ge=0.0, lt=1.0)

    @field_validator("space")
    @classmethod
    def _known_space(cls, v):
        if v not in ("flat", "sphere", "hyperbolic"):
            raise ValueError(f"unknown space kind {v!r}")
        return v

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, v):
        unknown = [s for s in v if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suites {unknown}; available: {sorted(SUITES)}")
        return v

    @model_validator(mode="after")
    def _curvature_sign(self):
        k = self.curvature
        if self.space == "flat" and k not in (None, 0, 0.0):
            raise ValueError("flat space requires curvature 0")
        if self.space == "sphere" and k is not None and k <= 0:
            raise ValueError("sphere requires curvature > 0")
        if self.space == "hyperbolic" and k is not None and k >= 0:
            raise ValueError("hyperbolic space requires curvature < 0")
        return self


class CheckModel(BaseModel):
    name: str
    identity: str
    max_residual: str
    tolerance: str
    passed: bool
    asserted: bool
    mode: str
    samples: int
    note: str = ""


class VerificationReport(BaseModel):
    config: RunConfig
    checks: list[CheckModel]
    tables: dict
    timings: dict
    overall_pass: bool


class TableReport(BaseModel):
    config: RunConfig
    tables: dict
    overall_pass: bool


class SuiteInfo(BaseModel):
    suites: list[str]


def execute(config: RunConfig) -> VerificationReport:
    """Run the configured suites; deterministic apart from the timings."""
    ms = model_space(config.space, config.dim, config.curvature,
                     box_halfwidth=config.box_halfwidth,
                     exclusion_margin=config.exclusion_margin)
    t0 = time.perf_counter()
    checks, tables, timings = run_suites(ms, config.suites, config.samples,
                                         config.tolerance, config.seed)
    timings = {**{k: round(v, 6) for k, v in timings.items()},
               "total": round(time.perf_counter() - t0, 6)}
    records = [
        CheckModel(name=c.name, identity=c.identity,
                   max_residual=f"{c.max_residual:.15e}",
                   tolerance=f"{c.tolerance:.15e}",
                   passed=c.passed, asserted=c.asserted, mode=c.mode,
                   samples=c.samples, note=c.note)
        for c in checks
    ]
    overall = all(c.passed for c in checks if c.asserted)
    return VerificationReport(config=config, checks=records, tables=tables,
                              timings=timings, overall_pass=overall)


app = FastAPI(
    title="spingeo verification service",
    description="Residual verification of spin-geometry identities on "
                "constant-curvature model spaces",
    version="0.1.0",
)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/suites", response_model=SuiteInfo)
def list_suites():
    return SuiteInfo(suites=sorted(SUITES))


@app.post("/verify", response_model=VerificationReport)
def verify(config: RunConfig):
    try:
        return execute(config)
    except ValueError as err:
        raise HTTPException(status_code=422, detail=str(err))


@app.post("/table", response_model=TableReport)
def table(config: RunConfig):
    try:
        report = execute(config)
    except ValueError as err:
        raise HTTPException(status_code=422, detail=str(err))
    return TableReport(config=config, tables=report.tables,
                       overall_pass=report.overall_pass)
