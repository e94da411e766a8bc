"""Stateless JSON-over-HTTP facade over the engine.

Every endpoint is a pure function of its request body and returns an
envelope with the inputs echo, result, warnings, and engine version.
Malformed bodies yield 400 with field-level messages; domain errors
yield 422 carrying the engine error name.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, heuristics, tables
from .errors import BayescreenError
from .estimators import (
    BetaParams,
    CohortObservation,
    DensityGrid,
    ValidationData,
    baxter_posterior_known,
    baxter_posterior_unknown,
    beta_moments,
    beta_update,
    posterior_summary,
    rogan_gladen,
)
from .screening import (
    TestCharacteristics,
    fagan_coordinates,
    logit,
    positive_lr,
    posttest_exact,
    ppv,
    prevalence_threshold,
)

MAX_DENSITY_POINTS = 512

app = FastAPI(title="bayescreen", version=__version__,
              openapi_url="/v1/spec")


@app.exception_handler(RequestValidationError)
async def _validation_handler(request: Request, exc: RequestValidationError):
    details = [
        {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
        for err in exc.errors()
    ]
    return JSONResponse(status_code=400, content={"errors": details})


@app.exception_handler(BayescreenError)
async def _domain_handler(request: Request, exc: BayescreenError):
    return JSONResponse(
        status_code=422,
        content={"error": type(exc).__name__, "message": str(exc)},
    )


def _envelope(inputs: dict, result: dict, warnings: list[str] | None = None):
    return {
        "inputs": inputs,
        "result": result,
        "warnings": warnings or [],
        "version": __version__,
    }


class TestBody(BaseModel):
    sens: float = Field(ge=0, le=1)
    spec: float = Field(ge=0, le=1)


class PpvBody(TestBody):
    pretest: float = Field(ge=0, le=1)


class PosttestBody(BaseModel):
    pretest: float = Field(ge=0, le=1)
    kappa: float = Field(gt=0)


class FindingBody(BaseModel):
    label: str
    kappa: float = Field(gt=0)


class PretestBody(BaseModel):
    findings: list[FindingBody]
    baseline_prevalence: float | None = Field(default=None, ge=0, le=1)
    constant: float = Field(default=5.0, gt=0)
    sens: float | None = Field(default=None, ge=0, le=1)
    spec: float | None = Field(default=None, ge=0, le=1)


class NomogramBody(BaseModel):
    pretest: float = Field(gt=0, lt=1)
    kappa: float = Field(gt=0)


class RoganGladenBody(TestBody):
    t: int = Field(ge=0)
    n: int = Field(ge=0)
    level: float = Field(default=0.95, gt=0, lt=1)


class BetaBody(BaseModel):
    t: int = Field(ge=0)
    n: int = Field(ge=0)
    alpha: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, gt=0)


class BaxterBody(TestBody):
    t: int = Field(ge=0)
    n: int = Field(ge=0)
    level: float = Field(default=0.95, gt=0, lt=1)


class BaxterUnknownBody(BaseModel):
    t: int = Field(ge=0)
    n: int = Field(ge=0)
    n_a: int = Field(ge=0)
    t_a: int = Field(ge=0)
    n_b: int = Field(ge=0)
    t_b: int = Field(ge=0)
    level: float = Field(default=0.95, gt=0, lt=1)


class AuditBody(BaseModel):
    slope: float = Field(default=0.22, gt=0)


class CategoryBody(BaseModel):
    p: float = Field(ge=0, le=1)
    test_positive: bool | None = None


class PowerClassBody(BaseModel):
    kappa: float = Field(gt=0)


def _downsample(d: DensityGrid) -> dict:
    """Max-preserving decimation to at most MAX_DENSITY_POINTS points."""
    n = d.support.size
    if n <= MAX_DENSITY_POINTS:
        idx = np.arange(n)
    else:
        idx = np.unique(np.concatenate([
            np.round(np.linspace(0, n - 1, MAX_DENSITY_POINTS - 1)).astype(int),
            [int(np.argmax(d.values))],
        ]))
    return {
        "support": d.support[idx].tolist(),
        "values": d.values[idx].tolist(),
        "full_grid_size": int(n),
    }


def _summary_dict(summary) -> dict:
    return {
        "mean": summary.mean,
        "mode": summary.mode,
        "variance": summary.variance,
        "credible_interval": list(summary.credible_interval),
        "level": summary.level,
    }


@app.get("/v1/health")
async def health():
    return {"status": "ok", "version": __version__}


@app.post("/v1/ppv")
async def ppv_endpoint(body: PpvBody):
    test = TestCharacteristics(body.sens, body.spec)
    return _envelope(body.model_dump(), {"ppv": ppv(test, body.pretest)})


@app.post("/v1/threshold")
async def threshold_endpoint(body: TestBody):
    test = TestCharacteristics(body.sens, body.spec)
    return _envelope(
        body.model_dump(),
        {"prevalence_threshold": prevalence_threshold(test)},
    )


@app.post("/v1/lr")
async def lr_endpoint(body: TestBody):
    test = TestCharacteristics(body.sens, body.spec)
    value = positive_lr(test)
    # JSON cannot carry Infinity; a perfectly specific test reports
    # null with the flag set.
    infinite = math.isinf(value)
    return _envelope(body.model_dump(), {
        "positive_lr": None if infinite else value,
        "infinite": infinite,
    })


@app.post("/v1/posttest")
async def posttest_endpoint(body: PosttestBody):
    return _envelope(
        body.model_dump(),
        {"posttest": posttest_exact(body.pretest, body.kappa)},
    )


@app.post("/v1/pretest")
async def pretest_endpoint(body: PretestBody):
    fs = heuristics.FindingSet(
        tuple(heuristics.Finding(f.label, f.kappa) for f in body.findings),
        baseline_prevalence=body.baseline_prevalence,
    )
    constant = heuristics.HeuristicConstant(
        slope=1.0 / body.constant, display_divisor=body.constant)
    est = heuristics.pretest_estimate(fs, constant)
    warnings = []
    if est.clamped:
        warnings.append("pretest bound clamped to [0, 1]")
    result = {
        "min": est.min_bound,
        "mean": est.mean,
        "max": est.max_bound,
        "clamped": est.clamped,
        "category": heuristics.medow_lucey_category(est.min_bound).name,
    }
    if body.sens is not None and body.spec is not None:
        test = TestCharacteristics(body.sens, body.spec)
        threshold = prevalence_threshold(test)
        result["prevalence_threshold"] = threshold
        result["min_exceeds_threshold"] = est.min_bound >= threshold
        result["mean_exceeds_threshold"] = est.mean >= threshold
    return _envelope(body.model_dump(), result, warnings)


@app.post("/v1/nomogram")
async def nomogram_endpoint(body: NomogramBody):
    left, mid, right = fagan_coordinates(body.pretest, body.kappa)
    posttest = posttest_exact(body.pretest, body.kappa)
    mcgee = heuristics.mcgee_posttest(body.pretest, body.kappa)
    # Tick positions on the logit axes; probability ticks placed at
    # their log-odds ordinates.
    tick_probs = [0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5,
                  0.7, 0.8, 0.9, 0.95, 0.99, 0.999]
    ticks = [{"p": p, "position": logit(p)} for p in tick_probs]
    return _envelope(body.model_dump(), {
        "left": left,
        "mid": mid,
        "right": right,
        "posttest": posttest,
        "mcgee_posttest": mcgee.value,
        "mcgee_gap": abs(mcgee.value - posttest),
        "axis_ticks": ticks,
    })


@app.post("/v1/estimate/rogan-gladen")
async def rogan_gladen_endpoint(body: RoganGladenBody):
    obs = CohortObservation(n=body.n, t=body.t)
    test = TestCharacteristics(body.sens, body.spec)
    est = rogan_gladen(obs, test, level=body.level)
    warnings = ["raw estimate outside [0, 1]; clamped"] if est.clamped else []
    return _envelope(body.model_dump(), {
        "point": est.point, "lo": est.lo, "hi": est.hi,
        "clamped": est.clamped, "level": est.level,
    }, warnings)


@app.post("/v1/estimate/beta")
async def beta_endpoint(body: BetaBody):
    obs = CohortObservation(n=body.n, t=body.t)
    posterior = beta_update(BetaParams(body.alpha, body.beta), obs)
    moments = beta_moments(posterior)
    return _envelope(body.model_dump(), {
        "alpha": posterior.alpha, "beta": posterior.beta,
        "mean": moments.mean, "variance": moments.variance, "sd": moments.sd,
    })


@app.post("/v1/estimate/baxter")
async def baxter_endpoint(body: BaxterBody):
    obs = CohortObservation(n=body.n, t=body.t)
    test = TestCharacteristics(body.sens, body.spec)
    density = baxter_posterior_known(obs, test)
    summary = posterior_summary(density, level=body.level)
    return _envelope(body.model_dump(), {
        **_summary_dict(summary),
        "density": _downsample(density),
    })


@app.post("/v1/estimate/baxter-unknown")
async def baxter_unknown_endpoint(body: BaxterUnknownBody):
    obs = CohortObservation(n=body.n, t=body.t)
    val = ValidationData(n_a=body.n_a, t_a=body.t_a,
                         n_b=body.n_b, t_b=body.t_b)
    density = baxter_posterior_unknown(obs, val)
    summary = posterior_summary(density, level=body.level)
    return _envelope(body.model_dump(), {
        **_summary_dict(summary),
        "density": _downsample(density),
    })


@app.post("/v1/audit")
async def audit_endpoint(body: AuditBody):
    phi = np.linspace(0.1, 0.9, 81)
    kappa = np.linspace(1.0, 10.0, 91)
    constant = heuristics.HeuristicConstant(slope=body.slope)
    audit = heuristics.heuristic_audit(phi, kappa, constant)
    return _envelope(body.model_dump(), {
        "max_error_core": audit.max_error_core,
        "phi_grid": phi.tolist(),
        "kappa_grid": kappa.tolist(),
    })


@app.post("/v1/category")
async def category_endpoint(body: CategoryBody):
    cat = heuristics.medow_lucey_category(body.p)
    result = {"category": cat.name, "bounds": [cat.lo, cat.hi]}
    if body.test_positive is not None:
        result["updated_category"] = heuristics.medow_lucey_update(
            cat, body.test_positive).name
    return _envelope(body.model_dump(), result)


@app.post("/v1/power-class")
async def power_class_endpoint(body: PowerClassBody):
    pc = heuristics.clinical_power_class(body.kappa)
    return _envelope(body.model_dump(), {
        "power_class": pc.name, "log10_kappa": pc.log10_kappa,
    })


@app.post("/v1/tables")
async def tables_endpoint():
    return _envelope({}, {
        "table3": tables.render_table3(),
        "table4": tables.render_table4(),
    })


def serve(argv: list[str] | None = None) -> None:  # pragma: no cover
    """Run the service; loopback by default, --bind widens."""
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="bayescreen-serve")
    parser.add_argument("--port", type=int, default=8311)
    parser.add_argument("--bind", default="127.0.0.1")
    args = parser.parse_args(argv)
    uvicorn.run(app, host=args.bind, port=args.port)
