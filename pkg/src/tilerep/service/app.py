"""FastAPI front end over the pipeline.

Engine errors surface as HTTP 400 with a structured detail object whose
"kind" field ("input" or "budget") tells clients which exit code to use.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, pipeline
from ..errors import BudgetError, InputError
from .models import (
    ApproximantRequest,
    ApproximantResponse,
    CountRequest,
    CountResponse,
    FactorsRequest,
    FactorsResponse,
    LimitRequest,
    LimitResponse,
    ServiceInfo,
)

app = FastAPI(
    title="tilerep",
    version=__version__,
    description=(
        "Representation varieties Hom(F_k, G)/G of substitution-tiling "
        "approximants and their direct limits under the substitution-induced map."
    ),
)


@app.exception_handler(BudgetError)
async def _budget_error(request: Request, exc: BudgetError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": {"kind": "budget", "message": str(exc)}})


@app.exception_handler(InputError)
async def _input_error(request: Request, exc: InputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": {"kind": "input", "message": str(exc)}})


@app.get("/", response_model=ServiceInfo)
def info() -> dict:
    return {
        "name": "tilerep",
        "version": __version__,
        "endpoints": ["/count", "/limit", "/based-limit", "/approximant", "/factors"],
    }


@app.post("/count", response_model=CountResponse, response_model_exclude_none=True)
def count(req: CountRequest) -> dict:
    return pipeline.run_count(req.group, req.rank, req.budget)


def _check_rank(report: dict, expected: int | None):
    if expected is not None and report["rank"] != expected:
        raise InputError(f"rank override {expected} does not match actual rank {report['rank']}")
    return report


@app.post("/limit", response_model=LimitResponse, response_model_exclude_none=True)
def limit(req: LimitRequest) -> dict:
    report = pipeline.run_limit(
        req.group, req.rule, req.endo, collar=req.collar, budget=req.budget, based=False
    )
    return _check_rank(report, req.rank)


@app.post("/based-limit", response_model=LimitResponse, response_model_exclude_none=True)
def based_limit(req: LimitRequest) -> dict:
    report = pipeline.run_limit(
        req.group, req.rule, req.endo, collar=req.collar, budget=req.budget, based=True
    )
    return _check_rank(report, req.rank)


@app.post("/approximant", response_model=ApproximantResponse, response_model_exclude_none=True)
def approximant(req: ApproximantRequest) -> dict:
    return pipeline.run_approximant(req.rule, req.collar)


@app.post("/factors", response_model=FactorsResponse, response_model_exclude_none=True)
def factors(req: FactorsRequest) -> dict:
    return pipeline.run_factors(req.rule, req.length)
