"""HTTP service exposing the toolkit.

JSON-in, JSON-out wrappers around the library: generate instances,
solve for the exact transversal and 2-packing numbers, run the
inequality suite, and compare or canonicalise instances.  Instances on
the wire use the same shape as the instance file format.  Run with:

    uvicorn linesys.service:app

Domain errors (invalid systems, bad parameters) come back as HTTP 422.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .canon import DEFAULT_MAX_NODES as CANON_MAX_NODES
from .canon import SearchBudgetExceeded, canonical_form, is_isomorphic
from .constructions import (
    build_c,
    build_cnn,
    enumerate_c44,
    matching,
    pad_uniform,
    projective_plane,
    random_linear_system,
    star,
)
from .core import LinearSystem, LinearSystemError, new_system
from .solvers import (
    DEFAULT_MAX_NODES,
    SearchBudget,
    SolveResult,
    transversal_number,
    two_packing_number,
)
from . import verify as verify_mod

app = FastAPI(title="linesys", version="0.1.0")


class Instance(BaseModel):
    points: int = Field(ge=0)
    lines: list[list[int]]

    @classmethod
    def from_system(cls, s: LinearSystem) -> "Instance":
        return cls(points=s.num_points, lines=[list(l) for l in s.lines])

    def to_system(self) -> LinearSystem:
        return new_system(self.points, self.lines)


class Labeling(BaseModel):
    name: str
    point_labels: list[str]
    line_labels: list[str]


class GenerateRequest(BaseModel):
    construction: Literal["cnn", "plane", "C", "matching", "star", "random"]
    n: int | None = None
    q: int | None = None
    m: int | None = None
    k: int | None = None
    r: int | None = None
    points: int | None = None
    lines: int | None = None
    min_size: int | None = None
    max_size: int | None = None
    seed: int | None = None


class GenerateResponse(BaseModel):
    instance: Instance
    labeling: Labeling | None = None


class PadRequest(BaseModel):
    instance: Instance
    r: int


class SolveRequest(BaseModel):
    instance: Instance
    what: Literal["tau", "nu2", "both"] = "both"
    max_nodes: int = DEFAULT_MAX_NODES
    deterministic: bool = True


class SolveValue(BaseModel):
    optimum: int
    witness: list[int]
    nodes_explored: int
    proven_optimal: bool

    @classmethod
    def from_result(cls, r: SolveResult) -> "SolveValue":
        return cls(
            optimum=r.optimum,
            witness=list(r.witness),
            nodes_explored=r.nodes_explored,
            proven_optimal=r.proven_optimal,
        )


class SolveResponse(BaseModel):
    tau: SolveValue | None = None
    nu2: SolveValue | None = None


class VerifyRequest(BaseModel):
    instances: list[Instance] = []
    family: Literal["cnn", "planes", "c44", "random"] | None = None
    ns: list[int] = [3, 5, 7]
    orders: list[int] = [2, 3]
    count: int = 20
    seed: int = 1
    max_nodes: int = DEFAULT_MAX_NODES


class IsoRequest(BaseModel):
    first: Instance
    second: Instance
    max_nodes: int = CANON_MAX_NODES


class IsoResponse(BaseModel):
    result: Literal["isomorphic", "not-isomorphic", "undecided"]


class CanonRequest(BaseModel):
    instance: Instance
    max_nodes: int = CANON_MAX_NODES


class CanonResponse(BaseModel):
    canonical: str


class C44Entry(BaseModel):
    instance: Instance
    restored_points: list[str]
    restored_lines: list[str]


@app.exception_handler(LinearSystemError)
async def _domain_error(_request: Request, exc: LinearSystemError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(SearchBudgetExceeded)
async def _budget_error(_request: Request, exc: SearchBudgetExceeded) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": f"undecided: {exc}"})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/generate", response_model=GenerateResponse)
def generate(req: GenerateRequest) -> GenerateResponse:
    labeling = None
    if req.construction == "cnn":
        system, labeling = build_cnn(_need(req.n, "n"))
    elif req.construction == "plane":
        system, labeling = projective_plane(_need(req.q, "q"))
    elif req.construction == "C":
        system, labeling = build_c()
    elif req.construction == "matching":
        system = matching(_need(req.m, "m"), _need(req.r, "r"))
    elif req.construction == "star":
        system = star(_need(req.k, "k"), _need(req.r, "r"))
    else:
        system = random_linear_system(
            _need(req.points, "points"),
            _need(req.lines, "lines"),
            (_need(req.min_size, "min_size"), _need(req.max_size, "max_size")),
            _need(req.seed, "seed"),
        )
    out = GenerateResponse(instance=Instance.from_system(system))
    if labeling is not None:
        out.labeling = Labeling(
            name=labeling.name,
            point_labels=list(labeling.point_labels),
            line_labels=list(labeling.line_labels),
        )
    return out


def _need(value, name: str):
    if value is None:
        raise LinearSystemError(f"missing parameter {name!r}")
    return value


@app.post("/pad", response_model=Instance)
def pad(req: PadRequest) -> Instance:
    padded, _ = pad_uniform(req.instance.to_system(), req.r)
    return Instance.from_system(padded)


@app.get("/c44", response_model=list[C44Entry])
def c44() -> list[C44Entry]:
    return [
        C44Entry(
            instance=Instance.from_system(member.system),
            restored_points=list(member.restored_point_labels),
            restored_lines=list(member.restored_line_labels),
        )
        for member in enumerate_c44()
    ]


@app.post("/solve", response_model=SolveResponse)
def solve(req: SolveRequest) -> SolveResponse:
    system = req.instance.to_system()
    budget = SearchBudget(req.max_nodes, req.deterministic)
    out = SolveResponse()
    if req.what in ("tau", "both"):
        out.tau = SolveValue.from_result(transversal_number(system, budget))
    if req.what in ("nu2", "both"):
        out.nu2 = SolveValue.from_result(two_packing_number(system, budget))
    return out


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    instances = [
        (f"instance_{i}", inst.to_system()) for i, inst in enumerate(req.instances)
    ]
    if req.family == "cnn":
        instances += verify_mod.cnn_family(req.ns)
    elif req.family == "planes":
        instances += verify_mod.plane_family(req.orders)
    elif req.family == "c44":
        instances += verify_mod.c44_family()
    elif req.family == "random":
        instances += verify_mod.random_family(req.count, req.seed)
    if not instances:
        raise LinearSystemError("nothing to verify: give instances or a family")
    suite = verify_mod.run_suite(instances, SearchBudget(req.max_nodes))
    doc = suite.to_jsonable()
    doc["exit_code"] = suite.exit_code()
    return doc


@app.post("/iso", response_model=IsoResponse)
def iso(req: IsoRequest) -> IsoResponse:
    try:
        same = is_isomorphic(
            req.first.to_system(), req.second.to_system(), req.max_nodes
        )
    except SearchBudgetExceeded:
        return IsoResponse(result="undecided")
    return IsoResponse(result="isomorphic" if same else "not-isomorphic")


@app.post("/canon", response_model=CanonResponse)
def canon(req: CanonRequest) -> CanonResponse:
    return CanonResponse(
        canonical=canonical_form(req.instance.to_system(), req.max_nodes).decode()
    )
