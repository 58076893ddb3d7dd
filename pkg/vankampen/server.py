import asyncio
import json
import logging
import uuid
from typing import Any, Dict, List, Optional, Union

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse
from pydantic import BaseModel
import uvicorn

from .            import __version__
from .complex     import CombinatorialComplex, ParsedComplex, pi1_complex, pi1_via_cover, xmod_of_complex
from .config      import settings as default_settings
from .double      import LawSuite, lambda_squares
from .equivalence import roundtrip_dg, roundtrip_xmod
from .errors      import VanKampenError
from .fox         import boundary_matrix, kernel_basis_candidate, pi2_kernel_search, vector_to_dict
from .xmod        import CrossedModule, validate_xmod

logger = logging.getLogger(__name__)

# --- Globals ---
app = FastAPI(
    title="vankampen API",
    description="Fundamental groupoids of registered complexes and checks on registered crossed modules.",
    version=__version__,
)

# Named complexes and crossed modules
REGISTRY: Dict[str, Union[ParsedComplex, CrossedModule]] = {}

# Asynchronous round trips
TASK_STORE: Dict[str, Dict[str, Any]] = {}


# --- Pydantic Models ---
class ComplexRequest(BaseModel):
    name: str
    base: Optional[List[str]] = None

class KernelRequest(ComplexRequest):
    support: int = 3
    coeff: int = 3
    radius: Optional[int] = None

class XModRequest(BaseModel):
    name: str

class LawRequest(XModRequest):
    laws: Optional[List[str]] = None
    sample: bool = False

class TaskCreationResponse(BaseModel):
    task_id: str
    status: str

class TaskStatusResponse(BaseModel):
    task_id: str
    status: str
    result: Any = None


# --- Helper Functions ---
def register(name: str, obj: Union[ParsedComplex, CombinatorialComplex, CrossedModule]):
    """Makes a complex or a crossed module available to the API under `name`."""
    if isinstance(obj, CombinatorialComplex):
        obj = ParsedComplex(obj)
    logger.info("Registering '%s'.", name)
    REGISTRY[name] = obj


def _lookup(name: str, kind: type):
    if name not in REGISTRY:
        raise HTTPException(status_code=404, detail=f"'{name}' not found in registry.")
    obj = REGISTRY[name]
    if not isinstance(obj, kind):
        raise HTTPException(status_code=404, detail=f"'{name}' is not a {kind.__name__}.")
    return obj


def _base(parsed: ParsedComplex, base: Optional[List[str]]) -> List[str]:
    return list(base or parsed.base or [min(c) for c in parsed.complex.components()])


def _domain(func, *args):
    try:
        return func(*args)
    except VanKampenError as e:
        raise HTTPException(status_code=422, detail=str(e))


async def _run_task_async(task_id: str, name: str):
    """The background worker for a round trip."""
    try:
        X = REGISTRY[name]
        TASK_STORE[task_id]['status'] = 'running'
        settings = default_settings()
        reports = await asyncio.to_thread(
            lambda: [roundtrip_xmod(X, settings), roundtrip_dg(lambda_squares(X, settings), settings)])
        TASK_STORE[task_id]['status'] = 'completed'
        TASK_STORE[task_id]['result'] = [r.to_dict() for r in reports]
    except Exception as e:
        logger.exception("Round trip of %s failed.", name)
        TASK_STORE[task_id]['status'] = 'failed'
        TASK_STORE[task_id]['result'] = str(e)


# --- API Endpoints ---

@app.post("/v1/pi1", summary="Present the fundamental groupoid of a complex")
async def pi1(request: ComplexRequest):
    parsed = _lookup(request.name, ParsedComplex)
    P = _domain(pi1_complex, parsed.complex, _base(parsed, request.base))
    return P.to_dict()


@app.post("/v1/pi1-cover", summary="Fundamental groupoid as a coequaliser over a cover")
async def pi1_cover(request: ComplexRequest):
    parsed = _lookup(request.name, ParsedComplex)
    P, report = _domain(pi1_via_cover, parsed.complex, parsed.cover, _base(parsed, request.base))
    return {"presentation": P.to_dict(), "comparison": report.to_dict()}


@app.post("/v1/fox", summary="Fox matrix of the 2-cells")
async def fox(request: ComplexRequest):
    parsed = _lookup(request.name, ParsedComplex)

    def build():
        F = xmod_of_complex(parsed.complex, _base(parsed, request.base))
        return boundary_matrix(F.quotient, F.relators)

    return _domain(build).to_dict()


@app.post("/v1/pi2", summary="Bounded kernel search for the second homotopy module")
async def pi2(request: KernelRequest):
    parsed = _lookup(request.name, ParsedComplex)

    def search():
        F = xmod_of_complex(parsed.complex, _base(parsed, request.base))
        Mx = boundary_matrix(F.quotient, F.relators)
        vectors = pi2_kernel_search(Mx, request.support, request.coeff, request.radius)
        basis = kernel_basis_candidate(vectors)
        return {"relators": list(F.relators), "count": len(vectors),
                "basis": vector_to_dict(basis, F.relators) if basis is not None else None}

    return _domain(search)


@app.post("/v1/xmod/check", summary="Check the crossed-module axioms")
async def xmod_check(request: XModRequest):
    X = _lookup(request.name, CrossedModule)
    return _domain(validate_xmod, X).to_dict()


@app.post("/v1/laws/stream", summary="Run the double-groupoid law suite and stream events")
async def laws_stream(request: LawRequest):
    """
    Streams Server-Sent Events: start, progress, violation, then end with the report.
    """
    X = _lookup(request.name, CrossedModule)
    suite = _domain(lambda: LawSuite(lambda_squares(X), request.laws, sample=request.sample))

    async def event_generator():
        try:
            for event in suite.run(stream=True):
                payload = dict(event.payload)
                if 'result' in payload:
                    payload['result'] = payload['result'].to_dict()
                yield f"data: {json.dumps({'source': event.source, 'type': event.type, 'payload': payload}, ensure_ascii=False)}\n\n"
                await asyncio.sleep(0.01)
        except asyncio.CancelledError:
            logger.info("Client disconnected from stream.")

    return StreamingResponse(event_generator(), media_type="text/event-stream")


@app.post("/v1/roundtrip", response_model=TaskCreationResponse, summary="Run round trips asynchronously")
async def roundtrip(request: XModRequest):
    """
    Starts both round trips in the background and returns a task ID; poll
    /v1/tasks/{task_id} for the reports.
    """
    _lookup(request.name, CrossedModule)
    task_id = str(uuid.uuid4())
    TASK_STORE[task_id] = {"status": "pending", "result": None}
    asyncio.create_task(_run_task_async(task_id, request.name))
    return TaskCreationResponse(task_id=task_id, status="pending")


@app.get("/v1/tasks/{task_id}", response_model=TaskStatusResponse, summary="Get task status and result")
async def get_task_status(task_id: str):
    if task_id not in TASK_STORE:
        raise HTTPException(status_code=404, detail="Task not found.")
    return TaskStatusResponse(task_id=task_id, **TASK_STORE[task_id])


def run(host: str = "127.0.0.1", port: int = 8000):
    """
    Starts the API server. Complexes and crossed modules must be registered
    with `register()` first.
    """
    logger.info("Starting vankampen API server at http://%s:%d", host, port)
    uvicorn.run(app, host=host, port=port)
