# api.py
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

# Add project root to sys.path to allow imports from core
sys.path.append(str(Path(__file__).resolve().parent))

# --- Import Core Modules ---
from core import codec, corpus
from core.codec import ChainComplexModel, SpectrumModel
from core.errors import StabilizerError, UnstableColimitError
from core.spectra import stable_pi_table
from core.verification import CLAIMS, VerificationContext, run_suites

# --- Setup Logger ---
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Stabilizer API",
    description="Exact computations with spectra of chain complexes over F_p.",
    version="0.1.0"
)


# --- Pydantic Models for Request/Response ---
class HomologyRequest(BaseModel):
    complex: ChainComplexModel
    min_degree: int = 0
    max_degree: Optional[int] = None

class HomologyResponse(BaseModel):
    degrees: List[int]
    homology: List[int]

class StablePiRequest(BaseModel):
    builtin: Optional[str] = None
    spectrum: Optional[SpectrumModel] = None
    prime: int = 2
    k_min: int = -3
    k_max: int = 3

class StablePiRow(BaseModel):
    k: int
    value: int
    stage: int

class StablePiResponse(BaseModel):
    rows: List[StablePiRow]

class VerifyRequest(BaseModel):
    suites: List[str] = Field(default_factory=lambda: ["sphere-groups"])
    seed: int = 1
    primes: List[int] = Field(default_factory=lambda: [2])
    random_count: int = 4
    samples: int = 10

class VerifyResponse(BaseModel):
    passed: bool
    counts: Dict[str, int]
    entries: List[Dict[str, Any]]

class BuiltinInfo(BaseModel):
    kind: str
    name: str
    description: str


def _input_error(e: StabilizerError) -> HTTPException:
    if isinstance(e, UnstableColimitError):
        return HTTPException(status_code=409, detail={"message": str(e), "stage": e.stage, "details": e.details})
    logger.warning("rejected request: %s", e)
    return HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")


# --- API Endpoints ---
@app.get("/")
def read_root():
    return {"message": "Welcome to the Stabilizer API. Navigate to /docs for details."}

@app.post("/homology", response_model=HomologyResponse)
def homology_endpoint(request: HomologyRequest):
    try:
        x = codec.complex_from_model(request.complex)
    except StabilizerError as e:
        raise _input_error(e)
    top = x.top + 1 if request.max_degree is None else request.max_degree
    degrees = list(range(request.min_degree, top + 1))
    return HomologyResponse(degrees=degrees, homology=[x.homology(n) for n in degrees])

@app.post("/stable-pi", response_model=StablePiResponse)
def stable_pi_endpoint(request: StablePiRequest):
    if (request.builtin is None) == (request.spectrum is None):
        raise HTTPException(status_code=422, detail="Give exactly one of 'builtin' and 'spectrum'.")
    if request.k_min > request.k_max:
        raise HTTPException(status_code=422, detail="k_min must not exceed k_max.")
    try:
        if request.builtin is not None:
            x = corpus.builtin_spectrum(request.builtin, request.prime)
        else:
            x = codec.spectrum_from_model(request.spectrum)
        rows = stable_pi_table(x, range(request.k_min, request.k_max + 1))
    except StabilizerError as e:
        raise _input_error(e)
    return StablePiResponse(rows=[StablePiRow(k=k, value=v, stage=s) for k, v, s in rows])

@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(request: VerifyRequest):
    ctx = VerificationContext(seed=request.seed, primes=tuple(request.primes),
                              random_count=request.random_count, samples=request.samples)
    try:
        report = run_suites(request.suites, ctx)
    except StabilizerError as e:
        raise _input_error(e)
    data = report.to_dict()
    return VerifyResponse(passed=data["passed"], counts=data["counts"], entries=data["entries"])

@app.get("/suites")
def list_suites_endpoint():
    return {"suites": [{"id": c.id, "statement": c.statement} for c in CLAIMS.values()]}

@app.get("/builtins", response_model=List[BuiltinInfo])
def list_builtins_endpoint():
    out = []
    for kind, table in (("complex", corpus.COMPLEX_BUILTINS), ("spectrum", corpus.BUILTINS),
                        ("symmetric", corpus.SYMMETRIC_BUILTINS)):
        out += [BuiltinInfo(kind=kind, name=b.name, description=b.description) for b in table.values()]
    return out


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="127.0.0.1", port=8000)
