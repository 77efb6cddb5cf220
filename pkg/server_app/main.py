import logging
import os
from contextlib import asynccontextmanager
from typing import Any, Callable

import uvicorn
from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from virasoro_engine.config import configure_logging, get_settings
from virasoro_engine.errors import EngineError
from virasoro_engine.service import EngineTools

from .models import (
    ActRequest,
    BracketCheckRequest,
    ClassifyRequest,
    ClosureRequest,
    IsoVerifyRequest,
    KacRequest,
    OmegaRequest,
    SimplicityRequest,
    SingularRequest,
)

# Load environment variables
load_dotenv()

configure_logging()
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("Starting up and reading engine settings...")
    app.state.settings = get_settings()
    logger.info(f"Engine settings: {app.state.settings.model_dump(mode='json')}")

    yield

    logger.info("Shutting down Virasoro engine server.")


# Initialize FastAPI app
app = FastAPI(title="Virasoro Engine Server", version="1.0.0", lifespan=lifespan)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _run(name: str, operation: Callable[[], dict]) -> dict:
    try:
        return operation()
    except EngineError as e:
        logger.warning(f"{name} rejected: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error processing {name}: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))


def _module(request: Any) -> dict:
    return request.module.model_dump(mode="json", exclude_none=True)


@app.get("/")
async def root():
    """Health check endpoint"""
    return {"message": "Virasoro Engine Server is running"}


@app.post("/simplicity")
def simplicity(request: SimplicityRequest):
    """Simplicity verdict of any catalog module"""
    return _run("simplicity", lambda: EngineTools.simplicity(_module(request), bound=request.bound, exact=request.exact))


@app.post("/kac")
def kac(request: KacRequest):
    return _run("kac", lambda: EngineTools.kac(request.theta, request.h, request.max_kl))


@app.post("/singular")
def singular(request: SingularRequest):
    return _run("singular", lambda: EngineTools.singular(request.theta, request.h, request.level))


@app.post("/act")
def act(request: ActRequest):
    return _run(
        "act", lambda: EngineTools.act(_module(request), k=request.k, element=request.element, vector=request.vector)
    )


@app.post("/omega-op")
def omega_op(request: OmegaRequest):
    return _run(
        "omega-op",
        lambda: EngineTools.omega_op(_module(request), s=request.s, l=request.l, m=request.m, vector=request.vector),
    )


@app.post("/iso-verify")
def iso_verify(request: IsoVerifyRequest):
    """Induced-module isomorphism report on a truncation window"""
    return _run("iso-verify", lambda: EngineTools.iso_verify(_module(request), window=request.window))


@app.post("/closure")
def closure(request: ClosureRequest):
    """Truncated cyclic closure and its submodule shape"""
    return _run(
        "closure",
        lambda: EngineTools.closure(
            _module(request),
            generators=request.generators,
            window=request.window,
            margin=request.margin,
            random_count=request.random_count,
            seed=request.seed,
            include_basis=request.include_basis,
            include_cyclic=request.include_cyclic,
        ),
    )


@app.post("/bracket-check")
def bracket_check(request: BracketCheckRequest):
    return _run(
        "bracket-check",
        lambda: EngineTools.bracket_check(_module(request), index_range=request.index_range, degree=request.degree),
    )


@app.post("/classify")
def classify(request: ClassifyRequest):
    return _run(
        "classify",
        lambda: EngineTools.classify(
            request.first.model_dump(mode="json", exclude_none=True),
            request.second.model_dump(mode="json", exclude_none=True),
            bound=request.bound,
        ),
    )


if __name__ == "__main__":
    host = os.getenv("SERVER_HOST", "localhost")
    port = int(os.getenv("SERVER_PORT", "8000"))

    logger.info(f"Starting server on {host}:{port}")
    uvicorn.run("server_app.main:app", host=host, port=port, reload=True)
