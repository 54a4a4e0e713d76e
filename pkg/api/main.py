"""
FastAPI Application Entry Point

A thin REST wrapper over the doublet library; every endpoint calls the
same functions as the command-line interface.

=== THIS FILE'S RESPONSIBILITIES ===

1. Create the FastAPI app instance
2. Configure middleware (CORS, process-time header)
3. Include routers (health, solve, analysis)
4. Map domain exceptions to HTTP responses
5. Log startup/shutdown

=== ERROR MAPPING ===

    InvalidInputError and subclasses     422
    pydantic.ValidationError (in solver) 422
    ConvergenceError                     500
    InvariantViolationError              500

All errors share one body:
    {"success": false, "error": {"code", "message", "detail", "path"}}

=== RUNNING THE APP ===

Development (with auto-reload):
    uvicorn api.main:app --reload --port 8000

Then visit:
    http://localhost:8000/docs - Swagger UI (interactive docs)
"""

import time
from contextlib import asynccontextmanager
from typing import Callable

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import ValidationError

# Import settings FIRST to ensure .env is loaded
from config.settings import settings
from config.logging_config import get_logger

from api.routers import analysis, health, solve
from src.errors import DoubletError

logger = get_logger(__name__)


# === LIFESPAN EVENTS ===

@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(
        "api_startup",
        newton_grid=settings.newton_grid,
        scan_grid_limit=settings.api_max_scan_grid,
        oracle_grid=settings.oracle_grid,
    )
    yield
    logger.info("api_shutdown")


# === CREATE THE FASTAPI APP ===

app = FastAPI(
    title="Doublet Equilibrium API",
    description="""
    Equilibrium shapes of two adhering cells (three spherical caps).

    ## Features

    * **Solve** - volume- or pressure-prescribed equilibria, with or without line tension
    * **Oracle** - independent brute-force minimum for cross-checking
    * **Analysis** - phase scans, bulging boundary, tension inference
    """,
    version="1.0.0",
    openapi_url="/api/v1/openapi.json",
    docs_url="/docs" if settings.api_docs_enabled else None,
    redoc_url="/redoc" if settings.api_docs_enabled else None,
    lifespan=lifespan,
    license_info={"name": "MIT"},
)


# === MIDDLEWARE ===

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=settings.cors_allow_credentials,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.middleware("http")
async def add_process_time_header(request: Request, call_next: Callable):
    start_time = time.time()
    response = await call_next(request)
    response.headers["X-Process-Time"] = f"{time.time() - start_time:.4f}"
    return response


# === EXCEPTION HANDLERS ===

def _error(status: int, message: str, request: Request, detail=None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={
            "success": False,
            "error": {
                "code": status,
                "message": message,
                "detail": detail,
                "path": str(request.url.path),
            },
        },
    )


@app.exception_handler(DoubletError)
async def doublet_exception_handler(request: Request, exc: DoubletError):
    """Domain errors carry their own HTTP status."""
    logger.warning(
        "api_domain_error",
        path=str(request.url.path),
        error=type(exc).__name__,
        message=exc.message,
    )
    return _error(exc.status_code, exc.message, request, type(exc).__name__)


@app.exception_handler(ValidationError)
async def model_validation_handler(request: Request, exc: ValidationError):
    """A model invariant broken inside a solver (e.g. apex ordering) is invalid input."""
    return _error(422, "Validation Error", request, str(exc))


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    return _error(exc.status_code, str(exc.detail), request, exc.detail)


@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    """Log everything, expose details only with api_debug."""
    logger.exception("api_unexpected_error", path=str(request.url.path))
    detail = str(exc) if settings.api_debug else "An unexpected error occurred"
    return _error(500, "Internal Server Error", request, detail)


# === INCLUDE ROUTERS ===

app.include_router(health.router, prefix="/api/v1/health", tags=["Health"])
app.include_router(solve.router, prefix="/api/v1/solve", tags=["Solve"])
app.include_router(analysis.router, prefix="/api/v1/analysis", tags=["Analysis"])


# === ROOT ENDPOINT ===

@app.get("/", tags=["Root"])
async def root():
    return {
        "name": "Doublet Equilibrium API",
        "version": "1.0.0",
        "status": "running",
        "documentation": "/docs",
        "health": "/api/v1/health",
    }


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "api.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.api_reload,
        log_level="info",
    )
