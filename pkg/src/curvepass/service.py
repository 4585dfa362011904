"""HTTP authentication service.

Exposes enrollment, challenge issuance and login over JSON/HTTP.  The
client is untrusted: it submits raw polyline points plus its canvas size,
and the server does the discretization, so geometry constraints cannot be
bypassed by sending a hand-crafted cell trace.  Pass-image lists and
original (non-degraded) rasters are never sent out during login.
"""

from __future__ import annotations

import itertools
import socket
import threading
import time

import uvicorn
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from .config import ServiceConfig
from .engine import AuthEngine, MemoryUserStore
from .errors import (
    AlreadyEnrolled,
    DuplicateImage,
    LockedOut,
    OutOfBounds,
    UnknownChallenge,
    UnknownImage,
    UnknownUser,
    WrongCount,
)
from .grid import GridSpec, discretize
from .images import degrade, generate_synthetic_catalog, load_catalog
from .store import JsonUserStore


class EnrollBody(BaseModel):
    image_ids: list[str] = Field(min_length=1)


class CanvasBody(BaseModel):
    width: float
    height: float


class LoginBody(BaseModel):
    challenge_id: str
    polyline: list[tuple[float, float]] = Field(min_length=1)
    canvas: CanvasBody


def build_engine(config: ServiceConfig) -> AuthEngine:
    if config.catalog_manifest:
        catalog = load_catalog(config.catalog_manifest)
    else:
        catalog = generate_synthetic_catalog(
            config.rows * config.cols, seed=config.catalog_seed
        )
    store = JsonUserStore(config.state_path) if config.state_path else MemoryUserStore()
    return AuthEngine(
        catalog,
        config.policy(),
        user_store=store,
        ttl=config.challenge_ttl,
        lockout_threshold=config.lockout_threshold,
    )


def create_app(config: ServiceConfig | None = None, engine: AuthEngine | None = None) -> FastAPI:
    config = config or ServiceConfig()
    engine = engine or build_engine(config)
    app = FastAPI(title="curvepass", docs_url=None, redoc_url=None)
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )
    app.state.engine = engine
    app.state.config = config

    # degraded variants are what login screens fetch; render them once
    degraded_png = {
        img.id: degrade(img, config.degrade_params()).png_bytes()
        for img in engine.catalog
    }
    # deterministic layout sequence in test mode only
    test_seeds = (
        itertools.count(config.test_seed) if config.test_seed is not None else None
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_body(_req: Request, _exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed_body"})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/catalog")
    def catalog_listing():
        # ids and labels only; rasters are never served outside a challenge
        return {
            "images": [{"id": img.id, "label": img.label} for img in engine.catalog],
            "grid": {"rows": config.rows, "cols": config.cols},
            "password_length": config.password_length,
        }

    @app.post("/users/{user_id}/enroll", status_code=201)
    def enroll(user_id: str, body: EnrollBody):
        try:
            engine.enroll(user_id, body.image_ids)
        except AlreadyEnrolled as exc:
            raise HTTPException(status_code=409, detail=exc.code)
        except (WrongCount, DuplicateImage, UnknownImage) as exc:
            raise HTTPException(status_code=400, detail=exc.code)
        return {"user_id": user_id, "enrolled": True}

    @app.post("/users/{user_id}/challenge")
    def issue_challenge(user_id: str):
        seed = next(test_seeds) if test_seeds is not None else None
        try:
            challenge = engine.issue_challenge(user_id, seed=seed)
        except UnknownUser as exc:
            raise HTTPException(status_code=404, detail=exc.code)
        except LockedOut as exc:
            raise HTTPException(status_code=423, detail=exc.code)
        return {
            "challenge_id": challenge.challenge_id,
            "grid": {"rows": config.rows, "cols": config.cols},
            "placement": [
                {"cell": [cell.row, cell.col], "image_id": image_id}
                for image_id, cell in challenge.placement.items()
            ],
            "head_image": challenge.head_image,
            "tail_image": challenge.tail_image,
            "expires_at": challenge.expires_at,
        }

    @app.post("/login")
    def login(body: LoginBody):
        try:
            engine.get_challenge(body.challenge_id)
        except UnknownChallenge as exc:
            raise HTTPException(status_code=404, detail=exc.code)
        try:
            grid = GridSpec(
                config.rows, config.cols, body.canvas.width, body.canvas.height
            )
            trace = discretize(body.polyline, grid)
        except (OutOfBounds, ValueError) as exc:
            code = exc.code if isinstance(exc, OutOfBounds) else "malformed_polyline"
            raise HTTPException(status_code=400, detail=code)
        outcome = engine.validate_trace(body.challenge_id, trace)
        return {"accepted": outcome.accepted, "reason": outcome.reason.value}

    @app.get("/images/{challenge_id}/{image_id}")
    def degraded_image(challenge_id: str, image_id: str):
        try:
            challenge = engine.get_challenge(challenge_id)
        except UnknownChallenge as exc:
            raise HTTPException(status_code=404, detail=exc.code)
        if time.time() > challenge.expires_at:
            raise HTTPException(status_code=404, detail="expired")
        png = degraded_png.get(image_id)
        if png is None:
            raise HTTPException(status_code=404, detail="unknown_image")
        return Response(content=png, media_type="image/png")

    return app


class EmbeddedServer:
    """Uvicorn on a loopback port in a background thread.

    Used by the CLI simulator and the test suite so scripted logins travel
    through the same HTTP surface as interactive clients.
    """

    def __init__(self, app: FastAPI, host: str = "127.0.0.1", port: int = 0) -> None:
        self._server = uvicorn.Server(
            uvicorn.Config(app, host=host, port=port, log_level="error")
        )
        self._thread = threading.Thread(target=self._server.run, daemon=True)
        self.host = host
        self.port: int | None = None

    def __enter__(self) -> "EmbeddedServer":
        self._thread.start()
        deadline = time.time() + 10.0
        while not self._server.started:
            if time.time() > deadline:
                raise RuntimeError("server failed to start")
            time.sleep(0.01)
        sock: socket.socket = self._server.servers[0].sockets[0]
        self.port = sock.getsockname()[1]
        return self

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def __exit__(self, *exc) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=10.0)
