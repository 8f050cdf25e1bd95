"""FastAPI app implementing the /generate, /classify and /healthz endpoints.

Wire contract (shared with the fec-forge client):

    POST /generate {"inputs": [str,...], "num_beams": int, "max_new_tokens": int}
        -> {"outputs": [str,...]}, outputs[i] corresponding to inputs[i]
    POST /classify {"claim": str, "evidence": [str,...]}
        -> {"probs": {"SUPPORTED": float, "REFUTED": float, "NEI": float}}

Schema violations answer 400; engine failures answer 500 with a message.
Generation requests are processed in sub-batches of the configured
maximum batch size; clients see a single response either way.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from fec_model_server.config import ServerConfig
from fec_model_server.engines import build_engines


class GenerateRequest(BaseModel):
    inputs: list[str] = Field(min_length=1)
    num_beams: int = Field(default=5, ge=1)
    max_new_tokens: int = Field(default=256, ge=1)


class ClassifyRequest(BaseModel):
    claim: str
    evidence: list[str] = Field(default_factory=list)


def create_app(config: ServerConfig | None = None) -> FastAPI:
    config = config or ServerConfig()
    generator, classifier = build_engines(config)
    app = FastAPI(title="fec-model-server")

    @app.exception_handler(RequestValidationError)
    async def schema_violation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.post("/generate")
    def generate(request: GenerateRequest) -> dict:
        outputs: list[str] = []
        try:
            for start in range(0, len(request.inputs), config.max_batch_size):
                batch = request.inputs[start : start + config.max_batch_size]
                outputs.extend(
                    generator.generate(batch, request.num_beams, request.max_new_tokens)
                )
        except Exception as exc:
            return JSONResponse(status_code=500, content={"error": f"generation failed: {exc}"})
        if len(outputs) != len(request.inputs):
            return JSONResponse(
                status_code=500,
                content={"error": "engine returned a mismatched output count"},
            )
        return {"outputs": outputs}

    @app.post("/classify")
    def classify(request: ClassifyRequest):
        if not request.claim.strip():
            return JSONResponse(status_code=400, content={"error": "claim is empty"})
        try:
            probs = classifier.classify(request.claim, request.evidence)
        except Exception as exc:
            return JSONResponse(
                status_code=500, content={"error": f"classification failed: {exc}"}
            )
        return {"probs": probs}

    return app
