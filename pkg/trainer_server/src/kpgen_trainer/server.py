"""HTTP inference server.

Endpoints and shapes match what the kpgen HTTP backend speaks:
POST /generate, POST /count_tokens, GET /health. Schema violations get
a 400, inference failures a 500 with a message. Model calls are
serialized per worker process with a lock; scale worker count for
parallelism, not threads.
"""

import math
import os
import threading

import torch
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from .modeling import load_checkpoint

CHECKPOINT_ENV = "KPGEN_TRAINER_CHECKPOINT"


class GenerateRequest(BaseModel):
    text: str
    num_beams: int = Field(ge=1)
    max_length: int = Field(ge=1)
    num_return_sequences: int = Field(ge=1)

    @model_validator(mode="after")
    def _sequences_within_beams(self):
        if self.num_return_sequences > self.num_beams:
            raise ValueError(
                f"num_return_sequences ({self.num_return_sequences}) "
                f"must not exceed num_beams ({self.num_beams})"
            )
        return self


class CountTokensRequest(BaseModel):
    text: str


def create_app(checkpoint: str | None = None) -> FastAPI:
    checkpoint = checkpoint or os.environ.get(CHECKPOINT_ENV)
    if not checkpoint:
        raise RuntimeError(f"no checkpoint given and {CHECKPOINT_ENV} is unset")
    tokenizer, model = load_checkpoint(checkpoint)

    app = FastAPI(title="kpgen-trainer inference server")
    app.state.tokenizer = tokenizer
    app.state.model = model
    app.state.inference_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/count_tokens")
    def count_tokens(request: CountTokensRequest):
        # Content tokens only; the wrapper tokens a model input would add
        # are reported alongside, not mixed into the count.
        ids = app.state.tokenizer(request.text, add_special_tokens=False)["input_ids"]
        return {
            "count": len(ids),
            "special_token_overhead": app.state.tokenizer.num_special_tokens_to_add(pair=False),
        }

    @app.post("/generate")
    def generate(request: GenerateRequest):
        try:
            sequences = _run_generation(app.state, request)
        except Exception as exc:
            return JSONResponse(
                status_code=500, content={"error": f"inference failed: {exc}"}
            )
        return {"sequences": sequences}

    return app


def _run_generation(state, request: GenerateRequest) -> list[dict]:
    tokenizer = state.tokenizer
    # max_length is an upper bound; clamping to what the model's position
    # table can hold degrades gracefully instead of failing the request.
    positions = getattr(state.model.config, "max_position_embeddings", None)
    limit = min(int(tokenizer.model_max_length), 1_000_000)
    max_length = request.max_length
    if positions is not None:
        limit = min(limit, positions)
        max_length = min(max_length, positions)
    with state.inference_lock, torch.inference_mode():
        encoded = tokenizer(
            request.text, truncation=True, max_length=limit, return_tensors="pt"
        )
        kwargs = dict(
            num_beams=request.num_beams,
            num_return_sequences=request.num_return_sequences,
            max_length=max_length,
            output_scores=True,
            return_dict_in_generate=True,
        )
        if request.num_beams > 1:
            kwargs["early_stopping"] = True
        output = state.model.generate(**encoded, **kwargs)
        if request.num_beams > 1:
            scores = [float(s) for s in output.sequences_scores]
        else:
            # Greedy output carries no aggregate score; average the
            # per-step transition scores to match beam score semantics.
            transitions = state.model.compute_transition_scores(
                output.sequences, output.scores, normalize_logits=True
            )
            scores = [float(transitions.mean()) if transitions.numel() else 0.0]
        texts = state.tokenizer.batch_decode(output.sequences, skip_special_tokens=True)

    # JSON has no NaN/Inf; a degenerate model must not yield an unparsable body.
    scores = [s if math.isfinite(s) else -1e9 for s in scores]
    ranked = sorted(zip(texts, scores), key=lambda pair: -pair[1])
    return [{"text": text, "score": score} for text, score in ranked]


def serve(checkpoint, host: str = "127.0.0.1", port: int = 8000, workers: int = 1) -> None:
    """Run the server until interrupted. Blocks."""
    import uvicorn

    os.environ[CHECKPOINT_ENV] = str(checkpoint)
    uvicorn.run(
        "kpgen_trainer.server:create_app",
        factory=True,
        host=host,
        port=port,
        workers=workers,
    )
