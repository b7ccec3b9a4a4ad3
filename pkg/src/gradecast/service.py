"""HTTP/JSON prediction service.

Endpoints: GET /api/schema, GET /api/models, POST /api/predict, and
GET /api/health. The service is stateless apart from the read-only model
registry assembled at startup, so any request ordering yields identical
responses. Predictions go through the same library calls as the CLI.

Wire format for responses: each variable is an integer offset from the
scale minimum, so the lowest answer is 0 and the highest is
``scale.max - scale.min``. Factor-granularity models aggregate these
variable responses server-side and echo the factor sums.
"""

from __future__ import annotations

import json
from typing import Mapping, Optional, Union

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .errors import GradecastError
from .linear import LinearModel
from .published import (
    FINAL_MODEL_IDS,
    MODEL_DESCRIPTIONS,
    model_features,
    builtin_model,
    predict_model,
)
from .schema import FACTOR_FEATURES, VARIABLE_IDS, QuestionnaireSchema, active_schema
from .tree import ModelTree

RegisteredModel = Union[LinearModel, ModelTree]


def _granularity_of(model: RegisteredModel) -> str:
    features = model_features(model)
    if features <= frozenset(VARIABLE_IDS):
        return "variable"
    if features <= frozenset(FACTOR_FEATURES):
        return "factor"
    raise GradecastError(
        "registered models must read questionnaire variables or factors")


def _validate_responses(payload: Mapping, schema: QuestionnaireSchema,
                        ) -> tuple[dict, dict]:
    """Check coverage of x1..x70 and the zero-offset integer coding."""
    span = schema.scale.max - schema.scale.min
    missing = []
    out_of_scale = []
    clean = {}
    for variable in schema.variables:
        if variable.id not in payload:
            missing.append(variable.id)
            continue
        value = payload[variable.id]
        if (isinstance(value, bool) or not isinstance(value, int)
                or not 0 <= value <= span):
            out_of_scale.append(variable.id)
            continue
        clean[variable.id] = value
    return clean, {"missing": missing, "out_of_scale": out_of_scale}


def create_app(custom_models: Optional[Mapping[str, RegisteredModel]] = None,
               schema: Optional[QuestionnaireSchema] = None,
               static_dir: Optional[str] = None) -> FastAPI:
    """Assemble the service around an immutable model registry."""
    schema = schema or active_schema()
    registry: dict[str, RegisteredModel] = {
        model_id.value: builtin_model(model_id) for model_id in FINAL_MODEL_IDS
    }
    descriptions = {
        model_id.value: MODEL_DESCRIPTIONS[model_id] for model_id in FINAL_MODEL_IDS
    }
    for name, model in (custom_models or {}).items():
        _granularity_of(model)  # reject models off the questionnaire
        registry[name] = model
        descriptions[name] = "Custom model registered at startup"

    listing = [
        {"id": name, "granularity": _granularity_of(registry[name]),
         "description": descriptions[name]}
        for name in registry
    ]

    app = FastAPI(title="gradecast", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/api/schema")
    def get_schema() -> dict:
        return schema.to_dict()

    @app.get("/api/models")
    def get_models() -> list:
        return listing

    @app.post("/api/predict")
    async def predict(request: Request) -> JSONResponse:
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return JSONResponse({"detail": "malformed JSON body"},
                                status_code=400)
        if (not isinstance(body, dict)
                or not isinstance(body.get("model"), str)
                or not isinstance(body.get("responses"), dict)):
            return JSONResponse(
                {"detail": "body must be {\"model\": id, \"responses\": {...}}"},
                status_code=422)
        model = registry.get(body["model"])
        if model is None:
            return JSONResponse({"detail": f"unknown model {body['model']!r}"},
                                status_code=404)
        responses, problems = _validate_responses(body["responses"], schema)
        if problems["missing"] or problems["out_of_scale"]:
            return JSONResponse(problems, status_code=422)
        prediction = predict_model(model, responses)
        payload = {"raw": prediction.raw, "clamped": prediction.clamped,
                   "model": body["model"]}
        if prediction.factor_values is not None:
            payload["factor_values"] = prediction.factor_values
        return JSONResponse(payload)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="frontend")

    return app
