"""HTTP surface: playgrounds, tracks, submissions, leaderboards, deploy, predict.

One process serves every playground under `/playgrounds/{id}/...`; the
playground's deployment slot decides which model version answers predictions.
All 4xx bodies carry a machine-readable `code` from errors.ERROR_CODES.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from ..errors import (
    AuthRequiredError,
    ForbiddenError,
    HubError,
    MalformedRequestError,
    NoRuntimeModelError,
    NotFoundError,
    PayloadTooLargeError,
    ValidationError,
)
from ..evalengine import (
    build_leaderboard,
    export_leaderboard,
    finalize_competition,
    reject_if_finalized,
    score_submission,
)
from ..onnx import compare_models, extract_summary, parse_model
from ..onnx.summary import OnnxModelSummary
from ..registry import Registry
from ..runtime.predict import predict as run_predict
from ..runtime.preprocess import PreprocessSpec
from .deploy import DeploymentManager
from .multipart import parse_multipart

MIB = 1024 * 1024


@dataclass
class ServerConfig:
    data_dir: str
    max_model_bytes: int = 512 * MIB
    max_predictions_bytes: int = 10 * MIB
    max_json_part_bytes: int = 10 * MIB
    ui_dir: str | None = None


def _principal(registry: Registry, request: Request) -> str | None:
    """Resolve the bearer key to a user id; absent header means anonymous."""
    header = request.headers.get("authorization")
    if header is None:
        return None
    scheme, _, token = header.partition(" ")
    if scheme.lower() != "bearer" or not token.strip():
        raise AuthRequiredError("malformed Authorization header; expected Bearer key")
    user = registry.resolve_api_key(token.strip())
    if user is None:
        raise AuthRequiredError("unknown or revoked API key")
    return user


async def _json_body(request: Request) -> dict:
    raw = await request.body()
    if not raw:
        raise MalformedRequestError("request body must be a JSON object")
    try:
        body = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedRequestError(f"request body is not valid JSON: {exc}") from None
    if not isinstance(body, dict):
        raise MalformedRequestError("request body must be a JSON object")
    return body


def create_app(config: ServerConfig) -> FastAPI:
    registry = Registry(config.data_dir)
    deployments = DeploymentManager(registry)
    deployments.restore_all()

    app = FastAPI(title="modelhub", docs_url=None, redoc_url=None)
    app.state.registry = registry
    app.state.deployments = deployments
    app.state.config = config

    @app.exception_handler(HubError)
    async def hub_error_handler(request: Request, exc: HubError):
        return JSONResponse(status_code=exc.http_status, content=exc.to_body())

    # --- helpers --------------------------------------------------------------

    def readable_playground(playground_id: str, user: str | None):
        playground = registry.get_playground(playground_id)
        if not playground.readable_by(user):
            raise ForbiddenError("playground is private")
        return playground

    def playground_json(playground) -> dict:
        tracks = registry.list_tracks(playground.id)
        return {
            "id": playground.id,
            "owner": playground.owner,
            "input_type": playground.input_type,
            "task_type": playground.task_type,
            "visibility": playground.visibility,
            "collaborators": sorted(playground.collaborators),
            "created_at": playground.created_at,
            "deployment": playground.deployment.to_json_dict(),
            "labels": playground.y_train_labels,
            "has_example_data": playground.example_data is not None,
            "tracks": [
                {
                    "id": t.id,
                    "kind": t.kind,
                    "policy": t.policy,
                    "finalized": t.finalized,
                    "num_eval_rows": len(t.eval_labels),
                    "num_secret_rows": len(t.split.secret_indices),
                    "num_versions": len(registry.list_versions(t.id)),
                    "created_at": t.created_at,
                }
                for t in tracks
            ],
        }

    def secret_visible(track, playground, user: str | None) -> bool:
        return track.finalized or (user is not None and user == playground.owner)

    def model_json(mv, track, playground, user: str | None) -> dict:
        show_secret = secret_visible(track, playground, user)
        return {
            "model_id": mv.model_id,
            "track_id": mv.track_id,
            "playground_id": track.playground_id,
            "version": mv.version,
            "submitter": mv.submitter,
            "submitted_at": mv.submitted_at,
            "artifact": mv.artifact.to_json_dict(),
            "summary": mv.summary,
            "metrics": mv.scores_public.as_dict(),
            "secret_metrics": mv.scores_secret.as_dict()
            if (show_secret and mv.scores_secret is not None)
            else None,
            "custom_metadata": mv.custom_metadata,
            "preprocessor": mv.preprocessor,
        }

    def load_model_for_read(model_id: str, user: str | None):
        mv = registry.get_model(model_id)
        track = registry.get_track(mv.track_id)
        playground = readable_playground(track.playground_id, user)
        return mv, track, playground

    # --- health / listing -------------------------------------------------------

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.get("/playgrounds")
    async def list_playgrounds(request: Request):
        user = _principal(registry, request)
        items = [
            playground_json(p)
            for p in registry.list_playgrounds()
            if p.readable_by(user)
        ]
        return {"playgrounds": items}

    @app.post("/playgrounds", status_code=201)
    async def create_playground(request: Request):
        user = _principal(registry, request)
        if user is None:
            raise AuthRequiredError("creating a playground requires an API key")
        body = await _json_body(request)
        playground = await run_in_threadpool(
            registry.create_playground,
            user,
            body.get("input_type", ""),
            body.get("task_type", ""),
            body.get("visibility", "public"),
            body.get("example_data"),
            body.get("y_train"),
        )
        return playground_json(playground)

    @app.get("/playgrounds/{playground_id}")
    async def get_playground(playground_id: str, request: Request):
        user = _principal(registry, request)
        return playground_json(readable_playground(playground_id, user))

    @app.post("/playgrounds/{playground_id}/tracks", status_code=201)
    async def create_track(playground_id: str, request: Request):
        user = _principal(registry, request)
        if user is None:
            raise AuthRequiredError("creating a track requires an API key")
        body = await _json_body(request)
        fraction = body.get("secret_fraction")
        track = await run_in_threadpool(
            registry.add_track,
            playground_id,
            body.get("kind", ""),
            body.get("eval_labels"),
            user,
            float(fraction) if fraction is not None else None,
            body.get("seed"),
            body.get("policy", "open"),
        )
        return {
            "id": track.id,
            "playground_id": track.playground_id,
            "kind": track.kind,
            "policy": track.policy,
            "finalized": track.finalized,
            "num_eval_rows": len(track.eval_labels),
            "num_secret_rows": len(track.split.secret_indices),
        }

    # --- submissions ---------------------------------------------------------------

    @app.post("/tracks/{track_id}/submissions", status_code=201)
    async def submit(track_id: str, request: Request):
        user = _principal(registry, request)
        declared = request.headers.get("content-length")
        total_limit = config.max_model_bytes + 64 * MIB
        if declared and declared.isdigit() and int(declared) > total_limit:
            raise PayloadTooLargeError(
                "request exceeds the total upload limit",
                limit_bytes=total_limit,
            )
        body = await request.body()
        if len(body) > total_limit:
            raise PayloadTooLargeError(
                "request exceeds the total upload limit", limit_bytes=total_limit
            )
        parts = parse_multipart(
            request.headers.get("content-type", ""),
            body,
            part_limits={
                "model": config.max_model_bytes,
                "predictions": config.max_predictions_bytes,
                "preprocessor": config.max_json_part_bytes,
                "custom_metadata": config.max_json_part_bytes,
                "example_data": config.max_json_part_bytes,
            },
        )
        result = await run_in_threadpool(_handle_submit, track_id, parts, user)
        return result

    def _json_part(parts: dict, name: str, required: bool = False):
        if name not in parts:
            if required:
                raise MalformedRequestError(f"missing multipart part {name!r}")
            return None
        try:
            return json.loads(parts[name].decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ValidationError(f"part {name!r} is not valid JSON: {exc}") from None

    def _handle_submit(track_id: str, parts: dict, user: str | None) -> dict:
        track = registry.get_track(track_id)
        playground = registry.get_playground(track.playground_id)
        registry.check_submit_allowed(track, playground, user)
        reject_if_finalized(track)

        if "model" not in parts or not parts["model"]:
            raise MalformedRequestError("missing multipart part 'model'")
        predictions = _json_part(parts, "predictions", required=True)
        if not isinstance(predictions, list):
            raise ValidationError("predictions part must be a JSON array")
        preprocessor_raw = _json_part(parts, "preprocessor")
        custom_metadata = _json_part(parts, "custom_metadata") or {}
        example_rows = _json_part(parts, "example_data")

        # stage 1: parse + summarize the model
        model = parse_model(parts["model"])
        summary = extract_summary(model)
        # stage 2: validate the preprocessor spec if supplied
        if preprocessor_raw is not None:
            PreprocessSpec.from_json_dict(preprocessor_raw)
        # stage 3: score against the evaluation data
        public_report, secret_report = score_submission(
            track, playground.task_type, predictions
        )
        # stage 4: persist artifact + record (record write is all-or-nothing)
        artifact = registry.store_blob(parts["model"], media_kind="onnx")
        mv = registry.register_model_version(
            track_id=track_id,
            submitter=user,
            artifact=artifact,
            preprocessor=preprocessor_raw,
            summary=summary.to_json_dict(),
            scores_public=public_report,
            scores_secret=secret_report,
            predictions=predictions,
            custom_metadata=custom_metadata,
        )
        # example data refreshes the playground form only when the team sends it
        if example_rows is not None and playground.team_member(user):
            registry.set_example_data(playground.id, example_rows, caller=user)
        return {
            "model_id": mv.model_id,
            "version": mv.version,
            "metrics": mv.scores_public.as_dict(),
        }

    # --- leaderboards ----------------------------------------------------------------

    @app.get("/tracks/{track_id}/leaderboard")
    async def leaderboard(
        track_id: str,
        request: Request,
        sort: str | None = None,
        format: str = "json",
        scores: str = "public",
    ):
        user = _principal(registry, request)
        track = registry.get_track(track_id)
        playground = readable_playground(track.playground_id, user)
        if scores not in ("public", "secret"):
            raise ValidationError("scores must be 'public' or 'secret'")
        use_secret = scores == "secret"
        show_secret = secret_visible(track, playground, user)
        if use_secret and not show_secret:
            raise ForbiddenError(
                "secret-split scores are revealed at finalization (owner excepted)"
            )
        board = build_leaderboard(
            track,
            playground.task_type,
            registry.list_versions(track_id),
            sort_metric=sort,
            use_secret=use_secret,
            include_secret=show_secret and track.kind == "competition",
        )
        if format == "csv":
            return Response(
                content=export_leaderboard(board, "csv"),
                media_type="text/csv; charset=utf-8",
            )
        if format != "json":
            raise ValidationError("format must be 'json' or 'csv'")
        return board.to_json_dict()

    @app.post("/tracks/{track_id}/finalize")
    async def finalize(track_id: str, request: Request):
        user = _principal(registry, request)
        track = registry.get_track(track_id)
        playground = registry.get_playground(track.playground_id)
        if user is None:
            raise AuthRequiredError("finalizing requires an API key")
        if user != playground.owner:
            raise ForbiddenError("only the playground owner can finalize")
        board = await run_in_threadpool(finalize_competition, registry, track_id)
        return board.to_json_dict()

    # --- model registry reads -----------------------------------------------------------

    @app.get("/models/{model_id}/metadata")
    async def model_metadata(model_id: str, request: Request):
        user = _principal(registry, request)
        mv, track, playground = load_model_for_read(model_id, user)
        return model_json(mv, track, playground, user)

    @app.get("/models/{model_id}/artifact")
    async def model_artifact(model_id: str, request: Request):
        user = _principal(registry, request)
        mv, _, _ = load_model_for_read(model_id, user)
        data = await run_in_threadpool(registry.load_blob, mv.artifact)
        return Response(
            content=data,
            media_type="application/octet-stream",
            headers={
                "X-Content-Hash": mv.artifact.content_hash,
                "ETag": f'"{mv.artifact.content_hash}"',
            },
        )

    @app.get("/models/{model_id}/compare/{other_id}")
    async def model_compare(model_id: str, other_id: str, request: Request):
        user = _principal(registry, request)
        left, _, _ = load_model_for_read(model_id, user)
        right, _, _ = load_model_for_read(other_id, user)
        diff = compare_models(
            OnnxModelSummary.from_json_dict(left.summary),
            OnnxModelSummary.from_json_dict(right.summary),
        )
        return {
            "left_model_id": left.model_id,
            "right_model_id": right.model_id,
            **diff.to_json_dict(),
        }

    # --- deployment + prediction -----------------------------------------------------------

    @app.post("/playgrounds/{playground_id}/deploy")
    async def deploy(playground_id: str, request: Request):
        user = _principal(registry, request)
        playground = registry.get_playground(playground_id)
        if user is None:
            raise AuthRequiredError("deploying requires an API key")
        if not playground.team_member(user):
            raise ForbiddenError("only the owner or collaborators can deploy")
        body = await _json_body(request)
        version = body.get("version")
        if not isinstance(version, int):
            raise ValidationError("body must carry an integer 'version'")
        state = await run_in_threadpool(deployments.deploy, playground_id, version)
        return state.to_json_dict()

    @app.post("/playgrounds/{playground_id}/predict")
    async def predict_endpoint(playground_id: str, request: Request):
        user = _principal(registry, request)
        readable_playground(playground_id, user)
        slot = deployments.active(playground_id)
        if slot is None:
            raise NoRuntimeModelError(
                "no runtime model deployed for this playground"
            )
        body = await _json_body(request)
        records = body.get("records")
        if records is None:
            raise MalformedRequestError(
                "body must be {\"records\": [...]}; see GET /playgrounds/{id}/schema"
            )
        results = await run_in_threadpool(run_predict, slot.runtime, records)
        return {
            "model_version": slot.version,
            "model_id": slot.model_id,
            "results": results,
        }

    @app.get("/playgrounds/{playground_id}/schema")
    async def schema(playground_id: str, request: Request):
        user = _principal(registry, request)
        playground = readable_playground(playground_id, user)
        if playground.input_type == "image":
            return {
                "input_type": "image",
                "fields": [{"name": "image", "type": "image-upload", "example": None}],
            }
        example_rows = None
        if playground.example_data is not None:
            example_rows = json.loads(registry.load_blob(playground.example_data))
        slot = deployments.active(playground_id)
        fields = None
        if slot is not None and slot.runtime.preprocessor is not None:
            spec = slot.runtime.preprocessor
            choices = {
                s.column: list(s.params["categories"])
                for s in spec.steps
                if s.kind == "one_hot"
            }
            fields = [
                {
                    "name": c.name,
                    "type": "categorical" if c.kind == "categorical" else "numeric",
                    **({"choices": choices[c.name]} if c.name in choices else {}),
                }
                for c in spec.columns
            ]
        elif example_rows:
            first = example_rows[0]
            if isinstance(first, dict):
                fields = []
                for key in first:
                    if isinstance(first[key], (int, float)) and not isinstance(first[key], bool):
                        fields.append({"name": key, "type": "numeric"})
                    else:
                        observed = sorted(
                            {str(r.get(key)) for r in example_rows if isinstance(r, dict)}
                        )
                        fields.append(
                            {"name": key, "type": "categorical", "choices": observed}
                        )
        if fields is None:
            raise NotFoundError(
                "no schema available: deploy a model or submit example data"
            )
        if example_rows and isinstance(example_rows[0], dict):
            for f in fields:
                f["example"] = example_rows[0].get(f["name"])
        return {"input_type": "tabular", "fields": fields}

    # --- static UI ------------------------------------------------------------------------

    ui_dir = config.ui_dir
    if ui_dir and Path(ui_dir).is_dir():
        from starlette.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
