"""Capture API responses as fixtures for the web frontend's tests.

Runs the real service in-process, performs the form-model flow, strips
volatile fields (ids, timestamps), and writes the JSON bodies under
frontend/tests/fixtures/. tests/test_webapp_contract.py re-runs the same
flow live and asserts the bodies still match, so the frontend's stubbed
responses are guaranteed to be what the API actually returns.
"""
from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT))

from fastapi.testclient import TestClient  # noqa: E402

from modelhub.server.app import ServerConfig, create_app  # noqa: E402
from tests.hub_helpers import auth, form_spec, submission_files  # noqa: E402

OUT = ROOT / "frontend" / "tests" / "fixtures"

EXAMPLE_ROW = {"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0, "color": "red"}
EVAL_LABELS = ["no", "yes", "no", "yes", "no", "yes"]


def strip_volatile(node, drop=("model_id", "track_id", "playground_id", "submitted_at",
                               "activated_at", "created_at", "left_model_id", "right_model_id",
                               "id")):
    if isinstance(node, dict):
        return {
            k: strip_volatile(v, drop) for k, v in node.items() if k not in drop
        }
    if isinstance(node, list):
        return [strip_volatile(v, drop) for v in node]
    return node


def run_flow(client: TestClient, key: str) -> dict:
    h = auth(key)
    pg = client.post(
        "/playgrounds",
        headers=h,
        json={
            "input_type": "tabular",
            "task_type": "classification",
            "visibility": "public",
            "y_train": ["no", "yes"],
            "example_data": [EXAMPLE_ROW],
        },
    ).json()
    track = client.post(
        f"/playgrounds/{pg['id']}/tracks",
        headers=h,
        json={"kind": "experiment", "eval_labels": EVAL_LABELS},
    ).json()

    model = (ROOT / "tests" / "fixtures" / "form_mlp_7_5_2.onnx").read_bytes()
    first = client.post(
        f"/tracks/{track['id']}/submissions",
        headers=h,
        files=submission_files(
            model,
            EVAL_LABELS,
            preprocessor=form_spec(),
            custom_metadata={"framework": "demo", "epochs": 3},
        ),
    ).json()

    small = (ROOT / "tests" / "fixtures" / "mlp_4_8_3.onnx").read_bytes()
    wide = (ROOT / "tests" / "fixtures" / "mlp_4_16_3.onnx").read_bytes()
    second = client.post(
        f"/tracks/{track['id']}/submissions",
        headers=h,
        files=submission_files(small, EVAL_LABELS, preprocessor=None),
    ).json()
    third = client.post(
        f"/tracks/{track['id']}/submissions",
        headers=h,
        files=submission_files(wide, EVAL_LABELS, preprocessor=None),
    ).json()

    assert (
        client.post(
            f"/playgrounds/{pg['id']}/deploy", headers=h, json={"version": 1}
        ).status_code
        == 200
    )

    schema = client.get(f"/playgrounds/{pg['id']}/schema").json()
    predict = client.post(
        f"/playgrounds/{pg['id']}/predict", json={"records": [EXAMPLE_ROW]}
    ).json()
    board = client.get(f"/tracks/{track['id']}/leaderboard").json()
    compare_small_wide = client.get(
        f"/models/{second['model_id']}/compare/{third['model_id']}"
    ).json()
    compare_identity = client.get(
        f"/models/{second['model_id']}/compare/{second['model_id']}"
    ).json()
    playground = client.get(f"/playgrounds/{pg['id']}").json()
    csv_header = (
        client.get(f"/tracks/{track['id']}/leaderboard", params={"format": "csv"})
        .text.splitlines()[0]
        .split(",")
    )

    return {
        "schema": schema,
        "predict_response": predict,
        "leaderboard": board,
        "compare_small_wide": compare_small_wide,
        "compare_identity": compare_identity,
        "playground": playground,
        "leaderboard_csv_header": csv_header,
    }


def capture() -> dict:
    tmp = tempfile.mkdtemp(prefix="ui-fixtures-")
    app = create_app(ServerConfig(data_dir=tmp))
    key = app.state.registry.mint_api_key("demo")
    with TestClient(app) as client:
        bodies = run_flow(client, key)
    return {name: strip_volatile(body) for name, body in bodies.items()}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, body in capture().items():
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")
    (OUT / "example_row.json").write_text(json.dumps(EXAMPLE_ROW, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
