"""Command-line client (plus admin/server commands) for the hub.

Client commands map 1:1 onto HTTP endpoints; JSON and CSV outputs are
contractual, tables are for humans. Configuration precedence: flags, then
HUB_SERVER / HUB_API_KEY environment variables, then the config file at
~/.config/modelhub/config.json (override with HUB_CONFIG).
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path

import click
import httpx

EXIT_API_ERROR = 1
EXIT_NETWORK = 3

CONFIG_PATH = Path(
    os.environ.get("HUB_CONFIG", Path.home() / ".config" / "modelhub" / "config.json")
)


def _load_config_file() -> dict:
    try:
        return json.loads(CONFIG_PATH.read_text())
    except (OSError, json.JSONDecodeError):
        return {}


class ClientContext:
    def __init__(self, server: str | None, api_key: str | None, output: str):
        file_cfg = _load_config_file()
        self.server = (server or os.environ.get("HUB_SERVER") or file_cfg.get("server") or "").rstrip("/")
        self.api_key = api_key or os.environ.get("HUB_API_KEY") or file_cfg.get("api_key")
        self.output = output

    def client(self) -> httpx.Client:
        if not self.server:
            click.echo("error: no server configured (--server or HUB_SERVER)", err=True)
            sys.exit(2)
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        return httpx.Client(base_url=self.server, headers=headers, timeout=60.0)

    def request(self, method: str, path: str, **kwargs) -> httpx.Response:
        try:
            with self.client() as client:
                resp = client.request(method, path, **kwargs)
        except httpx.HTTPError as exc:
            click.echo(f"network error: {exc}", err=True)
            sys.exit(EXIT_NETWORK)
        if resp.status_code >= 400:
            try:
                body = resp.json()
                code = body.get("code", "http_error")
                message = body.get("message", resp.text)
            except json.JSONDecodeError:
                code, message = "http_error", resp.text
            click.echo(f"error {resp.status_code} {code}: {message}", err=True)
            sys.exit(EXIT_API_ERROR)
        return resp


pass_ctx = click.make_pass_decorator(ClientContext)


def _read_json_file(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error reading {path}: {exc}", err=True)
        sys.exit(2)


def _table(headers: list, rows: list) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(str(cell)))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


@click.group()
@click.option("--server", help="hub server URL (env HUB_SERVER)")
@click.option("--api-key", help="API key (env HUB_API_KEY); never echoed")
@click.option(
    "--format",
    "output",
    type=click.Choice(["table", "json", "csv"]),
    default="table",
    help="output format for listing commands",
)
@click.pass_context
def main(ctx, server, api_key, output):
    """Collaborative model hub client."""
    ctx.obj = ClientContext(server, api_key, output)


# --- playground ------------------------------------------------------------------


@main.group()
def playground():
    """Create and inspect playgrounds."""


@playground.command("create")
@click.option("--input-type", required=True, type=click.Choice(["tabular", "image"]))
@click.option(
    "--task-type", required=True, type=click.Choice(["classification", "regression"])
)
@click.option("--visibility", default="public", type=click.Choice(["public", "private"]))
@click.option("--example-data", type=click.Path(exists=True), help="JSON rows file")
@click.option("--y-train", type=click.Path(exists=True), help="JSON labels file")
@pass_ctx
def playground_create(ctx, input_type, task_type, visibility, example_data, y_train):
    body = {"input_type": input_type, "task_type": task_type, "visibility": visibility}
    if example_data:
        body["example_data"] = _read_json_file(example_data)
    if y_train:
        body["y_train"] = _read_json_file(y_train)
    resp = ctx.request("POST", "/playgrounds", json=body)
    data = resp.json()
    if ctx.output == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(data["id"])


@playground.command("list")
@pass_ctx
def playground_list(ctx):
    data = ctx.request("GET", "/playgrounds").json()
    if ctx.output == "json":
        click.echo(json.dumps(data, indent=2))
        return
    rows = [
        [
            p["id"],
            p["owner"],
            p["input_type"],
            p["task_type"],
            p["visibility"],
            p["deployment"]["active_version"] or "-",
        ]
        for p in data["playgrounds"]
    ]
    click.echo(_table(["id", "owner", "input", "task", "visibility", "active"], rows))


@playground.command("show")
@click.argument("playground_id")
@pass_ctx
def playground_show(ctx, playground_id):
    data = ctx.request("GET", f"/playgrounds/{playground_id}").json()
    click.echo(json.dumps(data, indent=2))


# --- tracks ---------------------------------------------------------------------


@main.group()
def track():
    """Experiment and competition tracks."""


@track.command("create")
@click.option("--playground", "playground_id", required=True)
@click.option("--kind", required=True, type=click.Choice(["experiment", "competition"]))
@click.option("--labels", required=True, type=click.Path(exists=True), help="JSON list file")
@click.option("--secret-fraction", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--policy", default="open", type=click.Choice(["open", "team-only"]))
@pass_ctx
def track_create(ctx, playground_id, kind, labels, secret_fraction, seed, policy):
    body = {"kind": kind, "eval_labels": _read_json_file(labels), "policy": policy}
    if secret_fraction is not None:
        body["secret_fraction"] = secret_fraction
    if seed is not None:
        body["seed"] = seed
    data = ctx.request("POST", f"/playgrounds/{playground_id}/tracks", json=body).json()
    if ctx.output == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(data["id"])


# --- submissions -----------------------------------------------------------------


@main.command("submit")
@click.option("--track", "track_id", required=True)
@click.option("--model", required=True, type=click.Path(exists=True), help="ONNX file")
@click.option("--preds", required=True, type=click.Path(exists=True), help="JSON list file")
@click.option("--preprocessor", type=click.Path(exists=True), help="JSON spec file")
@click.option("--example-data", type=click.Path(exists=True), help="JSON rows file")
@click.option(
    "--meta",
    multiple=True,
    help="custom metadata key=value (repeatable); values parsed as JSON scalars when possible",
)
@pass_ctx
def submit(ctx, track_id, model, preds, preprocessor, example_data, meta):
    files = {
        "model": ("model.onnx", Path(model).read_bytes(), "application/octet-stream"),
        "predictions": ("predictions.json", Path(preds).read_bytes(), "application/json"),
    }
    if preprocessor:
        files["preprocessor"] = (
            "preprocessor.json",
            Path(preprocessor).read_bytes(),
            "application/json",
        )
    if example_data:
        files["example_data"] = (
            "example_data.json",
            Path(example_data).read_bytes(),
            "application/json",
        )
    if meta:
        metadata = {}
        for item in meta:
            key, _, raw = item.partition("=")
            if not _:
                click.echo(f"--meta expects key=value, got {item!r}", err=True)
                sys.exit(2)
            try:
                metadata[key] = json.loads(raw)
            except json.JSONDecodeError:
                metadata[key] = raw
        files["custom_metadata"] = (
            "custom_metadata.json",
            json.dumps(metadata).encode(),
            "application/json",
        )
    data = ctx.request("POST", f"/tracks/{track_id}/submissions", files=files).json()
    if ctx.output == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(str(data["version"]))


# --- leaderboard / compare ----------------------------------------------------------


@main.command("leaderboard")
@click.option("--track", "track_id", required=True)
@click.option("--sort", "sort_metric", default=None)
@click.option("--scores", default="public", type=click.Choice(["public", "secret"]))
@pass_ctx
def leaderboard(ctx, track_id, sort_metric, scores):
    params = {"scores": scores}
    if sort_metric:
        params["sort"] = sort_metric
    if ctx.output == "csv":
        params["format"] = "csv"
        resp = ctx.request("GET", f"/tracks/{track_id}/leaderboard", params=params)
        sys.stdout.buffer.write(resp.content)
        return
    data = ctx.request("GET", f"/tracks/{track_id}/leaderboard", params=params).json()
    if ctx.output == "json":
        click.echo(json.dumps(data, indent=2))
        return
    metric = data["sort_metric"]
    rows = [
        [
            e["version"],
            e["model_id"],
            e["submitter"],
            f"{(e['secret_metrics'] if data['ranked_on'] == 'secret' else e['metrics'])[metric]:.6g}",
            e["parameter_count"],
            e["ops"],
        ]
        for e in data["entries"]
    ]
    click.echo(_table(["version", "model", "submitter", metric, "params", "ops"], rows))


@main.command("compare")
@click.argument("model_a")
@click.argument("model_b")
@pass_ctx
def compare(ctx, model_a, model_b):
    data = ctx.request("GET", f"/models/{model_a}/compare/{model_b}").json()
    if ctx.output == "json":
        click.echo(json.dumps(data, indent=2))
        return
    marks = {"same": "=", "changed": "~", "only_left": "-", "only_right": "+"}
    rows = []
    for row in data["rows"]:
        node = row["left"] or row["right"]
        changes = "; ".join(
            f"{c['field']}: {c['left']} -> {c['right']}" for c in row["changes"]
        )
        rows.append([marks[row["status"]], node["op_type"], node["name"], changes or "-"])
    click.echo(_table(["", "op", "name", "changes"], rows))
    click.echo(
        f"parameter_count delta: {data['parameter_count_delta']:+d} | "
        f"memory_size_bytes delta: {data['memory_size_bytes_delta']:+d}"
    )


@main.command("instantiate")
@click.option("--model", "model_id", required=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
@pass_ctx
def instantiate(ctx, model_id, out_dir):
    """Download the trained artifact plus its architecture summary."""
    meta = ctx.request("GET", f"/models/{model_id}/metadata").json()
    resp = ctx.request("GET", f"/models/{model_id}/artifact")
    expected = meta["artifact"]["content_hash"]
    actual = hashlib.sha256(resp.content).hexdigest()
    if actual != expected:
        click.echo(
            f"artifact hash mismatch: expected {expected}, got {actual}", err=True
        )
        sys.exit(EXIT_API_ERROR)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{model_id}.onnx").write_bytes(resp.content)
    (out / f"{model_id}.json").write_text(json.dumps(meta, indent=2))
    click.echo(f"wrote {out / (model_id + '.onnx')} ({len(resp.content)} bytes)")


# --- deploy / predict ------------------------------------------------------------------


@main.command("deploy")
@click.option("--playground", "playground_id", required=True)
@click.option("--version", required=True, type=int)
@pass_ctx
def deploy(ctx, playground_id, version):
    data = ctx.request(
        "POST", f"/playgrounds/{playground_id}/deploy", json={"version": version}
    ).json()
    click.echo(json.dumps(data, indent=2))


@main.command("update-runtime")
@click.option("--playground", "playground_id", required=True)
@click.option("--version", required=True, type=int)
@pass_ctx
def update_runtime(ctx, playground_id, version):
    """Alias of deploy: swap the live runtime model."""
    data = ctx.request(
        "POST", f"/playgrounds/{playground_id}/deploy", json={"version": version}
    ).json()
    click.echo(json.dumps(data, indent=2))


@main.command("predict")
@click.option("--playground", "playground_id", required=True)
@click.option("--input", "input_file", required=True, type=click.Path(exists=True))
@pass_ctx
def predict(ctx, playground_id, input_file):
    records = _read_json_file(input_file)
    if not isinstance(records, list):
        records = [records]
    data = ctx.request(
        "POST", f"/playgrounds/{playground_id}/predict", json={"records": records}
    ).json()
    click.echo(json.dumps(data, indent=2))


@main.command("export")
@click.option("--track", "track_id", required=True)
@click.option("--format", "fmt", default="csv", type=click.Choice(["json", "csv"]))
@click.option("--out", "out_file", type=click.Path(), help="default stdout")
@pass_ctx
def export(ctx, track_id, fmt, out_file):
    """Download a leaderboard in its exchange format."""
    resp = ctx.request(
        "GET", f"/tracks/{track_id}/leaderboard", params={"format": fmt}
    )
    if out_file:
        Path(out_file).write_bytes(resp.content)
        click.echo(f"wrote {out_file}", err=True)
    else:
        sys.stdout.buffer.write(resp.content)


# --- admin (local, data-dir) ------------------------------------------------------------


@main.group()
def admin():
    """Server-side commands operating on the data directory."""


@admin.command("serve")
@click.option("--data-dir", required=True, type=click.Path(), envvar="HUB_DATA_DIR")
@click.option("--host", default="127.0.0.1", envvar="HUB_LISTEN_HOST")
@click.option("--port", default=8080, type=int, envvar="HUB_LISTEN_PORT")
@click.option("--ui-dir", default=None, type=click.Path(), help="static UI bundle to mount at /ui")
@click.option("--max-model-mb", default=512, type=int)
def admin_serve(data_dir, host, port, ui_dir, max_model_mb):
    """Run the hub server."""
    import uvicorn

    from .server.app import MIB, ServerConfig, create_app

    app = create_app(
        ServerConfig(
            data_dir=data_dir, ui_dir=ui_dir, max_model_bytes=max_model_mb * MIB
        )
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")


@admin.command("mint-key")
@click.option("--data-dir", required=True, type=click.Path())
@click.option("--user", required=True)
def admin_mint_key(data_dir, user):
    """Mint an API key; printed once, stored only as a salted hash."""
    from .registry import Registry

    registry = Registry(data_dir)
    click.echo(registry.mint_api_key(user))


@admin.command("export-backup")
@click.option("--data-dir", required=True, type=click.Path())
@click.option("--out", "out_file", type=click.Path(), help="default stdout")
def admin_export_backup(data_dir, out_file):
    """Dump every record as JSON for backup."""
    from .registry import Registry

    registry = Registry(data_dir)
    payload = json.dumps(registry.export_json(), indent=2)
    if out_file:
        Path(out_file).write_text(payload)
        click.echo(f"wrote {out_file}", err=True)
    else:
        click.echo(payload)


if __name__ == "__main__":
    main()
