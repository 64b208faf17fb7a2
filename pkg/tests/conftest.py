from __future__ import annotations

import json
import multiprocessing
import os
import signal
import socket
import time
from pathlib import Path

import httpx
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def mlp_bytes() -> bytes:
    return (FIXTURES / "mlp_4_8_3.onnx").read_bytes()


@pytest.fixture(scope="session")
def mlp_wide_bytes() -> bytes:
    return (FIXTURES / "mlp_4_16_3.onnx").read_bytes()


@pytest.fixture(scope="session")
def mlp_goldens() -> dict:
    return json.loads((FIXTURES / "mlp_goldens.json").read_text())


@pytest.fixture()
def registry(tmp_path):
    from modelhub.registry import Registry

    return Registry(tmp_path / "data")


def passthrough_preprocessor(columns=("f1", "f2", "f3", "f4")) -> dict:
    return {
        "columns": [{"name": c, "kind": "numeric"} for c in columns],
        "steps": [{"kind": "passthrough", "column": c} for c in columns],
    }


@pytest.fixture()
def app_factory(tmp_path):
    """Build an in-process app; returns (client, registry, deployments)."""
    from fastapi.testclient import TestClient

    from modelhub.server.app import ServerConfig, create_app

    made = []

    def make(**config_kwargs):
        data_dir = tmp_path / f"data{len(made)}"
        app = create_app(ServerConfig(data_dir=str(data_dir), **config_kwargs))
        client = TestClient(app, raise_server_exceptions=False)
        made.append(client)
        return client, app.state.registry, app.state.deployments

    yield make
    for client in made:
        client.close()


# --- live server in a forked child -------------------------------------------


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def _serve(data_dir: str, port: int):  # runs in the forked child
    import uvicorn

    from modelhub.server.app import ServerConfig, create_app

    app = create_app(ServerConfig(data_dir=data_dir))
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="critical")


class ServerProcess:
    """Forked uvicorn server; supports hard kills for crash testing."""

    def __init__(self, data_dir: str):
        self.data_dir = str(data_dir)
        self.port = _free_port()
        self.base_url = f"http://127.0.0.1:{self.port}"
        self._proc: multiprocessing.Process | None = None

    def start(self, wait: bool = True) -> None:
        ctx = multiprocessing.get_context("fork")
        self._proc = ctx.Process(target=_serve, args=(self.data_dir, self.port))
        self._proc.start()
        if wait:
            self.wait_ready()

    def wait_ready(self, timeout: float = 15.0) -> None:
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            try:
                r = httpx.get(f"{self.base_url}/healthz", timeout=1.0)
                if r.status_code == 200:
                    return
            except httpx.HTTPError:
                time.sleep(0.02)
        raise RuntimeError("server did not become ready")

    def kill(self) -> None:
        if self._proc and self._proc.is_alive():
            os.kill(self._proc.pid, signal.SIGKILL)
        if self._proc:
            self._proc.join(timeout=10)
        self._proc = None

    def stop(self) -> None:
        if self._proc and self._proc.is_alive():
            self._proc.terminate()
            self._proc.join(timeout=10)
        self._proc = None

    def restart(self) -> None:
        self.port = _free_port()
        self.base_url = f"http://127.0.0.1:{self.port}"
        self.start()


@pytest.fixture()
def live_server(tmp_path):
    server = ServerProcess(tmp_path / "live-data")
    server.start()
    yield server
    server.stop()


# --- acceptance reporting: one PASS/FAIL line per criterion -------------------

_acceptance_outcomes: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    _acceptance_outcomes[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    from .test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for fn_name, label in CRITERIA.items():
        outcome = _acceptance_outcomes.get(fn_name)
        if outcome is None:
            continue
        mark = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"ACCEPTANCE {label}: {mark}")
