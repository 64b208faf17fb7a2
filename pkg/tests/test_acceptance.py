"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with plain `pytest tests/test_acceptance.py`; the PASS/FAIL lines bypass
output capture so they always appear.
"""
from __future__ import annotations

import hashlib
import json
import os
import random
import subprocess
import sys
import threading
import time
from pathlib import Path

import httpx
import numpy as np
import pytest

from .conftest import ServerProcess
from .hub_helpers import auth, passthrough_spec, submission_files
from .oracles import oracle_classification, oracle_regression

FIXTURES = Path(__file__).parent / "fixtures"
TOOLS = Path(__file__).parents[1] / "tools"


# criterion labels; conftest prints one PASS/FAIL line per entry after the run
CRITERIA: dict = {}


def criterion(number: int, name: str):
    def decorate(fn):
        CRITERIA[fn.__name__] = f"{number:02d} {name}"
        return fn

    return decorate


# --- 1. metrics oracle equivalence ----------------------------------------------


@criterion(1, "metrics oracle equivalence (400 random instances, <5s)")
def test_metrics_oracle_equivalence():
    from modelhub.metrics import classification_report, regression_report

    rng = random.Random(20260401)
    started = time.monotonic()
    for _ in range(200):
        n = rng.randint(1, 50)
        k = rng.randint(1, 5)
        y = [rng.randrange(k) for _ in range(n)]
        p = [rng.randrange(k) for _ in range(n)]
        ours = classification_report(y, p).values
        ref = oracle_classification(y, p)
        for key, value in ref.items():
            assert abs(ours[key] - value) <= 1e-9, (key, y, p)
    for _ in range(200):
        n = rng.randint(1, 50)
        y = [rng.uniform(-1000, 1000) for _ in range(n)]
        p = [rng.uniform(-1000, 1000) for _ in range(n)]
        ours = regression_report(y, p).values
        ref = oracle_regression(y, p)
        for key, value in ref.items():
            assert abs(ours[key] - value) <= 1e-9, (key, n)
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


# --- 2. hand-derived metric fixtures ------------------------------------------------


@criterion(2, "hand-derived metric fixtures")
def test_hand_derived_fixtures():
    from modelhub.metrics import classification_report, regression_report

    assert classification_report([0, 1, 1, 0], [0, 1, 0, 0]).values[
        "accuracy"
    ] == pytest.approx(0.75)

    macro = classification_report([0, 0, 1, 1], [0, 1, 1, 1]).values
    assert macro["precision_macro"] == pytest.approx(0.8333, abs=1e-4)
    assert macro["recall_macro"] == pytest.approx(0.75, abs=1e-4)
    assert macro["f1_macro"] == pytest.approx(0.7333, abs=1e-4)

    reg = regression_report([1, 2, 3], [2, 2, 2]).values
    assert reg["mse"] == pytest.approx(0.6667, abs=1e-4)
    assert reg["rmse"] == pytest.approx(0.8165, abs=1e-4)
    assert reg["mae"] == pytest.approx(0.6667, abs=1e-4)
    assert reg["r2"] == pytest.approx(0.0, abs=1e-4)


# --- 3. onnx metadata exactness -------------------------------------------------------


@criterion(3, "onnx metadata: parameter count, memory size, diff delta")
def test_onnx_metadata_exact():
    from modelhub.onnx import compare_models, extract_summary, parse_model

    small = extract_summary(parse_model((FIXTURES / "mlp_4_8_3.onnx").read_bytes()))
    assert small.parameter_count == 67
    assert small.memory_size_bytes == 268

    wide = extract_summary(parse_model((FIXTURES / "mlp_4_16_3.onnx").read_bytes()))
    diff = compare_models(small, wide)
    assert diff.parameter_count_delta == 64


# --- 4. interpreter correctness ------------------------------------------------------


@criterion(4, "interpreter matches reference goldens (per-op + end-to-end)")
def test_interpreter_correctness():
    from modelhub.runtime import RuntimeModel

    from .op_models import case_model_bytes, tensor_from_json

    cases = json.loads((FIXTURES / "op_goldens.json").read_text())
    per_op: dict = {}
    for case in cases:
        per_op[case["op"]] = per_op.get(case["op"], 0) + 1
        model_bytes, data_input = case_model_bytes(case)
        runtime = RuntimeModel.load(model_bytes, task_type="regression", input_type="image")
        out = runtime.run(data_input)
        expected = tensor_from_json(case["expected"])
        assert out.shape == expected.shape, case["op"]
        if expected.dtype == np.int64:
            assert np.array_equal(out, expected), case["op"]
        else:
            np.testing.assert_allclose(out, expected, atol=1e-5, rtol=0, err_msg=case["op"])
    assert all(count >= 10 for count in per_op.values()), per_op

    goldens = json.loads((FIXTURES / "mlp_goldens.json").read_text())
    rows = np.asarray(goldens["rows"], dtype=np.float32)
    for name, key in (("mlp_4_8_3", "mlp_4_8_3_probs"), ("mlp_4_16_3", "mlp_4_16_3_probs")):
        runtime = RuntimeModel.load(
            (FIXTURES / f"{name}.onnx").read_bytes(),
            task_type="regression",
            input_type="image",
        )
        np.testing.assert_allclose(
            runtime.run(rows), np.asarray(goldens[key]), atol=1e-5, rtol=0
        )


# --- 5. competition secrecy -----------------------------------------------------------


@criterion(5, "competition secrecy: wire fuzz + secret-rank finalization")
def test_competition_secrecy(app_factory, mlp_bytes):
    from .secrecy_harness import build_secrecy_hub, run_prefinalization_fuzz

    client, ctx = build_secrecy_hub(app_factory, mlp_bytes)
    total, findings = run_prefinalization_fuzz(client, ctx)
    assert total >= 100, f"only {total} responses fuzzed"
    assert findings == [], "\n".join(findings)

    # public board favors bob; the secret-ranked final board inverts it
    track_id = ctx["clf"]["track"]["id"]
    public = client.get(f"/tracks/{track_id}/leaderboard").json()
    assert [e["submitter"] for e in public["entries"]] == ["bob", "carol"]
    final = client.post(
        f"/tracks/{track_id}/finalize", headers=auth(ctx["keys"]["owner"])
    ).json()
    assert final["ranked_on"] == "secret"
    assert [e["submitter"] for e in final["entries"]] == ["carol", "bob"]


# --- 6. atomic hot swap ------------------------------------------------------------------


@criterion(6, "atomic hot-swap under concurrent predictions")
def test_atomic_hot_swap(tmp_path):
    from modelhub.registry import Registry

    server = ServerProcess(tmp_path / "swap-data")
    key = Registry(server.data_dir).mint_api_key("owner")
    server.start()
    try:
        base = server.base_url
        headers = auth(key)
        pg = httpx.post(
            f"{base}/playgrounds",
            headers=headers,
            json={"input_type": "tabular", "task_type": "regression", "visibility": "public"},
        ).json()
        track = httpx.post(
            f"{base}/playgrounds/{pg['id']}/tracks",
            headers=headers,
            json={"kind": "experiment", "eval_labels": [7.0, 7.0]},
        ).json()
        spec = passthrough_spec(["f1", "f2", "f3", "f4"])
        for name in ("const_7.onnx", "const_9.onnx"):
            resp = httpx.post(
                f"{base}/tracks/{track['id']}/submissions",
                headers=headers,
                files=submission_files(
                    (FIXTURES / name).read_bytes(), [7.0, 7.0], preprocessor=spec
                ),
            )
            assert resp.status_code == 201, resp.text
        assert (
            httpx.post(
                f"{base}/playgrounds/{pg['id']}/deploy",
                headers=headers,
                json={"version": 1},
            ).status_code
            == 200
        )

        value_by_version = {1: 7.0, 2: 9.0}
        n_threads = 10
        observations: list = [[] for _ in range(n_threads)]
        failures: list = []
        stop = threading.Event()

        def client_loop(slot: int):
            record = {"f1": 1.0, "f2": 2.0, "f3": 3.0, "f4": 4.0}
            with httpx.Client(base_url=base, timeout=10.0) as client:
                while not stop.is_set():
                    resp = client.post(
                        f"/playgrounds/{pg['id']}/predict", json={"records": [record]}
                    )
                    if resp.status_code != 200:
                        failures.append(resp.text)
                        continue
                    body = resp.json()
                    observations[slot].append(
                        (body["model_version"], body["results"][0]["prediction"])
                    )

        def wait_until(predicate, what: str, timeout: float = 30.0):
            deadline = time.monotonic() + timeout
            while time.monotonic() < deadline:
                if predicate():
                    return
                time.sleep(0.005)
            raise AssertionError(f"timed out waiting for {what}")

        threads = [
            threading.Thread(target=client_loop, args=(i,)) for i in range(n_threads)
        ]
        for t in threads:
            t.start()
        try:
            # every client must be mid-storm before the swap...
            wait_until(
                lambda: all(len(o) >= 5 for o in observations), "pre-swap traffic"
            )
            floors = [len(o) for o in observations]
            swap = httpx.post(
                f"{base}/playgrounds/{pg['id']}/deploy",
                headers=headers,
                json={"version": 2},
            )
            assert swap.status_code == 200, swap.text
            # ...and keep observing responses after it
            wait_until(
                lambda: all(
                    len(o) >= floor + 5 for o, floor in zip(observations, floors)
                ),
                "post-swap traffic",
            )
        finally:
            stop.set()
            for t in threads:
                t.join()

        total = sum(len(o) for o in observations)
        assert total >= 100
        assert failures == [], failures[:3]
        versions_seen = set()
        for series in observations:
            last = 0
            for version, prediction in series:
                versions_seen.add(version)
                # attribution: the output value must belong to the claimed version
                assert prediction == pytest.approx(value_by_version[version])
                # monotone per client: never back to the old model
                assert version >= last
                last = version
        assert versions_seen == {1, 2}, versions_seen
    finally:
        server.stop()


# --- 7. end-to-end CLI workflow ------------------------------------------------------------


def _cli(args, server, key=None, timeout=60):
    env = dict(os.environ)
    env["HUB_SERVER"] = server
    env["HUB_CONFIG"] = "/nonexistent"
    if key:
        env["HUB_API_KEY"] = key
    return subprocess.run(
        [sys.executable, "-m", "modelhub.cli", *args],
        capture_output=True,
        env=env,
        timeout=timeout,
    )


@criterion(7, "end-to-end CLI workflow (<30s)")
def test_end_to_end_cli_workflow(tmp_path):
    from modelhub.evalengine import make_split
    from modelhub.registry import Registry

    started = time.monotonic()
    server = ServerProcess(tmp_path / "e2e-data")
    key = Registry(server.data_dir).mint_api_key("alice")
    server.start()
    try:
        seed = 424242
        labels = [["a", "b", "c"][i % 3] for i in range(20)]
        mask = make_split(20, 0.5, seed)
        public_idx = list(mask.public_indices)

        goldens = json.loads((FIXTURES / "mlp_goldens.json").read_text())
        label_space = ["a", "b", "c"]

        def craft(public_correct: int) -> list:
            preds = list(labels)  # secret rows all correct
            for i in public_idx[public_correct:]:
                preds[i] = "a" if labels[i] != "a" else "b"
            return preds

        # v1: 7/10 public, v2: 10/10, v3: 8/10 -> expected order v2, v3, v1
        submissions = [
            ("mlp_4_8_3.onnx", craft(7)),
            ("mlp_4_16_3.onnx", craft(10)),
            ("mlp_4_8_3_extra_relu.onnx", craft(8)),
        ]

        files = {}
        for name in ("labels", "ytrain", "rows", "spec"):
            files[name] = tmp_path / f"{name}.json"
        files["labels"].write_text(json.dumps(labels))
        files["ytrain"].write_text(json.dumps(label_space))
        files["rows"].write_text(
            json.dumps(
                [
                    {f"f{i + 1}": value for i, value in enumerate(row)}
                    for row in goldens["rows"]
                ]
            )
        )
        files["spec"].write_text(json.dumps(passthrough_spec(["f1", "f2", "f3", "f4"])))

        r = _cli(
            [
                "playground", "create",
                "--input-type", "tabular",
                "--task-type", "classification",
                "--y-train", str(files["ytrain"]),
            ],
            server.base_url,
            key,
        )
        assert r.returncode == 0, r.stderr
        pid = r.stdout.decode().strip()

        r = _cli(
            [
                "track", "create",
                "--playground", pid,
                "--kind", "competition",
                "--labels", str(files["labels"]),
                "--secret-fraction", "0.5",
                "--seed", str(seed),
            ],
            server.base_url,
            key,
        )
        assert r.returncode == 0, r.stderr
        tid = r.stdout.decode().strip()

        for i, (model_name, preds) in enumerate(submissions, start=1):
            preds_file = tmp_path / f"preds{i}.json"
            preds_file.write_text(json.dumps(preds))
            r = _cli(
                [
                    "submit",
                    "--track", tid,
                    "--model", str(FIXTURES / model_name),
                    "--preds", str(preds_file),
                    "--preprocessor", str(files["spec"]),
                ],
                server.base_url,
                key,
            )
            assert r.returncode == 0, r.stderr
            assert r.stdout.decode().strip() == str(i)

        r = _cli(["--format", "json", "leaderboard", "--track", tid], server.base_url, key)
        assert r.returncode == 0, r.stderr
        board = json.loads(r.stdout)

        # hand-compute expected public accuracies with the independent oracle
        expected = []
        for version, (_, preds) in enumerate(submissions, start=1):
            acc = oracle_classification(
                [labels[i] for i in public_idx], [preds[i] for i in public_idx]
            )["accuracy"]
            expected.append((version, acc))
        expected.sort(key=lambda pair: (-pair[1], pair[0]))
        assert [e["version"] for e in board["entries"]] == [v for v, _ in expected]
        assert [v for v, _ in expected] == [2, 3, 1]
        for entry, (_, acc) in zip(board["entries"], expected):
            assert entry["metrics"]["accuracy"] == pytest.approx(acc, abs=1e-9)

        r = _cli(["deploy", "--playground", pid, "--version", "2"], server.base_url, key)
        assert r.returncode == 0, r.stderr
        assert json.loads(r.stdout)["active_version"] == 2

        r = _cli(
            ["predict", "--playground", pid, "--input", str(files["rows"])],
            server.base_url,
            key,
        )
        assert r.returncode == 0, r.stderr
        body = json.loads(r.stdout)
        assert body["model_version"] == 2
        oracle_labels = [
            label_space[int(np.argmax(row))] for row in goldens["mlp_4_16_3_probs"]
        ]
        assert [x["prediction"] for x in body["results"]] == oracle_labels

        elapsed = time.monotonic() - started
        assert elapsed < 30.0, f"workflow took {elapsed:.1f}s"
    finally:
        server.stop()


# --- 8. split determinism across processes ---------------------------------------------------


@criterion(8, "split determinism across independent processes (50 triples)")
def test_split_determinism_across_processes():
    rng = random.Random(8888)
    triples = [
        [rng.randint(2, 5000), round(rng.uniform(0.05, 0.95), 3), rng.randint(0, 2**62)]
        for _ in range(50)
    ]
    payload = json.dumps(triples).encode()

    def run_once() -> bytes:
        proc = subprocess.run(
            [sys.executable, str(TOOLS / "split_probe.py")],
            input=payload,
            capture_output=True,
            timeout=60,
        )
        assert proc.returncode == 0, proc.stderr
        return proc.stdout

    first = run_once()
    second = run_once()
    assert first == second
    assert len(first.splitlines()) == 50


# --- 9. crash durability ------------------------------------------------------------------------


@criterion(9, "crash durability: 20 mid-submission kills, gapless + hash-clean")
def test_crash_durability(tmp_path):
    from modelhub.registry import Registry

    data_dir = tmp_path / "crash-data"
    registry = Registry(data_dir)
    key = registry.mint_api_key("owner")
    pg = registry.create_playground("owner", "tabular", "regression", "public")
    tracks = [
        registry.add_track(pg.id, "experiment", [1.0, 2.0], caller="owner")
        for _ in range(3)
    ]
    registry.close()

    model_bytes = (FIXTURES / "const_7.onnx").read_bytes()
    rng = random.Random(99)
    server = ServerProcess(data_dir)
    attempted = 0

    def submitter(base_url: str, track_id: str):
        nonlocal attempted
        try:
            httpx.post(
                f"{base_url}/tracks/{track_id}/submissions",
                headers=auth(key),
                files=submission_files(model_bytes, [1.0, 2.0]),
                timeout=2.0,
            )
        except httpx.HTTPError:
            pass  # the kill landed mid-request
        attempted += 1

    for round_no in range(20):
        server.restart()
        threads = [
            threading.Thread(target=submitter, args=(server.base_url, t.id))
            for t in tracks
            for _ in range(2)
        ]
        for t in threads:
            t.start()
        # submissions take ~0.1-0.4s under fsync contention; spread the kill
        # across connect, parse, score, and commit phases
        time.sleep(rng.uniform(0.03, 0.4))
        server.kill()
        for t in threads:
            t.join()

        survivor = Registry(data_dir)
        for track in tracks:
            versions = [m.version for m in survivor.list_versions(track.id)]
            assert versions == list(range(1, len(versions) + 1)), (
                f"round {round_no}: gap in {versions}"
            )
            for mv in survivor.list_versions(track.id):
                survivor.load_blob(mv.artifact)  # raises on hash mismatch
        # every stored blob file must hash to its own name
        for bucket in (data_dir / "blobs").iterdir():
            for blob in bucket.iterdir():
                digest = hashlib.sha256(blob.read_bytes()).hexdigest()
                assert digest == blob.name, f"round {round_no}: corrupt {blob}"
        survivor.close()

    final = Registry(data_dir)
    total = sum(len(final.list_versions(t.id)) for t in tracks)
    assert attempted == 20 * 6
    assert total > 0, "no submission ever committed; kills landed too early"
    final.close()
