"""Durable source of truth: playgrounds, tracks, model versions, blobs, keys.

Metadata lives in SQLite (WAL, synchronous=FULL); binary artifacts live on
the filesystem under ``blobs/<first 2 hash chars>/<sha256>`` and are written
to a temp path, fsynced, then atomically renamed. Version numbers are
allocated inside the same immediate transaction as the record insert, which
keeps them gapless under concurrent submitters.
"""
from __future__ import annotations

import hashlib
import json
import os
import secrets
import sqlite3
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import (
    AuthRequiredError,
    BlobCorruptionError,
    ForbiddenError,
    NotFoundError,
    TrackFinalizedError,
    ValidationError,
)
from .evalengine import SplitMask, make_split
from .metrics import MetricReport
from .runtime.preprocess import derive_label_map

INPUT_TYPES = ("tabular", "image")
TASK_TYPES = ("classification", "regression")
VISIBILITIES = ("public", "private")
TRACK_KINDS = ("experiment", "competition")
TRACK_POLICIES = ("open", "team-only")

MAX_EVAL_LABELS = 1_000_000
DEFAULT_SECRET_FRACTION = 0.5


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass(frozen=True)
class BlobRef:
    content_hash: str  # hex sha256 of the exact stored bytes
    size_bytes: int
    media_kind: str  # onnx | example-data | generic

    def to_json_dict(self) -> dict:
        return {
            "content_hash": self.content_hash,
            "size_bytes": self.size_bytes,
            "media_kind": self.media_kind,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "BlobRef":
        return cls(d["content_hash"], d["size_bytes"], d["media_kind"])


@dataclass(frozen=True)
class DeploymentState:
    active_version: int | None
    activated_at: str | None
    activation_count: int

    def to_json_dict(self) -> dict:
        return {
            "active_version": self.active_version,
            "activated_at": self.activated_at,
            "activation_count": self.activation_count,
        }


@dataclass
class Playground:
    id: str
    owner: str
    input_type: str
    task_type: str
    visibility: str
    collaborators: set = field(default_factory=set)
    example_data: BlobRef | None = None
    y_train_labels: list | None = None  # sorted distinct labels
    created_at: str = ""
    deployment: DeploymentState = DeploymentState(None, None, 0)

    def readable_by(self, user: str | None) -> bool:
        if self.visibility == "public":
            return True
        return user is not None and (user == self.owner or user in self.collaborators)

    def team_member(self, user: str | None) -> bool:
        return user is not None and (user == self.owner or user in self.collaborators)


@dataclass
class EvalTrack:
    id: str
    playground_id: str
    kind: str
    eval_labels: list
    split: SplitMask
    policy: str = "open"
    finalized: bool = False
    created_at: str = ""


@dataclass
class ModelVersion:
    model_id: str
    track_id: str
    version: int
    submitter: str
    artifact: BlobRef
    preprocessor: dict | None
    summary: dict  # OnnxModelSummary JSON form
    scores_public: MetricReport
    scores_secret: MetricReport | None
    predictions: list
    custom_metadata: dict
    submitted_at: str


_SCHEMA = """
CREATE TABLE IF NOT EXISTS playgrounds (
    id TEXT PRIMARY KEY,
    owner TEXT NOT NULL,
    input_type TEXT NOT NULL,
    task_type TEXT NOT NULL,
    visibility TEXT NOT NULL,
    collaborators TEXT NOT NULL,
    example_data TEXT,
    y_train_labels TEXT,
    created_at TEXT NOT NULL,
    active_version INTEGER,
    activated_at TEXT,
    activation_count INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS tracks (
    id TEXT PRIMARY KEY,
    playground_id TEXT NOT NULL,
    kind TEXT NOT NULL,
    eval_labels TEXT NOT NULL,
    split_json TEXT NOT NULL,
    policy TEXT NOT NULL,
    finalized INTEGER NOT NULL DEFAULT 0,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS model_versions (
    track_id TEXT NOT NULL,
    version INTEGER NOT NULL,
    model_id TEXT NOT NULL UNIQUE,
    submitter TEXT NOT NULL,
    artifact TEXT NOT NULL,
    preprocessor TEXT,
    summary TEXT NOT NULL,
    scores_public TEXT NOT NULL,
    scores_secret TEXT,
    predictions TEXT NOT NULL,
    custom_metadata TEXT NOT NULL,
    submitted_at TEXT NOT NULL,
    PRIMARY KEY (track_id, version)
);
CREATE TABLE IF NOT EXISTS api_keys (
    key_id TEXT PRIMARY KEY,
    user_id TEXT NOT NULL,
    salt TEXT NOT NULL,
    key_hash TEXT NOT NULL,
    created_at TEXT NOT NULL
);
"""


def _validate_scalar_map(custom_metadata: dict) -> dict:
    if custom_metadata is None:
        return {}
    if not isinstance(custom_metadata, dict):
        raise ValidationError("custom_metadata must be a flat JSON object")
    for k, v in custom_metadata.items():
        if not isinstance(k, str):
            raise ValidationError("custom_metadata keys must be strings")
        if not isinstance(v, (str, int, float, bool)) or v is None:
            raise ValidationError(
                f"custom_metadata[{k!r}] must be a scalar, got {type(v).__name__}"
            )
    return dict(custom_metadata)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


class Registry:
    """One data directory == one hub instance. Safe for concurrent threads."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.blob_dir = self.data_dir / "blobs"
        self.blob_dir.mkdir(exist_ok=True)
        self.db_path = self.data_dir / "registry.db"
        self._local = threading.local()
        # executescript manages its own transaction boundaries
        self._conn().executescript(_SCHEMA)

    # --- connection / transaction plumbing -----------------------------------

    def _conn(self) -> sqlite3.Connection:
        conn = getattr(self._local, "conn", None)
        if conn is None:
            conn = sqlite3.connect(
                self.db_path, timeout=30.0, isolation_level=None
            )
            conn.execute("PRAGMA journal_mode=WAL")
            conn.execute("PRAGMA synchronous=FULL")
            conn.execute("PRAGMA busy_timeout=30000")
            conn.row_factory = sqlite3.Row
            self._local.conn = conn
        return conn

    class _txn:
        """Immediate transaction; serializes writers across processes."""

        def __init__(self, conn: sqlite3.Connection):
            self.conn = conn

        def __enter__(self):
            self.conn.execute("BEGIN IMMEDIATE")
            return self.conn

        def __exit__(self, exc_type, exc, tb):
            if exc_type is None:
                self.conn.execute("COMMIT")
            else:
                self.conn.execute("ROLLBACK")
            return False

    def close(self) -> None:
        conn = getattr(self._local, "conn", None)
        if conn is not None:
            conn.close()
            self._local.conn = None

    # --- blobs ----------------------------------------------------------------

    def blob_path(self, content_hash: str) -> Path:
        return self.blob_dir / content_hash[:2] / content_hash

    def store_blob(self, data: bytes, media_kind: str = "generic") -> BlobRef:
        if not data:
            raise ValidationError("refusing to store an empty blob")
        digest = hashlib.sha256(data).hexdigest()
        path = self.blob_path(digest)
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.parent / f".tmp-{uuid.uuid4().hex}"
            with open(tmp, "wb") as f:
                f.write(data)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, path)
            dir_fd = os.open(path.parent, os.O_RDONLY)
            try:
                os.fsync(dir_fd)
            finally:
                os.close(dir_fd)
        return BlobRef(content_hash=digest, size_bytes=len(data), media_kind=media_kind)

    def load_blob(self, ref: BlobRef) -> bytes:
        path = self.blob_path(ref.content_hash)
        if not path.exists():
            raise NotFoundError(f"blob {ref.content_hash} not found")
        data = path.read_bytes()
        digest = hashlib.sha256(data).hexdigest()
        if digest != ref.content_hash or len(data) != ref.size_bytes:
            raise BlobCorruptionError(
                "stored blob does not match its recorded content hash",
                expected_hash=ref.content_hash,
                actual_hash=digest,
            )
        return data

    # --- playgrounds ------------------------------------------------------------

    def create_playground(
        self,
        owner: str,
        input_type: str,
        task_type: str,
        visibility: str,
        example_data: list | None = None,
        y_train: list | None = None,
    ) -> Playground:
        if not owner:
            raise AuthRequiredError("creating a playground requires an owner")
        if input_type not in INPUT_TYPES:
            raise ValidationError(
                f"input_type must be one of {INPUT_TYPES}, got {input_type!r}"
            )
        if task_type not in TASK_TYPES:
            raise ValidationError(
                f"task_type must be one of {TASK_TYPES}, got {task_type!r}"
            )
        if visibility not in VISIBILITIES:
            raise ValidationError(
                f"visibility must be one of {VISIBILITIES}, got {visibility!r}"
            )
        example_ref = None
        if example_data is not None:
            example_ref = self.store_blob(
                json.dumps(example_data).encode(), media_kind="example-data"
            )
        labels = None
        if y_train is not None:
            labels = list(derive_label_map(y_train).labels)

        pid = f"pg_{uuid.uuid4().hex[:12]}"
        now = utc_now_iso()
        conn = self._conn()
        with self._txn(conn):
            conn.execute(
                "INSERT INTO playgrounds (id, owner, input_type, task_type,"
                " visibility, collaborators, example_data, y_train_labels,"
                " created_at, activation_count)"
                " VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, 0)",
                (
                    pid,
                    owner,
                    input_type,
                    task_type,
                    visibility,
                    json.dumps([]),
                    json.dumps(example_ref.to_json_dict()) if example_ref else None,
                    json.dumps(labels) if labels is not None else None,
                    now,
                ),
            )
        return self.get_playground(pid)

    def _row_to_playground(self, row) -> Playground:
        return Playground(
            id=row["id"],
            owner=row["owner"],
            input_type=row["input_type"],
            task_type=row["task_type"],
            visibility=row["visibility"],
            collaborators=set(json.loads(row["collaborators"])),
            example_data=BlobRef.from_json_dict(json.loads(row["example_data"]))
            if row["example_data"]
            else None,
            y_train_labels=json.loads(row["y_train_labels"])
            if row["y_train_labels"]
            else None,
            created_at=row["created_at"],
            deployment=DeploymentState(
                active_version=row["active_version"],
                activated_at=row["activated_at"],
                activation_count=row["activation_count"],
            ),
        )

    def get_playground(self, playground_id: str) -> Playground:
        row = self._conn().execute(
            "SELECT * FROM playgrounds WHERE id = ?", (playground_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"playground {playground_id} not found")
        return self._row_to_playground(row)

    def list_playgrounds(self) -> list:
        rows = self._conn().execute(
            "SELECT * FROM playgrounds ORDER BY created_at, id"
        ).fetchall()
        return [self._row_to_playground(r) for r in rows]

    def add_collaborator(self, playground_id: str, user: str, caller: str) -> Playground:
        conn = self._conn()
        with self._txn(conn):
            row = conn.execute(
                "SELECT owner, collaborators FROM playgrounds WHERE id = ?",
                (playground_id,),
            ).fetchone()
            if row is None:
                raise NotFoundError(f"playground {playground_id} not found")
            if caller != row["owner"]:
                raise ForbiddenError("only the owner can invite collaborators")
            collaborators = set(json.loads(row["collaborators"]))
            collaborators.add(user)
            conn.execute(
                "UPDATE playgrounds SET collaborators = ? WHERE id = ?",
                (json.dumps(sorted(collaborators)), playground_id),
            )
        return self.get_playground(playground_id)

    def set_example_data(self, playground_id: str, rows: list, caller: str) -> Playground:
        playground = self.get_playground(playground_id)
        if not playground.team_member(caller):
            raise ForbiddenError("only the owner or collaborators can set example data")
        ref = self.store_blob(json.dumps(rows).encode(), media_kind="example-data")
        conn = self._conn()
        with self._txn(conn):
            conn.execute(
                "UPDATE playgrounds SET example_data = ? WHERE id = ?",
                (json.dumps(ref.to_json_dict()), playground_id),
            )
        return self.get_playground(playground_id)

    # --- tracks -----------------------------------------------------------------

    def add_track(
        self,
        playground_id: str,
        kind: str,
        eval_labels: list,
        caller: str,
        secret_fraction: float | None = None,
        seed: int | None = None,
        policy: str = "open",
    ) -> EvalTrack:
        playground = self.get_playground(playground_id)
        if caller != playground.owner:
            raise ForbiddenError("only the playground owner can create tracks")
        if kind not in TRACK_KINDS:
            raise ValidationError(f"kind must be one of {TRACK_KINDS}, got {kind!r}")
        if policy not in TRACK_POLICIES:
            raise ValidationError(
                f"policy must be one of {TRACK_POLICIES}, got {policy!r}"
            )
        if not isinstance(eval_labels, list) or not eval_labels:
            raise ValidationError("eval_labels must be a nonempty list")
        if len(eval_labels) > MAX_EVAL_LABELS:
            raise ValidationError(
                f"eval_labels exceeds the {MAX_EVAL_LABELS} entry bound"
            )
        if playground.task_type == "regression":
            if not all(_is_number(v) for v in eval_labels):
                raise ValidationError("regression eval labels must be numeric")
        else:
            if any(isinstance(v, (list, dict)) for v in eval_labels):
                raise ValidationError("classification eval labels must be scalars")

        if kind == "competition":
            fraction = (
                DEFAULT_SECRET_FRACTION if secret_fraction is None else secret_fraction
            )
            split = make_split(
                len(eval_labels),
                fraction,
                seed if seed is not None else secrets.randbits(63),
            )
        else:
            split = SplitMask.empty(len(eval_labels))

        tid = f"tr_{uuid.uuid4().hex[:12]}"
        now = utc_now_iso()
        conn = self._conn()
        with self._txn(conn):
            conn.execute(
                "INSERT INTO tracks (id, playground_id, kind, eval_labels,"
                " split_json, policy, finalized, created_at)"
                " VALUES (?, ?, ?, ?, ?, ?, 0, ?)",
                (
                    tid,
                    playground_id,
                    kind,
                    json.dumps(eval_labels),
                    json.dumps(split.to_json_dict()),
                    policy,
                    now,
                ),
            )
        return self.get_track(tid)

    def _row_to_track(self, row) -> EvalTrack:
        return EvalTrack(
            id=row["id"],
            playground_id=row["playground_id"],
            kind=row["kind"],
            eval_labels=json.loads(row["eval_labels"]),
            split=SplitMask.from_json_dict(json.loads(row["split_json"])),
            policy=row["policy"],
            finalized=bool(row["finalized"]),
            created_at=row["created_at"],
        )

    def get_track(self, track_id: str) -> EvalTrack:
        row = self._conn().execute(
            "SELECT * FROM tracks WHERE id = ?", (track_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"track {track_id} not found")
        return self._row_to_track(row)

    def list_tracks(self, playground_id: str) -> list:
        rows = self._conn().execute(
            "SELECT * FROM tracks WHERE playground_id = ? ORDER BY created_at, id",
            (playground_id,),
        ).fetchall()
        return [self._row_to_track(r) for r in rows]

    def mark_finalized(self, track_id: str) -> None:
        conn = self._conn()
        with self._txn(conn):
            cur = conn.execute(
                "UPDATE tracks SET finalized = 1 WHERE id = ?", (track_id,)
            )
            if cur.rowcount == 0:
                raise NotFoundError(f"track {track_id} not found")

    def check_submit_allowed(self, track: EvalTrack, playground: Playground, user: str | None) -> None:
        if user is None:
            raise AuthRequiredError("submitting requires an API key")
        if playground.visibility == "private" and not playground.team_member(user):
            raise ForbiddenError("private playground: submissions limited to the team")
        if track.policy == "team-only" and not playground.team_member(user):
            raise ForbiddenError("track policy is team-only")

    # --- model versions -----------------------------------------------------------

    def register_model_version(
        self,
        track_id: str,
        submitter: str,
        artifact: BlobRef,
        preprocessor: dict | None,
        summary: dict,
        scores_public: MetricReport,
        scores_secret: MetricReport | None,
        predictions: list,
        custom_metadata: dict | None = None,
        submitted_at: str | None = None,
    ) -> ModelVersion:
        custom = _validate_scalar_map(custom_metadata)
        if not self.blob_path(artifact.content_hash).exists():
            raise ValidationError("artifact blob is not stored")
        model_id = f"mv_{uuid.uuid4().hex[:12]}"
        now = submitted_at or utc_now_iso()
        conn = self._conn()
        with self._txn(conn):
            trow = conn.execute(
                "SELECT playground_id, policy, finalized FROM tracks WHERE id = ?",
                (track_id,),
            ).fetchone()
            if trow is None:
                raise NotFoundError(f"track {track_id} not found")
            if trow["finalized"]:
                raise TrackFinalizedError(
                    f"track {track_id} is finalized; no further submissions accepted"
                )
            prow = conn.execute(
                "SELECT owner, visibility, collaborators FROM playgrounds WHERE id = ?",
                (trow["playground_id"],),
            ).fetchone()
            team = {prow["owner"]} | set(json.loads(prow["collaborators"]))
            if not submitter:
                raise AuthRequiredError("submitting requires an API key")
            if prow["visibility"] == "private" and submitter not in team:
                raise ForbiddenError(
                    "private playground: submissions limited to the team"
                )
            if trow["policy"] == "team-only" and submitter not in team:
                raise ForbiddenError("track policy is team-only")

            version = conn.execute(
                "SELECT COALESCE(MAX(version), 0) + 1 FROM model_versions"
                " WHERE track_id = ?",
                (track_id,),
            ).fetchone()[0]
            conn.execute(
                "INSERT INTO model_versions (track_id, version, model_id, submitter,"
                " artifact, preprocessor, summary, scores_public, scores_secret,"
                " predictions, custom_metadata, submitted_at)"
                " VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                (
                    track_id,
                    version,
                    model_id,
                    submitter,
                    json.dumps(artifact.to_json_dict()),
                    json.dumps(preprocessor) if preprocessor is not None else None,
                    json.dumps(summary),
                    json.dumps(
                        {"task_type": scores_public.task_type, "values": scores_public.as_dict()}
                    ),
                    json.dumps(
                        {"task_type": scores_secret.task_type, "values": scores_secret.as_dict()}
                    )
                    if scores_secret is not None
                    else None,
                    json.dumps(predictions),
                    json.dumps(custom),
                    now,
                ),
            )
        return self.get_version(track_id, version)

    def _row_to_version(self, row) -> ModelVersion:
        public = json.loads(row["scores_public"])
        secret = json.loads(row["scores_secret"]) if row["scores_secret"] else None
        return ModelVersion(
            model_id=row["model_id"],
            track_id=row["track_id"],
            version=row["version"],
            submitter=row["submitter"],
            artifact=BlobRef.from_json_dict(json.loads(row["artifact"])),
            preprocessor=json.loads(row["preprocessor"]) if row["preprocessor"] else None,
            summary=json.loads(row["summary"]),
            scores_public=MetricReport.from_dict(public["task_type"], public["values"]),
            scores_secret=MetricReport.from_dict(secret["task_type"], secret["values"])
            if secret
            else None,
            predictions=json.loads(row["predictions"]),
            custom_metadata=json.loads(row["custom_metadata"]),
            submitted_at=row["submitted_at"],
        )

    def get_version(self, track_id: str, version: int) -> ModelVersion:
        row = self._conn().execute(
            "SELECT * FROM model_versions WHERE track_id = ? AND version = ?",
            (track_id, version),
        ).fetchone()
        if row is None:
            raise NotFoundError(f"track {track_id} has no version {version}")
        return self._row_to_version(row)

    def get_model(self, model_id: str) -> ModelVersion:
        row = self._conn().execute(
            "SELECT * FROM model_versions WHERE model_id = ?", (model_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"model {model_id} not found")
        return self._row_to_version(row)

    def list_versions(self, track_id: str) -> list:
        rows = self._conn().execute(
            "SELECT * FROM model_versions WHERE track_id = ? ORDER BY version",
            (track_id,),
        ).fetchall()
        return [self._row_to_version(r) for r in rows]

    # --- deployment -----------------------------------------------------------------

    def set_deployment(self, playground_id: str, track_id: str, version: int) -> DeploymentState:
        conn = self._conn()
        now = utc_now_iso()
        with self._txn(conn):
            row = conn.execute(
                "SELECT activation_count FROM playgrounds WHERE id = ?",
                (playground_id,),
            ).fetchone()
            if row is None:
                raise NotFoundError(f"playground {playground_id} not found")
            exists = conn.execute(
                "SELECT 1 FROM model_versions WHERE track_id = ? AND version = ?",
                (track_id, version),
            ).fetchone()
            if exists is None:
                raise NotFoundError(f"track {track_id} has no version {version}")
            conn.execute(
                "UPDATE playgrounds SET active_version = ?, activated_at = ?,"
                " activation_count = activation_count + 1 WHERE id = ?",
                (version, now, playground_id),
            )
        return self.get_playground(playground_id).deployment

    # --- api keys ---------------------------------------------------------------------

    def mint_api_key(self, user_id: str) -> str:
        if not user_id:
            raise ValidationError("user id must be nonempty")
        key_id = secrets.token_hex(8)
        secret = secrets.token_hex(20)
        salt = secrets.token_hex(16)
        key_hash = hashlib.sha256(bytes.fromhex(salt) + secret.encode()).hexdigest()
        conn = self._conn()
        with self._txn(conn):
            conn.execute(
                "INSERT INTO api_keys (key_id, user_id, salt, key_hash, created_at)"
                " VALUES (?, ?, ?, ?, ?)",
                (key_id, user_id, salt, key_hash, utc_now_iso()),
            )
        return f"mh_{key_id}_{secret}"

    def resolve_api_key(self, key: str) -> str | None:
        parts = key.split("_")
        if len(parts) != 3 or parts[0] != "mh":
            return None
        row = self._conn().execute(
            "SELECT user_id, salt, key_hash FROM api_keys WHERE key_id = ?",
            (parts[1],),
        ).fetchone()
        if row is None:
            return None
        expected = hashlib.sha256(
            bytes.fromhex(row["salt"]) + parts[2].encode()
        ).hexdigest()
        if not secrets.compare_digest(expected, row["key_hash"]):
            return None
        return row["user_id"]

    # --- backup export -------------------------------------------------------------------

    def export_json(self) -> dict:
        """Full-fidelity backup of every record (owner/admin use)."""
        conn = self._conn()
        out = {"playgrounds": [], "tracks": [], "model_versions": []}
        for row in conn.execute("SELECT * FROM playgrounds ORDER BY id"):
            pg = self._row_to_playground(row)
            out["playgrounds"].append(
                {
                    "id": pg.id,
                    "owner": pg.owner,
                    "input_type": pg.input_type,
                    "task_type": pg.task_type,
                    "visibility": pg.visibility,
                    "collaborators": sorted(pg.collaborators),
                    "example_data": pg.example_data.to_json_dict()
                    if pg.example_data
                    else None,
                    "y_train_labels": pg.y_train_labels,
                    "created_at": pg.created_at,
                    "deployment": pg.deployment.to_json_dict(),
                }
            )
        for row in conn.execute("SELECT * FROM tracks ORDER BY id"):
            tr = self._row_to_track(row)
            out["tracks"].append(
                {
                    "id": tr.id,
                    "playground_id": tr.playground_id,
                    "kind": tr.kind,
                    "eval_labels": tr.eval_labels,
                    "split": tr.split.to_json_dict(),
                    "policy": tr.policy,
                    "finalized": tr.finalized,
                    "created_at": tr.created_at,
                }
            )
        for row in conn.execute("SELECT * FROM model_versions ORDER BY model_id"):
            mv = self._row_to_version(row)
            out["model_versions"].append(
                {
                    "model_id": mv.model_id,
                    "track_id": mv.track_id,
                    "version": mv.version,
                    "submitter": mv.submitter,
                    "artifact": mv.artifact.to_json_dict(),
                    "preprocessor": mv.preprocessor,
                    "summary": mv.summary,
                    "scores_public": mv.scores_public.as_dict(),
                    "scores_secret": mv.scores_secret.as_dict()
                    if mv.scores_secret
                    else None,
                    "predictions": mv.predictions,
                    "custom_metadata": mv.custom_metadata,
                    "submitted_at": mv.submitted_at,
                }
            )
        return out
