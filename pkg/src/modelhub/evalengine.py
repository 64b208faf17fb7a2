"""Scoring engine: secret splits, submission evaluation, leaderboards.

The secret/public split must be reproducible across processes and
implementations, so the shuffle is pinned: Fisher-Yates driven by SplitMix64
(constants 0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB), with
`j = next_u64() % (i + 1)`. Modulo bias is negligible at the supported sizes
(n <= 10^6). The secret count is round-half-up of `secret_fraction * n`,
clamped to keep both partitions nonempty.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .errors import TrackFinalizedError, ValidationError
from .metrics import (
    DEFAULT_SORT_METRIC,
    HIGHER_IS_BETTER,
    compute_report,
    metric_keys,
)

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit PRNG; the documented constants are the whole contract."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


@dataclass(frozen=True)
class SplitMask:
    n: int
    secret_indices: tuple  # sorted ints
    seed: int
    secret_fraction: float

    @property
    def public_indices(self) -> tuple:
        secret = set(self.secret_indices)
        return tuple(i for i in range(self.n) if i not in secret)

    @property
    def is_empty(self) -> bool:
        return not self.secret_indices

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "secret_indices": list(self.secret_indices),
            "seed": self.seed,
            "secret_fraction": self.secret_fraction,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SplitMask":
        return cls(
            n=d["n"],
            secret_indices=tuple(d["secret_indices"]),
            seed=d["seed"],
            secret_fraction=d["secret_fraction"],
        )

    @classmethod
    def empty(cls, n: int) -> "SplitMask":
        return cls(n=n, secret_indices=(), seed=0, secret_fraction=0.0)

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_json_dict(), sort_keys=True).encode()


def make_split(n: int, secret_fraction: float, seed: int) -> SplitMask:
    if n < 2:
        raise ValidationError(f"need at least 2 evaluation rows, got {n}")
    if not 0.0 < secret_fraction < 1.0:
        raise ValidationError(
            f"secret_fraction must be in (0, 1), got {secret_fraction}"
        )
    k = math.floor(secret_fraction * n + 0.5)
    k = min(max(k, 1), n - 1)

    indices = list(range(n))
    rng = SplitMix64(seed)
    for i in range(n - 1, 0, -1):
        j = rng.next_u64() % (i + 1)
        indices[i], indices[j] = indices[j], indices[i]
    return SplitMask(
        n=n,
        secret_indices=tuple(sorted(indices[:k])),
        seed=seed,
        secret_fraction=secret_fraction,
    )


def score_submission(track, task_type: str, predictions) -> tuple:
    """Evaluate predictions; returns (public_report, secret_report_or_None).

    `track` needs `.eval_labels`, `.split` and `.kind` (registry EvalTrack or
    any stand-in with those fields).
    """
    labels = track.eval_labels
    if not isinstance(predictions, (list, tuple)):
        raise ValidationError("predictions must be a list")
    if len(predictions) != len(labels):
        raise ValidationError(
            "predictions length does not match evaluation data",
            expected_length=len(labels),
            actual_length=len(predictions),
        )
    if task_type == "regression":
        for v in predictions:
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ValidationError(
                    f"regression predictions must be numeric, got {type(v).__name__}"
                )
    else:
        for v in predictions:
            if isinstance(v, (list, dict)):
                raise ValidationError("classification predictions must be scalar labels")

    if track.kind == "experiment" or track.split.is_empty:
        return compute_report(task_type, list(labels), list(predictions)), None

    secret = set(track.split.secret_indices)
    pub_idx = [i for i in range(len(labels)) if i not in secret]
    sec_idx = sorted(secret)
    public_report = compute_report(
        task_type, [labels[i] for i in pub_idx], [predictions[i] for i in pub_idx]
    )
    secret_report = compute_report(
        task_type, [labels[i] for i in sec_idx], [predictions[i] for i in sec_idx]
    )
    return public_report, secret_report


# --- leaderboards ------------------------------------------------------------


def op_headline(op_histogram: dict) -> str:
    """Compact op mix, busiest first: "Gemm:2 Relu:1 Softmax:1"."""
    items = sorted(op_histogram.items(), key=lambda kv: (-kv[1], kv[0]))
    return " ".join(f"{op}:{count}" for op, count in items)


@dataclass(frozen=True)
class LeaderboardEntry:
    version: int
    model_id: str
    submitter: str
    submitted_at: str  # ISO-8601 UTC, lexicographically ordered
    metrics: dict  # public MetricReport values
    secret_metrics: dict | None
    parameter_count: int
    memory_size_bytes: int
    ops: str
    custom_metadata: dict

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "model_id": self.model_id,
            "submitter": self.submitter,
            "submitted_at": self.submitted_at,
            "metrics": dict(self.metrics),
            "secret_metrics": dict(self.secret_metrics)
            if self.secret_metrics is not None
            else None,
            "parameter_count": self.parameter_count,
            "memory_size_bytes": self.memory_size_bytes,
            "ops": self.ops,
            "custom_metadata": dict(self.custom_metadata),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LeaderboardEntry":
        return cls(
            version=d["version"],
            model_id=d["model_id"],
            submitter=d["submitter"],
            submitted_at=d["submitted_at"],
            metrics=dict(d["metrics"]),
            secret_metrics=dict(d["secret_metrics"])
            if d.get("secret_metrics") is not None
            else None,
            parameter_count=d["parameter_count"],
            memory_size_bytes=d["memory_size_bytes"],
            ops=d["ops"],
            custom_metadata=dict(d["custom_metadata"]),
        )


@dataclass
class Leaderboard:
    track_id: str
    task_type: str
    sort_metric: str
    ranked_on: str  # "public" | "secret"
    entries: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "track_id": self.track_id,
            "task_type": self.task_type,
            "sort_metric": self.sort_metric,
            "ranked_on": self.ranked_on,
            "entries": [e.to_json_dict() for e in self.entries],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Leaderboard":
        return cls(
            track_id=d["track_id"],
            task_type=d["task_type"],
            sort_metric=d["sort_metric"],
            ranked_on=d["ranked_on"],
            entries=[LeaderboardEntry.from_json_dict(e) for e in d["entries"]],
        )


def rank_key(sort_metric: str):
    """Total order: metric (direction-aware), then submitted_at, then version."""
    descending = sort_metric in HIGHER_IS_BETTER

    def key(entry_tuple):
        value, submitted_at, version = entry_tuple
        return (-value if descending else value, submitted_at, version)

    return key


def build_leaderboard(
    track,
    task_type: str,
    versions: list,
    sort_metric: str | None = None,
    use_secret: bool = False,
    include_secret: bool | None = None,
) -> Leaderboard:
    """Rank stored model versions for one track.

    `use_secret` ranks on the secret-split reports (finalized competitions or
    owner views). `include_secret` controls whether secret values appear in
    entries at all; it defaults to `use_secret`.
    """
    keys = metric_keys(task_type)
    if sort_metric is None:
        sort_metric = DEFAULT_SORT_METRIC[task_type]
    if sort_metric not in keys:
        raise ValidationError(
            f"sort metric {sort_metric!r} not valid for {task_type}",
            valid_metrics=list(keys),
        )
    if include_secret is None:
        include_secret = use_secret

    entries = []
    for mv in versions:
        public = mv.scores_public.as_dict()
        secret = mv.scores_secret.as_dict() if mv.scores_secret is not None else None
        if use_secret and secret is None:
            raise ValidationError(
                f"version {mv.version} has no secret-split scores to rank on"
            )
        summary = mv.summary or {}
        entries.append(
            LeaderboardEntry(
                version=mv.version,
                model_id=mv.model_id,
                submitter=mv.submitter,
                submitted_at=mv.submitted_at,
                metrics=public,
                secret_metrics=secret if include_secret else None,
                parameter_count=summary.get("parameter_count", 0),
                memory_size_bytes=summary.get("memory_size_bytes", 0),
                ops=op_headline(summary.get("op_histogram", {})),
                custom_metadata=dict(mv.custom_metadata),
            )
        )

    key = rank_key(sort_metric)
    entries.sort(
        key=lambda e: key(
            (
                (e.secret_metrics if use_secret else e.metrics)[sort_metric],
                e.submitted_at,
                e.version,
            )
        )
    )
    return Leaderboard(
        track_id=track.id,
        task_type=task_type,
        sort_metric=sort_metric,
        ranked_on="secret" if use_secret else "public",
        entries=entries,
    )


def finalize_competition(registry, track_id: str, sort_metric: str | None = None) -> Leaderboard:
    """Freeze a competition and return its secret-split leaderboard.

    Idempotent: finalizing twice returns the same board.
    """
    track = registry.get_track(track_id)
    if track.kind != "competition":
        raise ValidationError("only competition tracks can be finalized")
    if not track.finalized:
        registry.mark_finalized(track_id)
        track = registry.get_track(track_id)
    playground = registry.get_playground(track.playground_id)
    versions = registry.list_versions(track_id)
    return build_leaderboard(
        track,
        playground.task_type,
        versions,
        sort_metric=sort_metric,
        use_secret=True,
    )


def reject_if_finalized(track) -> None:
    if track.finalized:
        raise TrackFinalizedError(
            f"track {track.id} is finalized; no further submissions accepted"
        )


def export_leaderboard(board: Leaderboard, format: str) -> bytes:
    """JSON export is lossless; CSV flattens custom metadata into columns."""
    if format == "json":
        return json.dumps(board.to_json_dict(), sort_keys=True, indent=2).encode()
    if format != "csv":
        raise ValidationError(f"unknown export format {format!r}")

    keys = metric_keys(board.task_type)
    custom_keys = sorted({k for e in board.entries for k in e.custom_metadata})
    with_secret = any(e.secret_metrics is not None for e in board.entries)

    header = ["version", "submitter", "submitted_at"]
    header += list(keys)
    if with_secret:
        header += [f"secret_{k}" for k in keys]
    header += ["parameter_count", "memory_size_bytes", "ops"]
    header += custom_keys

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for e in board.entries:
        row = [e.version, e.submitter, e.submitted_at]
        row += [e.metrics[k] for k in keys]
        if with_secret:
            row += [
                "" if e.secret_metrics is None else e.secret_metrics[k] for k in keys
            ]
        row += [e.parameter_count, e.memory_size_bytes, e.ops]
        row += [e.custom_metadata.get(k, "") for k in custom_keys]
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")
