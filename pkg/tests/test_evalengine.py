from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modelhub.errors import TrackFinalizedError, ValidationError
from modelhub.evalengine import (
    Leaderboard,
    SplitMask,
    build_leaderboard,
    export_leaderboard,
    make_split,
    op_headline,
    reject_if_finalized,
    score_submission,
)
from modelhub.metrics import MetricReport


@dataclass
class TrackStub:
    id: str = "tr_test"
    kind: str = "experiment"
    eval_labels: list = field(default_factory=list)
    split: SplitMask = SplitMask.empty(0)
    finalized: bool = False


@dataclass
class VersionStub:
    version: int
    submitter: str = "u"
    model_id: str = ""
    submitted_at: str = "2026-01-01T00:00:00+00:00"
    scores_public: MetricReport = None
    scores_secret: MetricReport = None
    summary: dict = field(default_factory=dict)
    custom_metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.model_id:
            self.model_id = f"mv_{self.version}"


def clf_report(**values) -> MetricReport:
    base = {"accuracy": 0.0, "f1_macro": 0.0, "precision_macro": 0.0, "recall_macro": 0.0}
    base.update(values)
    return MetricReport(task_type="classification", values=base)


def reg_report(**values) -> MetricReport:
    base = {"mse": 0.0, "rmse": 0.0, "mae": 0.0, "r2": 0.0}
    base.update(values)
    return MetricReport(task_type="regression", values=base)


class TestScoreSubmission:
    def test_experiment_perfect_predictions(self):
        track = TrackStub(eval_labels=[1, 0, 1], split=SplitMask.empty(3))
        public, secret = score_submission(track, "classification", [1, 0, 1])
        assert public.values["accuracy"] == 1.0
        assert secret is None

    def test_competition_pinned_mask_indexing(self):
        # secret = {0, 1}: indices 2,3 are public and correct; 0,1 secret and wrong
        track = TrackStub(
            kind="competition",
            eval_labels=[0, 1, 1, 0],
            split=SplitMask(n=4, secret_indices=(0, 1), seed=0, secret_fraction=0.5),
        )
        public, secret = score_submission(track, "classification", [1, 0, 1, 0])
        assert public.values["accuracy"] == 1.0
        assert secret.values["accuracy"] == 0.0

    def test_length_mismatch_carries_expected_length(self):
        track = TrackStub(eval_labels=[0, 1, 0], split=SplitMask.empty(3))
        with pytest.raises(ValidationError) as err:
            score_submission(track, "classification", [0, 1])
        assert err.value.details["expected_length"] == 3

    def test_regression_type_mismatch(self):
        track = TrackStub(eval_labels=[1.0, 2.0], split=SplitMask.empty(2))
        with pytest.raises(ValidationError, match="numeric"):
            score_submission(track, "regression", ["high", "low"])

    def test_competition_split_derived_from_make_split(self):
        labels = list(range(10))
        mask = make_split(10, 0.5, 7)
        track = TrackStub(kind="competition", eval_labels=labels, split=mask)
        preds = list(labels)
        for i in mask.secret_indices:
            preds[i] = -1  # wrong on every secret row
        public, secret = score_submission(track, "classification", preds)
        assert public.values["accuracy"] == 1.0
        assert secret.values["accuracy"] == 0.0


class TestLeaderboardOrdering:
    def test_accuracy_descends(self):
        track = TrackStub()
        versions = [
            VersionStub(1, scores_public=clf_report(accuracy=0.8)),
            VersionStub(2, scores_public=clf_report(accuracy=0.9)),
        ]
        board = build_leaderboard(track, "classification", versions)
        assert [e.version for e in board.entries] == [2, 1]

    def test_rmse_ascends(self):
        track = TrackStub()
        versions = [
            VersionStub(1, scores_public=reg_report(rmse=1.0)),
            VersionStub(2, scores_public=reg_report(rmse=0.5)),
        ]
        board = build_leaderboard(track, "regression", versions, sort_metric="rmse")
        assert [e.version for e in board.entries] == [2, 1]

    def test_tie_breaks_on_earlier_submission(self):
        track = TrackStub()
        versions = [
            VersionStub(
                1,
                submitted_at="2026-01-02T00:00:00+00:00",
                scores_public=clf_report(accuracy=0.9),
            ),
            VersionStub(
                2,
                submitted_at="2026-01-01T00:00:00+00:00",
                scores_public=clf_report(accuracy=0.9),
            ),
        ]
        board = build_leaderboard(track, "classification", versions)
        assert [e.version for e in board.entries] == [2, 1]

    def test_full_tie_breaks_on_lower_version(self):
        track = TrackStub()
        versions = [
            VersionStub(2, scores_public=clf_report(accuracy=0.9)),
            VersionStub(1, scores_public=clf_report(accuracy=0.9)),
        ]
        board = build_leaderboard(track, "classification", versions)
        assert [e.version for e in board.entries] == [1, 2]

    def test_invalid_sort_metric_rejected(self):
        with pytest.raises(ValidationError, match="rmse"):
            build_leaderboard(
                TrackStub(),
                "classification",
                [VersionStub(1, scores_public=clf_report())],
                sort_metric="rmse",
            )

    def test_default_sort_metric_per_task(self):
        board = build_leaderboard(
            TrackStub(), "classification", [VersionStub(1, scores_public=clf_report())]
        )
        assert board.sort_metric == "accuracy"
        board = build_leaderboard(
            TrackStub(), "regression", [VersionStub(1, scores_public=reg_report())]
        )
        assert board.sort_metric == "rmse"

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=0, max_value=1, allow_nan=False),
                st.integers(min_value=0, max_value=5),
            ),
            min_size=1,
            max_size=12,
        )
    )
    def test_total_order_is_permutation_stable(self, rows):
        versions = [
            VersionStub(
                i + 1,
                submitted_at=f"2026-01-0{(day % 9) + 1}T00:00:00+00:00",
                scores_public=clf_report(accuracy=acc),
            )
            for i, (acc, day) in enumerate(rows)
        ]
        board_a = build_leaderboard(TrackStub(), "classification", versions)
        shuffled = list(versions)
        random.Random(7).shuffle(shuffled)
        board_b = build_leaderboard(TrackStub(), "classification", shuffled)
        assert [e.version for e in board_a.entries] == [
            e.version for e in board_b.entries
        ]


class TestSecretRanking:
    def make_versions(self):
        # public ranking favors v1; secret ranking inverts it
        return [
            VersionStub(
                1,
                scores_public=clf_report(accuracy=0.9),
                scores_secret=clf_report(accuracy=0.2),
            ),
            VersionStub(
                2,
                scores_public=clf_report(accuracy=0.7),
                scores_secret=clf_report(accuracy=0.8),
            ),
        ]

    def test_public_and_secret_boards_invert(self):
        track = TrackStub(kind="competition")
        versions = self.make_versions()
        public_board = build_leaderboard(track, "classification", versions)
        secret_board = build_leaderboard(
            track, "classification", versions, use_secret=True
        )
        assert [e.version for e in public_board.entries] == [1, 2]
        assert [e.version for e in secret_board.entries] == [2, 1]

    def test_public_board_hides_secret_values_by_default(self):
        board = build_leaderboard(TrackStub(), "classification", self.make_versions())
        assert all(e.secret_metrics is None for e in board.entries)

    def test_reject_if_finalized(self):
        with pytest.raises(TrackFinalizedError):
            reject_if_finalized(TrackStub(finalized=True))
        reject_if_finalized(TrackStub(finalized=False))


class TestExport:
    def board(self) -> Leaderboard:
        track = TrackStub()
        versions = [
            VersionStub(
                1,
                scores_public=clf_report(accuracy=0.75),
                summary={
                    "parameter_count": 67,
                    "memory_size_bytes": 268,
                    "op_histogram": {"Gemm": 2, "Relu": 1},
                },
                custom_metadata={"framework": "torch"},
            ),
            VersionStub(
                2,
                scores_public=clf_report(accuracy=0.5),
                custom_metadata={"epochs": 10},
            ),
        ]
        return build_leaderboard(track, "classification", versions)

    def test_json_roundtrip_is_lossless(self):
        board = self.board()
        data = export_leaderboard(board, "json")
        again = Leaderboard.from_json_dict(json.loads(data))
        assert again == board

    def test_csv_row_count(self):
        board = self.board()
        text = export_leaderboard(board, "csv").decode()
        rows = list(csv.reader(io.StringIO(text)))
        assert len(rows) == 3  # header + 2 entries

    def test_csv_columns_union_custom_keys(self):
        board = self.board()
        rows = list(csv.reader(io.StringIO(export_leaderboard(board, "csv").decode())))
        header = rows[0]
        assert "epochs" in header and "framework" in header
        by_col = {h: i for i, h in enumerate(header)}
        assert rows[1][by_col["framework"]] == "torch"
        assert rows[1][by_col["epochs"]] == ""  # missing key -> empty cell
        assert rows[2][by_col["epochs"]] == "10"

    def test_unknown_format_rejected(self):
        with pytest.raises(ValidationError):
            export_leaderboard(self.board(), "parquet")


def test_op_headline_orders_by_count_then_name():
    assert op_headline({"Relu": 1, "Gemm": 2, "Add": 1}) == "Gemm:2 Add:1 Relu:1"
