"""Built-in evaluation metrics.

Classification tracks get accuracy plus macro-averaged precision, recall and
F1; regression tracks get MSE, RMSE, MAE and R². Conventions that make every
metric a total function (leaderboards need a total order):

- macro averages run over the sorted union of labels seen in y_true and
  y_pred; a class whose precision/recall/F1 denominator is zero contributes 0.
- R² with zero total variance is 1.0 for a perfect fit and 0.0 otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

CLASSIFICATION_METRIC_KEYS = ("accuracy", "f1_macro", "precision_macro", "recall_macro")
REGRESSION_METRIC_KEYS = ("mse", "rmse", "mae", "r2")

# Sort direction on leaderboards: these descend, error metrics ascend.
HIGHER_IS_BETTER = {"accuracy", "f1_macro", "precision_macro", "recall_macro", "r2"}

DEFAULT_SORT_METRIC = {"classification": "accuracy", "regression": "rmse"}


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count matrix; rows are true classes, columns predicted."""

    classes: tuple
    counts: tuple  # tuple of row tuples of ints

    def row(self, label) -> tuple:
        return self.counts[self.classes.index(label)]

    @property
    def total(self) -> int:
        return sum(sum(r) for r in self.counts)


@dataclass(frozen=True)
class MetricReport:
    task_type: str  # "classification" | "regression"
    values: dict  # fixed keys per task_type, float values

    def as_dict(self) -> dict:
        """Flat JSON object with the documented fixed key names."""
        keys = metric_keys(self.task_type)
        return {k: float(self.values[k]) for k in keys}

    @classmethod
    def from_dict(cls, task_type: str, values: dict) -> "MetricReport":
        keys = metric_keys(task_type)
        missing = [k for k in keys if k not in values]
        if missing:
            raise ValidationError(f"metric report missing keys: {missing}")
        return cls(task_type=task_type, values={k: float(values[k]) for k in keys})


def metric_keys(task_type: str) -> tuple:
    if task_type == "classification":
        return CLASSIFICATION_METRIC_KEYS
    if task_type == "regression":
        return REGRESSION_METRIC_KEYS
    raise ValidationError(f"unknown task_type {task_type!r}")


def _sorted_label_union(y_true, y_pred) -> list:
    seen = set(y_true) | set(y_pred)
    try:
        return sorted(seen)
    except TypeError:
        raise ValidationError(
            "labels are not mutually comparable (mixed types in y_true/y_pred)"
        ) from None


def _check_paired(y_true, y_pred) -> None:
    if len(y_true) != len(y_pred):
        raise ValidationError(
            "y_true and y_pred must have equal length",
            expected_length=len(y_true),
            actual_length=len(y_pred),
        )
    if len(y_true) == 0:
        raise ValidationError("y_true and y_pred must be nonempty")


def confusion_matrix(y_true, y_pred) -> ConfusionMatrix:
    """Tally (true, predicted) pairs over the sorted union of labels."""
    _check_paired(y_true, y_pred)
    classes = _sorted_label_union(y_true, y_pred)
    index = {c: i for i, c in enumerate(classes)}
    counts = [[0] * len(classes) for _ in classes]
    for t, p in zip(y_true, y_pred):
        counts[index[t]][index[p]] += 1
    return ConfusionMatrix(
        classes=tuple(classes), counts=tuple(tuple(r) for r in counts)
    )


def classification_report(y_true, y_pred) -> MetricReport:
    cm = confusion_matrix(y_true, y_pred)
    n = cm.total
    k = len(cm.classes)
    matches = sum(cm.counts[i][i] for i in range(k))

    precisions, recalls, f1s = [], [], []
    for i in range(k):
        tp = cm.counts[i][i]
        fp = sum(cm.counts[r][i] for r in range(k)) - tp
        fn = sum(cm.counts[i]) - tp
        prec = tp / (tp + fp) if tp + fp > 0 else 0.0
        rec = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec > 0 else 0.0
        precisions.append(prec)
        recalls.append(rec)
        f1s.append(f1)

    return MetricReport(
        task_type="classification",
        values={
            "accuracy": matches / n,
            "f1_macro": sum(f1s) / k,
            "precision_macro": sum(precisions) / k,
            "recall_macro": sum(recalls) / k,
        },
    )


def regression_report(y_true, y_pred) -> MetricReport:
    _check_paired(y_true, y_pred)
    try:
        yt = [float(v) for v in y_true]
        yp = [float(v) for v in y_pred]
    except (TypeError, ValueError):
        raise ValidationError("regression values must be numeric") from None
    if any(not math.isfinite(v) for v in yt + yp):
        raise ValidationError("regression values must be finite (no NaN/inf)")

    n = len(yt)
    residuals = [t - p for t, p in zip(yt, yp)]
    mse = sum(r * r for r in residuals) / n
    mae = sum(abs(r) for r in residuals) / n
    mean_y = sum(yt) / n
    ss_res = sum(r * r for r in residuals)
    ss_tot = sum((t - mean_y) ** 2 for t in yt)
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res == 0.0 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot

    return MetricReport(
        task_type="regression",
        values={"mse": mse, "rmse": math.sqrt(mse), "mae": mae, "r2": r2},
    )


def compute_report(task_type: str, y_true, y_pred) -> MetricReport:
    if task_type == "classification":
        return classification_report(y_true, y_pred)
    if task_type == "regression":
        return regression_report(y_true, y_pred)
    raise ValidationError(f"unknown task_type {task_type!r}")
