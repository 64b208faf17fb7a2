"""Declarative input pipeline for tabular playgrounds.

A PreprocessSpec is plain JSON; no uploaded code runs server-side. It
declares the input columns (numeric or categorical) and an ordered list of
steps. Steps run in order against a working copy of the record:

- standard_scale  {column, mean, std}   -> emits (value - mean) / std
- min_max         {column, min, max}    -> emits (value - min) / (max - min)
- one_hot         {column, categories}  -> emits one indicator per category
- passthrough     {column}              -> emits the value unchanged
- constant_impute {column, value}       -> fills a null working value in
                                           place; emits nothing, so a later
                                           step on the same column sees the
                                           imputed value

Emitted outputs are concatenated in step order, so the feature width is a
function of the spec alone. Structural problems (std == 0, a declared column
no step consumes, an undeclared column referenced) are load-time errors, not
predict-time errors.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PreprocessSpecError, ValidationError

STEP_KINDS = ("standard_scale", "min_max", "one_hot", "constant_impute", "passthrough")
COLUMN_KINDS = ("numeric", "categorical")


@dataclass(frozen=True)
class ColumnDecl:
    name: str
    kind: str  # numeric | categorical


@dataclass(frozen=True)
class Step:
    kind: str
    column: str
    params: dict

    def output_width(self) -> int:
        if self.kind == "one_hot":
            return len(self.params["categories"])
        if self.kind == "constant_impute":
            return 0
        return 1


@dataclass
class PreprocessSpec:
    columns: list = field(default_factory=list)  # ColumnDecl
    steps: list = field(default_factory=list)  # Step

    def validate(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise PreprocessSpecError("duplicate column declarations")
        declared = dict((c.name, c.kind) for c in self.columns)
        for c in self.columns:
            if c.kind not in COLUMN_KINDS:
                raise PreprocessSpecError(
                    f"column {c.name!r} has unknown kind {c.kind!r}"
                )
        consumed = set()
        for step in self.steps:
            if step.kind not in STEP_KINDS:
                raise PreprocessSpecError(f"unknown step kind {step.kind!r}")
            if step.column not in declared:
                raise PreprocessSpecError(
                    f"step {step.kind} references undeclared column {step.column!r}"
                )
            consumed.add(step.column)
            if step.kind == "standard_scale":
                if float(step.params.get("std", 0.0)) == 0.0:
                    raise PreprocessSpecError(
                        f"standard_scale on {step.column!r} has std == 0"
                    )
            elif step.kind == "min_max":
                if float(step.params.get("max", 0.0)) == float(
                    step.params.get("min", 0.0)
                ):
                    raise PreprocessSpecError(
                        f"min_max on {step.column!r} has max == min"
                    )
            elif step.kind == "one_hot":
                cats = step.params.get("categories") or []
                if not cats:
                    raise PreprocessSpecError(
                        f"one_hot on {step.column!r} declares no categories"
                    )
                if len(set(map(str, cats))) != len(cats):
                    raise PreprocessSpecError(
                        f"one_hot on {step.column!r} has duplicate categories"
                    )
        unconsumed = [n for n in declared if n not in consumed]
        if unconsumed:
            raise PreprocessSpecError(
                f"declared columns never consumed by any step: {unconsumed}"
            )
        if self.output_width() == 0:
            raise PreprocessSpecError("spec produces zero output columns")

    def output_width(self) -> int:
        return sum(s.output_width() for s in self.steps)

    def to_json_dict(self) -> dict:
        return {
            "columns": [{"name": c.name, "kind": c.kind} for c in self.columns],
            "steps": [
                {"kind": s.kind, "column": s.column, **s.params} for s in self.steps
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PreprocessSpec":
        if not isinstance(d, dict):
            raise PreprocessSpecError("preprocessor spec must be a JSON object")
        columns = [
            ColumnDecl(name=c["name"], kind=c["kind"]) for c in d.get("columns", [])
        ]
        steps = []
        for s in d.get("steps", []):
            params = {k: v for k, v in s.items() if k not in ("kind", "column")}
            steps.append(Step(kind=s.get("kind", ""), column=s.get("column", ""), params=params))
        spec = cls(columns=columns, steps=steps)
        spec.validate()
        return spec


def apply_preprocess(spec: PreprocessSpec, record: dict) -> np.ndarray:
    """Transform one record into a 1 x width float32 row."""
    if not isinstance(record, dict):
        raise ValidationError("tabular records must be JSON objects")
    working = {}
    for col in spec.columns:
        if col.name not in record:
            raise ValidationError(f"record is missing column {col.name!r}")
        working[col.name] = record[col.name]

    out: list = []
    for step in spec.steps:
        value = working[step.column]
        if step.kind == "constant_impute":
            if value is None:
                working[step.column] = step.params["value"]
            continue
        if value is None:
            raise ValidationError(
                f"column {step.column!r} is null and no earlier impute step covers it"
            )
        if step.kind == "one_hot":
            categories = step.params["categories"]
            if value not in categories:
                raise ValidationError(
                    f"unknown category {value!r} for column {step.column!r}",
                    allowed_categories=list(categories),
                )
            out.extend(1.0 if value == c else 0.0 for c in categories)
            continue
        try:
            x = float(value)
        except (TypeError, ValueError):
            raise ValidationError(
                f"column {step.column!r} must be numeric, got {value!r}"
            ) from None
        if step.kind == "standard_scale":
            out.append((x - float(step.params["mean"])) / float(step.params["std"]))
        elif step.kind == "min_max":
            lo = float(step.params["min"])
            hi = float(step.params["max"])
            out.append((x - lo) / (hi - lo))
        else:  # passthrough
            out.append(x)

    return np.asarray([out], dtype=np.float32)


@dataclass(frozen=True)
class LabelMap:
    """Sorted distinct labels; argmax index -> label for classifiers."""

    labels: tuple

    def __len__(self) -> int:
        return len(self.labels)

    def to_json(self) -> list:
        return list(self.labels)

    @classmethod
    def from_json(cls, values) -> "LabelMap":
        return cls(labels=tuple(values))


def derive_label_map(y_train_labels) -> LabelMap:
    if not y_train_labels:
        raise ValidationError("y training labels must be nonempty")
    distinct = set(y_train_labels)
    try:
        ordered = sorted(distinct)
    except TypeError:
        raise ValidationError(
            "y training labels mix incomparable types"
        ) from None
    return LabelMap(labels=tuple(ordered))
