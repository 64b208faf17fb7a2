"""End-to-end prediction: preprocess -> graph -> label mapping.

Each record runs as its own batch of one, so batching requests can never
change a row's result; bad rows are reported individually without aborting
the rest of the batch.
"""
from __future__ import annotations

import numpy as np

from ..errors import HubError, ValidationError
from .graph import RuntimeModel
from .preprocess import LabelMap, apply_preprocess


def postprocess(task_type: str, label_map: LabelMap | None, raw: np.ndarray) -> list:
    """Translate raw model output rows into prediction values."""
    arr = np.asarray(raw)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if task_type == "classification" else arr.reshape(-1, 1)
    if arr.ndim != 2:
        arr = arr.reshape(arr.shape[0], -1)

    if task_type == "classification":
        if label_map is None:
            raise ValidationError("classification playground has no label map")
        if arr.shape[-1] != len(label_map):
            raise ValidationError(
                "model output width does not match label map",
                output_width=int(arr.shape[-1]),
                label_map_size=len(label_map),
            )
        # ties resolve to the lowest index (np.argmax picks the first maximum)
        return [label_map.labels[int(i)] for i in np.argmax(arr, axis=-1)]

    if arr.shape[-1] != 1:
        raise ValidationError(
            "regression output must be one value per row",
            output_width=int(arr.shape[-1]),
        )
    return [float(v) for v in arr[:, 0]]


def _record_to_input(model: RuntimeModel, record) -> np.ndarray:
    if model.input_type == "tabular":
        if model.preprocessor is None:
            raise ValidationError("tabular model was deployed without a preprocessor")
        return apply_preprocess(model.preprocessor, record)
    # image input: raw normalized array shaped like one non-batch input row
    try:
        arr = np.asarray(record, dtype=np.float32)
    except (ValueError, TypeError):
        raise ValidationError("image record must be a numeric array") from None
    return arr.reshape((1,) + arr.shape)


def predict(model: RuntimeModel, records: list) -> list:
    """Run every record; returns one status dict per row, in order.

    Raises a batch-level error only when no row succeeds.
    """
    if not isinstance(records, list) or not records:
        raise ValidationError("request must contain at least one record")

    results = []
    ok_count = 0
    for record in records:
        try:
            x = _record_to_input(model, record)
            raw = model.run(x)
            value = postprocess(model.task_type, model.label_map, raw)[0]
        except HubError as exc:
            results.append({"status": "error", "error": exc.to_body()})
            continue
        results.append({"status": "ok", "prediction": value})
        ok_count += 1

    if ok_count == 0:
        raise ValidationError(
            "every record in the batch failed validation",
            row_errors=[r["error"] for r in results],
        )
    return results
