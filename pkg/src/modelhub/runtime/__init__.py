"""Built-in inference runtime: preprocessing, graph interpreter, prediction."""

from .graph import RuntimeModel, run_graph
from .ops import SUPPORTED_OPS
from .predict import postprocess, predict
from .preprocess import (
    ColumnDecl,
    LabelMap,
    PreprocessSpec,
    Step,
    apply_preprocess,
    derive_label_map,
)
from .tensor import TensorValue

__all__ = [
    "RuntimeModel",
    "run_graph",
    "SUPPORTED_OPS",
    "postprocess",
    "predict",
    "ColumnDecl",
    "LabelMap",
    "PreprocessSpec",
    "Step",
    "apply_preprocess",
    "derive_label_map",
    "TensorValue",
]
