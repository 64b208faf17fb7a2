"""ONNX subset codec, architecture summaries, and model comparison."""

from .diff import DiffRow, FieldChange, ModelDiff, compare_models
from .model import Graph, Node, OnnxModel, TensorData, decode_model, parse_model
from .render import render_architecture_text
from .summary import DYNAMIC, IoSummary, NodeSummary, OnnxModelSummary, extract_summary

__all__ = [
    "DiffRow",
    "FieldChange",
    "ModelDiff",
    "compare_models",
    "Graph",
    "Node",
    "OnnxModel",
    "TensorData",
    "decode_model",
    "parse_model",
    "render_architecture_text",
    "DYNAMIC",
    "IoSummary",
    "NodeSummary",
    "OnnxModelSummary",
    "extract_summary",
]
