"""Loaded, validated runtime model and node-by-node graph execution."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import GraphInvalidError, ShapeError, ValidationError
from ..onnx.model import OnnxModel, parse_model
from .ops import OP_KERNELS, validate_node_supported
from .preprocess import LabelMap, PreprocessSpec
from .tensor import TensorValue


@dataclass(frozen=True)
class InputSignature:
    name: str
    dims: tuple  # ints for fixed dims, str/None where flexible (batch)

    @property
    def feature_width(self) -> int | None:
        if len(self.dims) >= 2 and isinstance(self.dims[-1], int):
            return self.dims[-1]
        return None


class RuntimeModel:
    """Immutable after construction; `run` is reentrant and lock-free.

    Construction performs every load-time check: supported ops, resolvable
    weights, a single data input, preprocessor width against the graph input
    width, and label-map width against a statically known output width.
    """

    def __init__(
        self,
        model: OnnxModel,
        task_type: str,
        input_type: str = "tabular",
        preprocessor: PreprocessSpec | None = None,
        label_map: LabelMap | None = None,
    ):
        self.model = model
        self.task_type = task_type
        self.input_type = input_type
        self.preprocessor = preprocessor
        self.label_map = label_map

        graph = model.graph
        for node in graph.nodes:
            validate_node_supported(node)

        self.weights = {
            name: tensor.to_numpy() for name, tensor in graph.initializers.items()
        }

        data_inputs = graph.data_inputs()
        if len(data_inputs) != 1:
            raise GraphInvalidError(
                f"runtime requires exactly one data input, graph has {len(data_inputs)}"
            )
        vi = data_inputs[0]
        self.input = InputSignature(name=vi.name, dims=tuple(vi.dims))
        if not graph.outputs:
            raise GraphInvalidError("graph declares no outputs")
        self.output_name = graph.outputs[0].name

        if preprocessor is not None:
            preprocessor.validate()
            width = self.input.feature_width
            if width is not None and width != preprocessor.output_width():
                raise ValidationError(
                    "preprocessor output width does not match graph input width",
                    preprocessor_width=preprocessor.output_width(),
                    graph_input_width=width,
                )

        if task_type == "classification" and label_map is not None:
            out_dims = graph.outputs[0].dims
            if out_dims and isinstance(out_dims[-1], int) and out_dims[-1] != len(label_map):
                raise ValidationError(
                    "label map size does not match model output width",
                    label_map_size=len(label_map),
                    output_width=out_dims[-1],
                )

    @classmethod
    def load(
        cls,
        model_bytes: bytes,
        task_type: str,
        input_type: str = "tabular",
        preprocessor: PreprocessSpec | None = None,
        label_map: LabelMap | None = None,
    ) -> "RuntimeModel":
        return cls(
            parse_model(model_bytes),
            task_type=task_type,
            input_type=input_type,
            preprocessor=preprocessor,
            label_map=label_map,
        )

    def check_input_shape(self, shape: tuple) -> None:
        dims = self.input.dims
        if len(shape) != len(dims):
            raise ShapeError(
                "input rank does not match model signature",
                expected=list(dims),
                actual=list(shape),
            )
        # first dim is the flexible batch; fixed trailing dims must agree
        for want, got in zip(dims[1:], shape[1:]):
            if isinstance(want, int) and want != got:
                raise ShapeError(
                    "input shape does not match model signature",
                    expected=list(dims),
                    actual=list(shape),
                )

    def run(self, x: np.ndarray) -> np.ndarray:
        """Evaluate the graph on one batch; returns the first graph output."""
        self.check_input_shape(x.shape)
        env = dict(self.weights)
        env[self.input.name] = x
        for node in self.model.graph.nodes:
            kernel = OP_KERNELS[node.op_type]
            inputs = [env[name] if name else None for name in node.inputs]
            result = kernel(node, inputs)
            env[node.outputs[0]] = result
            for extra in node.outputs[1:]:
                if extra:
                    env[extra] = result
        return env[self.output_name]


def run_graph(model: RuntimeModel, value: TensorValue) -> TensorValue:
    return TensorValue(model.run(value.array))
