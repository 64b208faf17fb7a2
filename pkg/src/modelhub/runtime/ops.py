"""Operator kernels for the built-in graph interpreter.

Each kernel maps (node, input arrays) -> output array with ONNX semantics
for the supported subset. Dtypes follow the graph: f32 unless tensors declare
f64; ArgMax and shape tensors are i64.
"""
from __future__ import annotations

import numpy as np

from ..errors import GraphInvalidError, ShapeError, UnsupportedOpError
from ..onnx.model import Node, TensorData

# Cast targets limited to the runtime's element types.
_CAST_TARGETS = {1: np.float32, 7: np.int64, 11: np.float64}


def _shape_err(op: str, *shapes) -> ShapeError:
    return ShapeError(
        f"{op}: incompatible shapes {' vs '.join(str(tuple(s)) for s in shapes)}",
        shapes=[list(s) for s in shapes],
    )


def op_gemm(node: Node, inputs: list) -> np.ndarray:
    a, b = inputs[0], inputs[1]
    alpha = float(node.attributes.get("alpha", 1.0))
    beta = float(node.attributes.get("beta", 1.0))
    if node.attributes.get("transA", 0):
        a = a.T
    if node.attributes.get("transB", 0):
        b = b.T
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise _shape_err("Gemm", a.shape, b.shape)
    y = alpha * (a @ b)
    if len(inputs) > 2 and inputs[2] is not None:
        c = inputs[2]
        try:
            y = y + beta * np.broadcast_to(c, y.shape)
        except ValueError:
            raise _shape_err("Gemm bias", c.shape, y.shape) from None
    return y.astype(a.dtype, copy=False)


def op_matmul(node: Node, inputs: list) -> np.ndarray:
    a, b = inputs[0], inputs[1]
    try:
        return np.matmul(a, b)
    except ValueError:
        raise _shape_err("MatMul", a.shape, b.shape) from None


def _binary(opname: str, fn):
    def kernel(node: Node, inputs: list) -> np.ndarray:
        a, b = inputs[0], inputs[1]
        try:
            return fn(a, b)
        except ValueError:
            raise _shape_err(opname, a.shape, b.shape) from None

    return kernel


def _div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if np.issubdtype(a.dtype, np.integer) and np.issubdtype(b.dtype, np.integer):
        # ONNX integer division truncates toward zero
        return np.fix(np.true_divide(a, b)).astype(a.dtype)
    return a / b


def op_relu(node: Node, inputs: list) -> np.ndarray:
    x = inputs[0]
    return np.maximum(x, np.array(0, dtype=x.dtype))


def op_sigmoid(node: Node, inputs: list) -> np.ndarray:
    x = inputs[0]
    with np.errstate(over="ignore"):
        return (1.0 / (1.0 + np.exp(-x))).astype(x.dtype, copy=False)


def op_tanh(node: Node, inputs: list) -> np.ndarray:
    return np.tanh(inputs[0])


def op_softmax(node: Node, inputs: list) -> np.ndarray:
    x = inputs[0]
    axis = node.attributes.get("axis", -1)
    shifted = x - np.max(x, axis=axis, keepdims=True)
    e = np.exp(shifted)
    return (e / np.sum(e, axis=axis, keepdims=True)).astype(x.dtype, copy=False)


def op_identity(node: Node, inputs: list) -> np.ndarray:
    return inputs[0].copy()


def op_reshape(node: Node, inputs: list) -> np.ndarray:
    data, shape = inputs[0], inputs[1]
    target = [int(v) for v in np.asarray(shape).ravel()]
    allowzero = node.attributes.get("allowzero", 0)
    dims = []
    for i, t in enumerate(target):
        if t == 0 and not allowzero:
            if i >= data.ndim:
                raise _shape_err("Reshape", data.shape, target)
            dims.append(data.shape[i])
        else:
            dims.append(t)
    try:
        return data.reshape(dims)
    except ValueError:
        raise _shape_err("Reshape", data.shape, dims) from None


def op_flatten(node: Node, inputs: list) -> np.ndarray:
    x = inputs[0]
    axis = node.attributes.get("axis", 1)
    if axis < 0:
        axis += x.ndim
    head = int(np.prod(x.shape[:axis])) if axis > 0 else 1
    return x.reshape(head, -1)


def op_transpose(node: Node, inputs: list) -> np.ndarray:
    x = inputs[0]
    perm = node.attributes.get("perm")
    try:
        return np.transpose(x, perm)
    except (ValueError, np.exceptions.AxisError):
        raise _shape_err("Transpose", x.shape, perm or []) from None


def op_concat(node: Node, inputs: list) -> np.ndarray:
    if "axis" not in node.attributes:
        raise GraphInvalidError("Concat requires an axis attribute")
    try:
        return np.concatenate(inputs, axis=node.attributes["axis"])
    except ValueError:
        raise _shape_err("Concat", *[x.shape for x in inputs]) from None


def op_constant(node: Node, inputs: list) -> np.ndarray:
    attrs = node.attributes
    if isinstance(attrs.get("value"), TensorData):
        return attrs["value"].to_numpy()
    if "value_float" in attrs:
        return np.asarray(attrs["value_float"], dtype=np.float32)
    if "value_int" in attrs:
        return np.asarray(attrs["value_int"], dtype=np.int64)
    if "value_floats" in attrs:
        return np.asarray(attrs["value_floats"], dtype=np.float32)
    if "value_ints" in attrs:
        return np.asarray(attrs["value_ints"], dtype=np.int64)
    raise GraphInvalidError("Constant node carries no supported value attribute")


def op_cast(node: Node, inputs: list) -> np.ndarray:
    to = node.attributes.get("to", 0)
    dtype = _CAST_TARGETS.get(to)
    if dtype is None:
        raise UnsupportedOpError(f"Cast to element type {to} is not supported")
    return inputs[0].astype(dtype)


def op_argmax(node: Node, inputs: list) -> np.ndarray:
    x = inputs[0]
    axis = node.attributes.get("axis", 0)
    keepdims = node.attributes.get("keepdims", 1)
    # numpy argmax returns the first (lowest-index) maximum, the pinned rule
    idx = np.argmax(x, axis=axis).astype(np.int64)
    if keepdims:
        idx = np.expand_dims(idx, axis=axis)
    return idx


OP_KERNELS = {
    "Gemm": op_gemm,
    "MatMul": op_matmul,
    "Add": _binary("Add", lambda a, b: a + b),
    "Sub": _binary("Sub", lambda a, b: a - b),
    "Mul": _binary("Mul", lambda a, b: a * b),
    "Div": _binary("Div", _div),
    "Relu": op_relu,
    "Sigmoid": op_sigmoid,
    "Tanh": op_tanh,
    "Softmax": op_softmax,
    "Identity": op_identity,
    "Reshape": op_reshape,
    "Flatten": op_flatten,
    "Transpose": op_transpose,
    "Concat": op_concat,
    "Constant": op_constant,
    "Cast": op_cast,
    "ArgMax": op_argmax,
}

SUPPORTED_OPS = frozenset(OP_KERNELS)


def validate_node_supported(node: Node) -> None:
    """Load-time gate: reject ops (and Cast targets) the interpreter lacks."""
    if node.op_type not in SUPPORTED_OPS:
        raise UnsupportedOpError(
            f"operator {node.op_type!r} is not supported by the built-in runtime",
            op_type=node.op_type,
        )
    if node.op_type == "Cast" and node.attributes.get("to", 0) not in _CAST_TARGETS:
        raise UnsupportedOpError(
            f"Cast to element type {node.attributes.get('to', 0)} is not supported",
            op_type="Cast",
        )
