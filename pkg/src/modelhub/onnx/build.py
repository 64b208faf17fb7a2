"""Encode ONNX model bytes for the message subset this package reads.

The test fixtures (small MLPs, constant-output models, deliberately broken
graphs) are produced with these helpers; they emit standard ONNX protobuf
that any ONNX tool can open.
"""
from __future__ import annotations

import numpy as np

from . import wire
from .model import ATTR_FLOAT, ATTR_FLOATS, ATTR_INT, ATTR_INTS, ATTR_STRING, ATTR_TENSOR, TensorData

_DATA_TYPE_BY_NUMPY = {
    np.dtype("float32"): 1,
    np.dtype("uint8"): 2,
    np.dtype("int8"): 3,
    np.dtype("int32"): 6,
    np.dtype("int64"): 7,
    np.dtype("bool"): 9,
    np.dtype("float64"): 11,
}


def tensor_proto(name: str, array: np.ndarray) -> bytes:
    arr = np.ascontiguousarray(array)
    data_type = _DATA_TYPE_BY_NUMPY.get(arr.dtype)
    if data_type is None:
        raise ValueError(f"unsupported fixture dtype {arr.dtype}")
    out = bytearray()
    for d in arr.shape:
        out += wire.field_varint(1, d)
    out += wire.field_varint(2, data_type)
    out += wire.field_string(8, name)
    le = arr.astype(arr.dtype.newbyteorder("<"), copy=False)
    out += wire.field_len(9, le.tobytes())
    return bytes(out)


def tensor_data(name: str, array: np.ndarray) -> TensorData:
    arr = np.ascontiguousarray(array)
    return TensorData(
        name=name,
        data_type=_DATA_TYPE_BY_NUMPY[arr.dtype],
        dims=list(arr.shape),
        raw_data=arr.astype(arr.dtype.newbyteorder("<"), copy=False).tobytes(),
    )


def _attribute_proto(name: str, value) -> bytes:
    out = bytearray()
    out += wire.field_string(1, name)
    if isinstance(value, bool):
        raise ValueError("use int attribute values, not bool")
    if isinstance(value, float):
        out += wire.field_f32(2, value)
        out += wire.field_varint(20, ATTR_FLOAT)
    elif isinstance(value, int):
        out += wire.field_varint(3, value)
        out += wire.field_varint(20, ATTR_INT)
    elif isinstance(value, str):
        out += wire.field_len(4, value.encode("utf-8"))
        out += wire.field_varint(20, ATTR_STRING)
    elif isinstance(value, np.ndarray):
        out += wire.field_len(5, tensor_proto("", value))
        out += wire.field_varint(20, ATTR_TENSOR)
    elif isinstance(value, (list, tuple)) and value and isinstance(value[0], float):
        out += wire.packed_f32(7, list(value))
        out += wire.field_varint(20, ATTR_FLOATS)
    elif isinstance(value, (list, tuple)):
        out += wire.packed_varints(8, [int(v) for v in value])
        out += wire.field_varint(20, ATTR_INTS)
    else:
        raise ValueError(f"unsupported attribute value for {name!r}: {value!r}")
    return bytes(out)


def node_proto(op_type: str, inputs, outputs, name: str = "", **attributes) -> bytes:
    out = bytearray()
    for inp in inputs:
        out += wire.field_string(1, inp)
    for o in outputs:
        out += wire.field_string(2, o)
    if name:
        out += wire.field_string(3, name)
    out += wire.field_string(4, op_type)
    for aname, avalue in attributes.items():
        out += wire.field_len(5, _attribute_proto(aname, avalue))
    return bytes(out)


def value_info_proto(name: str, elem_type: int, dims) -> bytes:
    shape = bytearray()
    for d in dims:
        if isinstance(d, str):
            dim = wire.field_string(2, d)
        elif d is None:
            dim = b""
        else:
            dim = wire.field_varint(1, int(d))
        shape += wire.field_len(1, dim)
    tensor_type = wire.field_varint(1, elem_type) + wire.field_len(2, bytes(shape))
    type_proto = wire.field_len(1, tensor_type)
    return wire.field_string(1, name) + wire.field_len(2, type_proto)


def model_bytes(
    nodes: list[bytes],
    inputs: list[bytes],
    outputs: list[bytes],
    initializers: list[bytes] = (),
    graph_name: str = "graph",
    opset: int = 13,
    producer: str = "modelhub",
    ir_version: int = 8,
) -> bytes:
    graph = bytearray()
    for n in nodes:
        graph += wire.field_len(1, n)
    graph += wire.field_string(2, graph_name)
    for init in initializers:
        graph += wire.field_len(5, init)
    for vi in inputs:
        graph += wire.field_len(11, vi)
    for vo in outputs:
        graph += wire.field_len(12, vo)

    opset_id = wire.field_string(1, "") + wire.field_varint(2, opset)

    out = bytearray()
    out += wire.field_varint(1, ir_version)
    out += wire.field_string(2, producer)
    out += wire.field_len(7, bytes(graph))
    out += wire.field_len(8, bytes(opset_id))
    return bytes(out)
