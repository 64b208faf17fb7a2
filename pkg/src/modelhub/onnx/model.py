"""Decode ONNX model bytes into typed graph structures.

Reads only the protobuf fields the registry summary and the inference runtime
need (graph topology, tensor types/shapes, initializer payloads, node
attributes). Field numbers follow the ONNX schema; unknown fields are
skipped, so models from full exporters decode fine.

`parse_model` also validates the graph: nodes must appear in topological
order with every input resolvable to a graph input, an initializer, or a
prior node's output.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import GraphInvalidError, OnnxParseError
from . import wire

# TensorProto.DataType values we can name; anything else renders as dtype<N>.
ELEM_TYPE_NAMES = {
    1: "f32",
    2: "u8",
    3: "i8",
    4: "u16",
    5: "i16",
    6: "i32",
    7: "i64",
    8: "string",
    9: "bool",
    10: "f16",
    11: "f64",
    12: "u32",
    13: "u64",
}
ELEM_TYPE_BY_NAME = {v: k for k, v in ELEM_TYPE_NAMES.items()}

_NUMPY_DTYPES = {
    1: np.dtype("<f4"),
    2: np.dtype("u1"),
    3: np.dtype("i1"),
    4: np.dtype("<u2"),
    5: np.dtype("<i2"),
    6: np.dtype("<i4"),
    7: np.dtype("<i8"),
    9: np.dtype("bool"),
    11: np.dtype("<f8"),
    12: np.dtype("<u4"),
    13: np.dtype("<u8"),
}

MIN_OPSET = 7


def elem_type_name(code: int) -> str:
    return ELEM_TYPE_NAMES.get(code, f"dtype<{code}>")


@dataclass
class TensorData:
    """One TensorProto: an initializer or a constant-attribute payload."""

    name: str = ""
    data_type: int = 0
    dims: list = field(default_factory=list)
    raw_data: bytes | None = None
    float_data: list = field(default_factory=list)
    int32_data: list = field(default_factory=list)
    int64_data: list = field(default_factory=list)
    double_data: list = field(default_factory=list)
    string_data: list = field(default_factory=list)

    @property
    def element_count(self) -> int:
        count = 1
        for d in self.dims:
            count *= d
        return count

    @property
    def payload_bytes(self) -> int:
        if self.raw_data is not None:
            return len(self.raw_data)
        if self.float_data:
            return 4 * len(self.float_data)
        if self.int32_data:
            return 4 * len(self.int32_data)
        if self.int64_data:
            return 8 * len(self.int64_data)
        if self.double_data:
            return 8 * len(self.double_data)
        if self.string_data:
            return sum(len(s) for s in self.string_data)
        return 0

    def to_numpy(self) -> np.ndarray:
        dtype = _NUMPY_DTYPES.get(self.data_type)
        if dtype is None:
            raise GraphInvalidError(
                f"tensor {self.name!r} has unsupported element type "
                f"{elem_type_name(self.data_type)}"
            )
        shape = tuple(self.dims)
        if self.raw_data is not None:
            arr = np.frombuffer(self.raw_data, dtype=dtype)
        elif self.float_data:
            arr = np.asarray(self.float_data, dtype=dtype)
        elif self.int64_data:
            arr = np.asarray(self.int64_data, dtype=dtype)
        elif self.int32_data:
            arr = np.asarray(self.int32_data, dtype=dtype)
        elif self.double_data:
            arr = np.asarray(self.double_data, dtype=dtype)
        else:
            arr = np.zeros(0, dtype=dtype)
        if arr.size != self.element_count:
            raise GraphInvalidError(
                f"tensor {self.name!r}: payload has {arr.size} elements, "
                f"dims {self.dims} require {self.element_count}"
            )
        return arr.reshape(shape)


@dataclass
class ValueInfo:
    name: str
    elem_type: int = 0
    # each dim: int (fixed), str (symbolic name), or None (unknown)
    dims: list = field(default_factory=list)
    has_shape: bool = False


@dataclass
class Node:
    op_type: str
    name: str = ""
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    attributes: dict = field(default_factory=dict)  # name -> python value


@dataclass
class Graph:
    name: str = ""
    nodes: list = field(default_factory=list)
    inputs: list = field(default_factory=list)  # ValueInfo
    outputs: list = field(default_factory=list)  # ValueInfo
    initializers: dict = field(default_factory=dict)  # name -> TensorData

    def data_inputs(self) -> list:
        """Graph inputs that are not shadowed by initializers (old exporters
        list weights as inputs too)."""
        return [vi for vi in self.inputs if vi.name not in self.initializers]


@dataclass
class OnnxModel:
    ir_version: int = 0
    producer: str = ""
    opset: int = 0
    graph: Graph = field(default_factory=Graph)


def _parse_tensor(buf: bytes) -> TensorData:
    t = TensorData()
    for fnum, wtype, value in wire.iter_fields(buf):
        if fnum == 1:  # dims
            if wtype == wire.WT_LEN:
                t.dims.extend(wire.decode_packed_varints(value))
            else:
                t.dims.append(wire.u64_to_int64(value))
        elif fnum == 2 and wtype == wire.WT_VARINT:
            t.data_type = value
        elif fnum == 4:
            if wtype == wire.WT_LEN:
                t.float_data.extend(wire.decode_packed_f32(value))
            else:  # unpacked: 32-bit entries
                t.float_data.append(_bits_to_f32(value))
        elif fnum == 5:
            if wtype == wire.WT_LEN:
                t.int32_data.extend(wire.decode_packed_varints(value))
            else:
                t.int32_data.append(wire.u64_to_int64(value))
        elif fnum == 6 and wtype == wire.WT_LEN:
            t.string_data.append(value)
        elif fnum == 7:
            if wtype == wire.WT_LEN:
                t.int64_data.extend(wire.decode_packed_varints(value))
            else:
                t.int64_data.append(wire.u64_to_int64(value))
        elif fnum == 8 and wtype == wire.WT_LEN:
            t.name = value.decode("utf-8", "replace")
        elif fnum == 9 and wtype == wire.WT_LEN:
            t.raw_data = value
        elif fnum == 10:
            if wtype == wire.WT_LEN:
                t.double_data.extend(wire.decode_packed_f64(value))
            else:
                t.double_data.append(_bits_to_f64(value))
    return t


def _bits_to_f32(bits: int) -> float:
    import struct

    return struct.unpack("<f", bits.to_bytes(4, "little"))[0]


def _bits_to_f64(bits: int) -> float:
    import struct

    return struct.unpack("<d", bits.to_bytes(8, "little"))[0]


# AttributeProto.AttributeType
ATTR_FLOAT, ATTR_INT, ATTR_STRING, ATTR_TENSOR = 1, 2, 3, 4
ATTR_FLOATS, ATTR_INTS, ATTR_STRINGS = 6, 7, 8


def _parse_attribute(buf: bytes) -> tuple[str, object]:
    name = ""
    atype = 0
    f_val = None
    i_val = None
    s_val = None
    t_val = None
    floats: list = []
    ints: list = []
    strings: list = []
    for fnum, wtype, value in wire.iter_fields(buf):
        if fnum == 1 and wtype == wire.WT_LEN:
            name = value.decode("utf-8", "replace")
        elif fnum == 2 and wtype == wire.WT_I32:
            f_val = _bits_to_f32(value)
        elif fnum == 3 and wtype == wire.WT_VARINT:
            i_val = wire.u64_to_int64(value)
        elif fnum == 4 and wtype == wire.WT_LEN:
            s_val = value
        elif fnum == 5 and wtype == wire.WT_LEN:
            t_val = _parse_tensor(value)
        elif fnum == 7:
            if wtype == wire.WT_LEN:
                floats.extend(wire.decode_packed_f32(value))
            else:
                floats.append(_bits_to_f32(value))
        elif fnum == 8:
            if wtype == wire.WT_LEN:
                ints.extend(wire.decode_packed_varints(value))
            else:
                ints.append(wire.u64_to_int64(value))
        elif fnum == 9 and wtype == wire.WT_LEN:
            strings.append(value)
        elif fnum == 20 and wtype == wire.WT_VARINT:
            atype = value

    if atype == ATTR_FLOAT or (atype == 0 and f_val is not None):
        return name, f_val
    if atype == ATTR_INT or (atype == 0 and i_val is not None):
        return name, i_val
    if atype == ATTR_STRING or (atype == 0 and s_val is not None):
        return name, s_val.decode("utf-8", "replace") if s_val is not None else ""
    if atype == ATTR_TENSOR or (atype == 0 and t_val is not None):
        return name, t_val
    if atype == ATTR_FLOATS or (atype == 0 and floats):
        return name, list(floats)
    if atype == ATTR_INTS or (atype == 0 and ints):
        return name, list(ints)
    if atype == ATTR_STRINGS or (atype == 0 and strings):
        return name, [s.decode("utf-8", "replace") for s in strings]
    # graph/sparse/typeproto attributes are outside the supported surface;
    # keep the name so summaries stay lossless about presence
    return name, None


def _parse_node(buf: bytes) -> Node:
    node = Node(op_type="")
    for fnum, wtype, value in wire.iter_fields(buf):
        if fnum == 1 and wtype == wire.WT_LEN:
            node.inputs.append(value.decode("utf-8", "replace"))
        elif fnum == 2 and wtype == wire.WT_LEN:
            node.outputs.append(value.decode("utf-8", "replace"))
        elif fnum == 3 and wtype == wire.WT_LEN:
            node.name = value.decode("utf-8", "replace")
        elif fnum == 4 and wtype == wire.WT_LEN:
            node.op_type = value.decode("utf-8", "replace")
        elif fnum == 5 and wtype == wire.WT_LEN:
            aname, avalue = _parse_attribute(value)
            node.attributes[aname] = avalue
    return node


def _parse_dims(buf: bytes) -> list:
    dims = []
    for fnum, wtype, value in wire.iter_fields(buf):
        if fnum != 1 or wtype != wire.WT_LEN:
            continue
        dim_value = None
        dim_param = None
        for dfnum, dwtype, dvalue in wire.iter_fields(value):
            if dfnum == 1 and dwtype == wire.WT_VARINT:
                dim_value = wire.u64_to_int64(dvalue)
            elif dfnum == 2 and dwtype == wire.WT_LEN:
                dim_param = dvalue.decode("utf-8", "replace")
        if dim_param:
            dims.append(dim_param)
        elif dim_value is not None:
            dims.append(dim_value)
        else:
            dims.append(None)
    return dims


def _parse_value_info(buf: bytes) -> ValueInfo:
    vi = ValueInfo(name="")
    for fnum, wtype, value in wire.iter_fields(buf):
        if fnum == 1 and wtype == wire.WT_LEN:
            vi.name = value.decode("utf-8", "replace")
        elif fnum == 2 and wtype == wire.WT_LEN:
            # TypeProto -> tensor_type (field 1) -> {elem_type 1, shape 2}
            for tfnum, twtype, tvalue in wire.iter_fields(value):
                if tfnum == 1 and twtype == wire.WT_LEN:
                    for sfnum, swtype, svalue in wire.iter_fields(tvalue):
                        if sfnum == 1 and swtype == wire.WT_VARINT:
                            vi.elem_type = svalue
                        elif sfnum == 2 and swtype == wire.WT_LEN:
                            vi.dims = _parse_dims(svalue)
                            vi.has_shape = True
    return vi


def _parse_graph(buf: bytes) -> Graph:
    g = Graph()
    for fnum, wtype, value in wire.iter_fields(buf):
        if fnum == 1 and wtype == wire.WT_LEN:
            g.nodes.append(_parse_node(value))
        elif fnum == 2 and wtype == wire.WT_LEN:
            g.name = value.decode("utf-8", "replace")
        elif fnum == 5 and wtype == wire.WT_LEN:
            tensor = _parse_tensor(value)
            g.initializers[tensor.name] = tensor
        elif fnum == 11 and wtype == wire.WT_LEN:
            g.inputs.append(_parse_value_info(value))
        elif fnum == 12 and wtype == wire.WT_LEN:
            g.outputs.append(_parse_value_info(value))
    return g


def decode_model(data: bytes) -> OnnxModel:
    """Wire-level decode without graph validation."""
    if not data:
        raise OnnxParseError("empty model bytes")
    model = OnnxModel()
    graph_seen = False
    for fnum, wtype, value in wire.iter_fields(data):
        if fnum == 1 and wtype == wire.WT_VARINT:
            model.ir_version = value
        elif fnum == 2 and wtype == wire.WT_LEN:
            model.producer = value.decode("utf-8", "replace")
        elif fnum == 7 and wtype == wire.WT_LEN:
            model.graph = _parse_graph(value)
            graph_seen = True
        elif fnum == 8 and wtype == wire.WT_LEN:
            domain = ""
            version = 0
            for ofnum, owtype, ovalue in wire.iter_fields(value):
                if ofnum == 1 and owtype == wire.WT_LEN:
                    domain = ovalue.decode("utf-8", "replace")
                elif ofnum == 2 and owtype == wire.WT_VARINT:
                    version = wire.u64_to_int64(ovalue)
            if domain in ("", "ai.onnx"):
                model.opset = version
    if not graph_seen:
        raise OnnxParseError("model has no graph")
    return model


def validate_graph(model: OnnxModel) -> None:
    """Check topological order and that every reference resolves."""
    if model.opset == 0:
        raise GraphInvalidError("model declares no default-domain opset")
    if model.opset < MIN_OPSET:
        raise GraphInvalidError(
            f"opset {model.opset} is older than the supported minimum {MIN_OPSET}"
        )
    g = model.graph
    known = {vi.name for vi in g.inputs} | set(g.initializers)
    for node in g.nodes:
        if not node.op_type:
            raise GraphInvalidError(f"node {node.name!r} has empty op_type")
        for inp in node.inputs:
            if inp == "":
                continue  # optional input slot
            if inp not in known:
                raise GraphInvalidError(
                    f"node {node.name or node.op_type!r} consumes undeclared "
                    f"tensor {inp!r}"
                )
        for out in node.outputs:
            if out == "":
                continue
            if out in known:
                raise GraphInvalidError(f"tensor {out!r} is defined twice")
            known.add(out)
    for vo in g.outputs:
        if vo.name not in known:
            raise GraphInvalidError(f"graph output {vo.name!r} is never produced")


def parse_model(data: bytes) -> OnnxModel:
    """Decode and validate; the entry point the registry and runtime share."""
    model = decode_model(data)
    validate_graph(model)
    return model
