"""Architecture metadata extracted from a parsed model.

The summary is what the registry stores and leaderboards flatten: per-node op
types and attributes, statically inferred output shapes, initializer (weight)
shapes per node, total parameter count and initializer payload size.

Shape entries are ints, symbolic dim names (str), or None when a single dim
is unknown; a whole shape degrades to the string "dynamic" when nothing can
be said. Propagation covers the runtime's op set; any other op yields
"dynamic" but is still summarized (registry breadth exceeds serving breadth).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import Graph, Node, OnnxModel, TensorData, elem_type_name

DYNAMIC = "dynamic"


@dataclass(frozen=True)
class IoSummary:
    name: str
    elem_type: str
    shape: list

    def to_json_dict(self) -> dict:
        return {"name": self.name, "elem_type": self.elem_type, "shape": self.shape}

    @classmethod
    def from_json_dict(cls, d: dict) -> "IoSummary":
        return cls(name=d["name"], elem_type=d["elem_type"], shape=d["shape"])


@dataclass(frozen=True)
class NodeSummary:
    op_type: str
    name: str
    attributes: dict
    output_shape: object  # list of dims or "dynamic"
    param_shapes: list  # dims of each initializer input, in input-slot order

    def to_json_dict(self) -> dict:
        return {
            "op_type": self.op_type,
            "name": self.name,
            "attributes": self.attributes,
            "output_shape": self.output_shape,
            "param_shapes": self.param_shapes,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "NodeSummary":
        return cls(
            op_type=d["op_type"],
            name=d["name"],
            attributes=d["attributes"],
            output_shape=d["output_shape"],
            param_shapes=d["param_shapes"],
        )


@dataclass
class OnnxModelSummary:
    producer: str
    opset: int
    inputs: list = field(default_factory=list)  # IoSummary
    outputs: list = field(default_factory=list)
    nodes: list = field(default_factory=list)  # NodeSummary
    parameter_count: int = 0
    memory_size_bytes: int = 0
    op_histogram: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "producer": self.producer,
            "opset": self.opset,
            "inputs": [io.to_json_dict() for io in self.inputs],
            "outputs": [io.to_json_dict() for io in self.outputs],
            "nodes": [n.to_json_dict() for n in self.nodes],
            "parameter_count": self.parameter_count,
            "memory_size_bytes": self.memory_size_bytes,
            "op_histogram": dict(self.op_histogram),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "OnnxModelSummary":
        return cls(
            producer=d["producer"],
            opset=d["opset"],
            inputs=[IoSummary.from_json_dict(x) for x in d["inputs"]],
            outputs=[IoSummary.from_json_dict(x) for x in d["outputs"]],
            nodes=[NodeSummary.from_json_dict(x) for x in d["nodes"]],
            parameter_count=d["parameter_count"],
            memory_size_bytes=d["memory_size_bytes"],
            op_histogram=dict(d["op_histogram"]),
        )


def _attr_jsonable(value):
    if isinstance(value, TensorData):
        # constant payloads summarized by type/shape, not raw bytes
        return {
            "tensor": {
                "elem_type": elem_type_name(value.data_type),
                "dims": list(value.dims),
            }
        }
    if isinstance(value, bytes):
        return value.decode("utf-8", "replace")
    if isinstance(value, (list, tuple)):
        return [_attr_jsonable(v) for v in value]
    return value


# --- static shape propagation ------------------------------------------------


def _broadcast(a, b):
    if a is DYNAMIC or b is DYNAMIC:
        return DYNAMIC
    out = []
    ra, rb = list(a), list(b)
    while len(ra) < len(rb):
        ra.insert(0, 1)
    while len(rb) < len(ra):
        rb.insert(0, 1)
    for da, db in zip(ra, rb):
        if da == db:
            out.append(da)
        elif da == 1:
            out.append(db)
        elif db == 1:
            out.append(da)
        else:
            out.append(None)
    return out


def _prod_known(dims):
    prod = 1
    for d in dims:
        if not isinstance(d, int):
            return None
        prod *= d
    return prod


class _ShapeProp:
    def __init__(self, graph: Graph):
        self.shapes: dict = {}
        self.const_values: dict = {}
        for vi in graph.data_inputs():
            self.shapes[vi.name] = list(vi.dims) if vi.has_shape else DYNAMIC
        for name, tensor in graph.initializers.items():
            self.shapes[name] = list(tensor.dims)
            if tensor.element_count <= 64 and tensor.data_type in (6, 7):
                try:
                    self.const_values[name] = tensor.to_numpy()
                except Exception:
                    pass

    def shape_of(self, name: str):
        return self.shapes.get(name, DYNAMIC)

    def visit(self, node: Node):
        out_shape = self._infer(node)
        for out in node.outputs:
            if out:
                self.shapes[out] = out_shape
        return out_shape

    def _infer(self, node: Node):
        op = node.op_type
        ins = [self.shape_of(i) for i in node.inputs if i != ""]
        handler = getattr(self, f"_op_{op.lower()}", None)
        if handler is None:
            return DYNAMIC
        try:
            return handler(node, ins)
        except Exception:
            return DYNAMIC

    def _op_gemm(self, node, ins):
        a, b = ins[0], ins[1]
        if a is DYNAMIC or b is DYNAMIC or len(a) != 2 or len(b) != 2:
            return DYNAMIC
        trans_a = node.attributes.get("transA", 0)
        trans_b = node.attributes.get("transB", 0)
        m = a[1] if trans_a else a[0]
        n = b[0] if trans_b else b[1]
        return [m, n]

    def _op_matmul(self, node, ins):
        a, b = ins[0], ins[1]
        if a is DYNAMIC or b is DYNAMIC or len(a) < 2 or len(b) < 2:
            return DYNAMIC
        batch = _broadcast(a[:-2], b[:-2])
        if batch is DYNAMIC:
            return DYNAMIC
        return list(batch) + [a[-2], b[-1]]

    def _binary(self, node, ins):
        return _broadcast(ins[0], ins[1])

    _op_add = _op_sub = _op_mul = _op_div = _binary

    def _same(self, node, ins):
        return ins[0] if ins else DYNAMIC

    _op_relu = _op_sigmoid = _op_tanh = _op_softmax = _same
    _op_identity = _op_cast = _same

    def _op_reshape(self, node, ins):
        data = ins[0]
        target = None
        if len(node.inputs) > 1:
            target = self.const_values.get(node.inputs[1])
        if target is None:
            return DYNAMIC
        target = [int(v) for v in np.asarray(target).ravel()]
        out = []
        for i, t in enumerate(target):
            if t == 0:
                if data is DYNAMIC or i >= len(data):
                    return DYNAMIC
                out.append(data[i])
            elif t == -1:
                out.append(None)
            else:
                out.append(t)
        if None in out:
            total = None if data is DYNAMIC else _prod_known(data)
            known = _prod_known([d for d in out if d is not None])
            if total is not None and known:
                out[out.index(None)] = total // known
        return out

    def _op_flatten(self, node, ins):
        data = ins[0]
        if data is DYNAMIC:
            return DYNAMIC
        axis = node.attributes.get("axis", 1)
        if axis < 0:
            axis += len(data)
        head = _prod_known(data[:axis])
        tail = _prod_known(data[axis:])
        if axis == 1 and len(data) >= 1 and not isinstance(data[0], int):
            # keep a symbolic batch dim intact: (N, prod(rest))
            return [data[0], tail]
        return [1 if axis == 0 else head, tail]

    def _op_transpose(self, node, ins):
        data = ins[0]
        if data is DYNAMIC:
            return DYNAMIC
        perm = node.attributes.get("perm") or list(range(len(data) - 1, -1, -1))
        return [data[p] for p in perm]

    def _op_concat(self, node, ins):
        if any(s is DYNAMIC for s in ins) or not ins:
            return DYNAMIC
        rank = len(ins[0])
        axis = node.attributes.get("axis", 0)
        if axis < 0:
            axis += rank
        out = list(ins[0])
        total = 0
        for s in ins:
            d = s[axis]
            if not isinstance(d, int):
                total = None
                break
            total += d
        out[axis] = total
        return out

    def _op_constant(self, node, ins):
        value = node.attributes.get("value")
        if isinstance(value, TensorData):
            arr_shape = list(value.dims)
            self._remember_const(node, value)
            return arr_shape
        if "value_float" in node.attributes or "value_int" in node.attributes:
            return []
        if "value_floats" in node.attributes:
            return [len(node.attributes["value_floats"])]
        if "value_ints" in node.attributes:
            return [len(node.attributes["value_ints"])]
        return DYNAMIC

    def _remember_const(self, node: Node, tensor: TensorData):
        if tensor.element_count <= 64 and tensor.data_type in (6, 7):
            try:
                value = tensor.to_numpy()
            except Exception:
                return
            for out in node.outputs:
                if out:
                    self.const_values[out] = value

    def _op_argmax(self, node, ins):
        data = ins[0]
        if data is DYNAMIC:
            return DYNAMIC
        axis = node.attributes.get("axis", 0)
        if axis < 0:
            axis += len(data)
        keepdims = node.attributes.get("keepdims", 1)
        out = list(data)
        if keepdims:
            out[axis] = 1
        else:
            out.pop(axis)
        return out


def extract_summary(model: OnnxModel) -> OnnxModelSummary:
    """Total on valid graphs; unsupported ops still appear with shape "dynamic"."""
    g = model.graph
    prop = _ShapeProp(g)

    nodes = []
    histogram: dict = {}
    for node in g.nodes:
        out_shape = prop.visit(node)
        histogram[node.op_type] = histogram.get(node.op_type, 0) + 1
        param_shapes = [
            list(g.initializers[i].dims) for i in node.inputs if i in g.initializers
        ]
        nodes.append(
            NodeSummary(
                op_type=node.op_type,
                name=node.name,
                attributes={
                    k: _attr_jsonable(v) for k, v in sorted(node.attributes.items())
                },
                output_shape=out_shape,
                param_shapes=param_shapes,
            )
        )

    parameter_count = sum(t.element_count for t in g.initializers.values())
    memory_size_bytes = sum(t.payload_bytes for t in g.initializers.values())

    def io_summary(vi):
        return IoSummary(
            name=vi.name,
            elem_type=elem_type_name(vi.elem_type),
            shape=list(vi.dims) if vi.has_shape else DYNAMIC,
        )

    return OnnxModelSummary(
        producer=model.producer,
        opset=model.opset,
        inputs=[io_summary(vi) for vi in g.data_inputs()],
        outputs=[io_summary(vo) for vo in g.outputs],
        nodes=nodes,
        parameter_count=parameter_count,
        memory_size_bytes=memory_size_bytes,
        op_histogram=histogram,
    )
