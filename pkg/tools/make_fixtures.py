"""Generate the binary model fixtures and interpreter golden outputs.

Run once from the repo root; outputs are checked into tests/fixtures/. The
expected outputs are computed with torch (an independent executor) and, for
the core math ops, cross-checked against plain-Python loops, so the goldens
never touch the package's own interpreter.

    python tools/make_fixtures.py
"""
from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import numpy as np
import torch

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from modelhub.onnx import build  # noqa: E402

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

F32 = 1
I64 = 7


# --- model builders -----------------------------------------------------------


def mlp_bytes(widths: tuple, seed: int, graph_name: str) -> tuple[bytes, dict]:
    """Gemm -> Relu -> ... -> Gemm -> Softmax over the given layer widths."""
    rng = np.random.RandomState(seed)
    weights = {}
    nodes = []
    inits = []
    prev = "x"
    for i in range(len(widths) - 1):
        w = rng.uniform(-1.0, 1.0, size=(widths[i], widths[i + 1])).astype(np.float32)
        b = rng.uniform(-0.5, 0.5, size=(widths[i + 1],)).astype(np.float32)
        weights[f"W{i + 1}"] = w
        weights[f"b{i + 1}"] = b
        inits.append(build.tensor_proto(f"W{i + 1}", w))
        inits.append(build.tensor_proto(f"b{i + 1}", b))
        out = f"h{i + 1}"
        nodes.append(
            build.node_proto(
                "Gemm",
                [prev, f"W{i + 1}", f"b{i + 1}"],
                [out],
                name=f"fc{i + 1}",
                alpha=1.0,
                beta=1.0,
                transA=0,
                transB=0,
            )
        )
        prev = out
        if i < len(widths) - 2:
            act = f"a{i + 1}"
            nodes.append(build.node_proto("Relu", [prev], [act], name=f"relu{i + 1}"))
            prev = act
    nodes.append(build.node_proto("Softmax", [prev], ["probs"], name="softmax", axis=-1))
    data = build.model_bytes(
        nodes=nodes,
        inputs=[build.value_info_proto("x", F32, ["N", widths[0]])],
        outputs=[build.value_info_proto("probs", F32, ["N", widths[-1]])],
        initializers=inits,
        graph_name=graph_name,
        producer="modelhub-fixtures",
    )
    return data, weights


def mlp_forward(weights: dict, x: np.ndarray, layers: int) -> np.ndarray:
    """Independent reference forward pass (torch, float64)."""
    h = torch.tensor(x, dtype=torch.float64)
    for i in range(1, layers + 1):
        w = torch.tensor(weights[f"W{i}"], dtype=torch.float64)
        b = torch.tensor(weights[f"b{i}"], dtype=torch.float64)
        h = h @ w + b
        if i < layers:
            h = torch.relu(h)
    return torch.softmax(h, dim=-1).numpy()


def mlp_forward_pure(weights: dict, x: list, layers: int) -> list:
    """Same forward pass in plain Python, to cross-check the torch reference."""
    rows = []
    for row in x:
        h = list(row)
        for i in range(1, layers + 1):
            w = weights[f"W{i}"].tolist()
            b = weights[f"b{i}"].tolist()
            out = []
            for j in range(len(b)):
                s = b[j]
                for k in range(len(h)):
                    s += h[k] * w[k][j]
                out.append(s)
            if i < layers:
                out = [v if v > 0 else 0.0 for v in out]
            h = out
        m = max(h)
        exps = [math.exp(v - m) for v in h]
        total = sum(exps)
        rows.append([e / total for e in exps])
    return rows


def const_model_bytes(value: float, width_in: int = 4) -> bytes:
    w = np.zeros((width_in, 1), dtype=np.float32)
    b = np.array([value], dtype=np.float32)
    nodes = [
        build.node_proto(
            "Gemm", ["x", "W", "b"], ["y"], name="const_out", alpha=1.0, beta=1.0
        )
    ]
    return build.model_bytes(
        nodes=nodes,
        inputs=[build.value_info_proto("x", F32, ["N", width_in])],
        outputs=[build.value_info_proto("y", F32, ["N", 1])],
        initializers=[build.tensor_proto("W", w), build.tensor_proto("b", b)],
        graph_name=f"const_{value}",
        producer="modelhub-fixtures",
    )


def form_model_bytes() -> tuple[bytes, dict]:
    """7-feature classifier used by the schema/web-form fixtures."""
    data, weights = mlp_bytes((7, 5, 2), seed=11, graph_name="form_mlp")
    return data, weights


def invalid_dangling_bytes() -> bytes:
    nodes = [build.node_proto("Relu", ["ghost"], ["y"], name="bad")]
    return build.model_bytes(
        nodes=nodes,
        inputs=[build.value_info_proto("x", F32, ["N", 2])],
        outputs=[build.value_info_proto("y", F32, ["N", 2])],
        graph_name="dangling",
    )


# --- op golden generation -------------------------------------------------------

_rng = np.random.RandomState(20240701)


def _rand(shape, dtype="f32") -> np.ndarray:
    if dtype == "i64":
        return _rng.randint(-20, 20, size=shape).astype(np.int64)
    arr = _rng.uniform(-2.0, 2.0, size=shape)
    return arr.astype(np.float32 if dtype == "f32" else np.float64)


def _tensor_json(arr: np.ndarray) -> dict:
    kind = {np.float32: "f32", np.float64: "f64", np.int64: "i64"}[arr.dtype.type]
    return {"dtype": kind, "shape": list(arr.shape), "data": arr.ravel().tolist()}


def _t(arr: np.ndarray) -> torch.Tensor:
    return torch.tensor(arr)


def _case(op, inputs, expected, attrs=None, init_inputs=None):
    return {
        "op": op,
        "attrs": attrs or {},
        "inputs": [_tensor_json(a) for a in inputs],
        # inputs at these positions are graph initializers, not the data input
        "init_inputs": init_inputs or [],
        "expected": _tensor_json(np.asarray(expected)),
    }


def gen_op_cases() -> list:
    cases = []

    # Gemm: vary dims, transpositions, alpha/beta, with and without bias
    for i in range(12):
        m, k, n = _rng.randint(1, 7, size=3)
        trans_a = int(i % 3 == 1)
        trans_b = int(i % 4 == 2)
        alpha = float(np.round(_rng.uniform(0.5, 2.0), 3))
        beta = float(np.round(_rng.uniform(0.5, 2.0), 3))
        a = _rand((k, m) if trans_a else (m, k))
        b = _rand((n, k) if trans_b else (k, n))
        use_bias = i % 5 != 3
        at = _t(a).double().T if trans_a else _t(a).double()
        bt = _t(b).double().T if trans_b else _t(b).double()
        y = alpha * (at @ bt)
        inputs = [a, b]
        if use_bias:
            c = _rand((n,)) if i % 2 == 0 else _rand((m, n))
            inputs.append(c)
            y = y + beta * _t(c).double()
        cases.append(
            _case(
                "Gemm",
                inputs,
                y.float().numpy(),
                attrs={"alpha": alpha, "beta": beta, "transA": trans_a, "transB": trans_b},
                init_inputs=list(range(1, len(inputs))),
            )
        )

    # MatMul: 2D and batched
    for i in range(10):
        if i < 6:
            m, k, n = _rng.randint(1, 7, size=3)
            a, b = _rand((m, k)), _rand((k, n))
        else:
            batch, m, k, n = _rng.randint(1, 5, size=4)
            a, b = _rand((batch, m, k)), _rand((batch, k, n))
        y = torch.matmul(_t(a).double(), _t(b).double()).float().numpy()
        cases.append(_case("MatMul", [a, b], y, init_inputs=[1]))

    # elementwise binary with broadcasting
    for op, fn in [
        ("Add", lambda a, b: a + b),
        ("Sub", lambda a, b: a - b),
        ("Mul", lambda a, b: a * b),
        ("Div", lambda a, b: a / b),
    ]:
        for i in range(10):
            shape = tuple(_rng.randint(1, 6, size=_rng.randint(1, 4)))
            b_shape = shape if i % 3 else shape[-1:]
            a = _rand(shape)
            b = _rand(b_shape)
            if op == "Div":
                b = np.where(np.abs(b) < 0.1, 0.5, b).astype(np.float32)
            y = fn(_t(a).double(), _t(b).double()).float().numpy()
            cases.append(_case(op, [a, b], y, init_inputs=[1]))

    # unary activations
    for op, fn in [
        ("Relu", torch.relu),
        ("Sigmoid", torch.sigmoid),
        ("Tanh", torch.tanh),
    ]:
        for _ in range(10):
            shape = tuple(_rng.randint(1, 6, size=_rng.randint(1, 4)))
            a = _rand(shape)
            y = fn(_t(a).double()).float().numpy()
            cases.append(_case(op, [a], y))

    # Softmax over varying axes
    for i in range(10):
        rank = _rng.randint(1, 4)
        shape = tuple(_rng.randint(1, 6, size=rank))
        axis = int(_rng.randint(-rank, rank))
        a = _rand(shape)
        y = torch.softmax(_t(a).double(), dim=axis).float().numpy()
        cases.append(_case("Softmax", [a], y, attrs={"axis": axis}))

    # Identity
    for _ in range(10):
        a = _rand(tuple(_rng.randint(1, 6, size=2)))
        cases.append(_case("Identity", [a], a))

    # Reshape (shape as i64 initializer)
    for i in range(10):
        m, n = _rng.randint(1, 5, size=2)
        a = _rand((m, n, 2))
        targets = [
            [int(m), int(n * 2)],
            [-1],
            [0, -1],
            [int(m * n), 2],
            [2, -1],
        ]
        target = targets[i % len(targets)]
        shape = np.asarray(target, dtype=np.int64)
        concrete = []
        for j, tdim in enumerate(target):
            concrete.append(a.shape[j] if tdim == 0 else tdim)
        y = _t(a).reshape(concrete).numpy()
        cases.append(_case("Reshape", [a, shape], y, init_inputs=[1]))

    # Flatten over each valid axis
    for i in range(10):
        shape = tuple(_rng.randint(1, 5, size=3))
        axis = i % 4
        a = _rand(shape)
        head = int(np.prod(shape[:axis])) if axis else 1
        y = _t(a).reshape(head, -1).numpy()
        cases.append(_case("Flatten", [a], y, attrs={"axis": axis}))

    # Transpose with explicit and default perm
    for i in range(10):
        rank = _rng.randint(2, 4)
        shape = tuple(_rng.randint(1, 5, size=rank))
        a = _rand(shape)
        if i % 2:
            perm = list(_rng.permutation(rank))
            y = np.transpose(a, perm)
            cases.append(_case("Transpose", [a], y, attrs={"perm": [int(p) for p in perm]}))
        else:
            y = np.transpose(a)
            cases.append(_case("Transpose", [a], y))

    # Concat of 2 tensors along a random axis (second is an initializer)
    for _ in range(10):
        rank = _rng.randint(1, 4)
        shape = list(_rng.randint(1, 5, size=rank))
        axis = int(_rng.randint(0, rank))
        other = list(shape)
        other[axis] = int(_rng.randint(1, 5))
        a, b = _rand(tuple(shape)), _rand(tuple(other))
        y = torch.cat([_t(a), _t(b)], dim=axis).numpy()
        cases.append(_case("Concat", [a, b], y, attrs={"axis": axis}, init_inputs=[1]))

    # Cast between the supported element types
    for i in range(10):
        shape = tuple(_rng.randint(1, 6, size=2))
        src, to_code, to_torch = [
            ("f32", 7, torch.int64),
            ("f32", 11, torch.float64),
            ("i64", 1, torch.float32),
            ("f64", 1, torch.float32),
            ("i64", 11, torch.float64),
        ][i % 5]
        a = _rand(shape, src)
        y = _t(a).to(to_torch).numpy()
        cases.append(_case("Cast", [a], y, attrs={"to": to_code}))

    # ArgMax across axes/keepdims (ties vanishingly unlikely with uniforms)
    for i in range(10):
        rank = _rng.randint(1, 4)
        shape = tuple(_rng.randint(2, 6, size=rank))
        axis = int(_rng.randint(-rank, rank))
        keepdims = i % 2
        a = _rand(shape)
        y = torch.argmax(_t(a).double(), dim=axis, keepdim=bool(keepdims)).numpy()
        cases.append(
            _case("ArgMax", [a], y, attrs={"axis": axis, "keepdims": keepdims})
        )

    # Constant: value tensor carried as attribute; data input only anchors the graph
    for i in range(10):
        dtype = "f32" if i % 2 else "i64"
        value = _rand(tuple(_rng.randint(1, 5, size=2)), dtype)
        anchor = _rand((1, 2))
        cases.append(
            _case(
                "Constant",
                [anchor],
                value,
                attrs={"__constant_value__": _tensor_json(value)},
            )
        )

    return cases


def crosscheck_gemm(cases: list) -> None:
    """Pure-Python verification of the torch-derived Gemm goldens."""
    checked = 0
    for case in cases:
        if case["op"] != "Gemm":
            continue
        attrs = case["attrs"]
        ins = case["inputs"]
        a = np.asarray(ins[0]["data"], dtype=np.float64).reshape(ins[0]["shape"])
        b = np.asarray(ins[1]["data"], dtype=np.float64).reshape(ins[1]["shape"])
        if attrs["transA"]:
            a = a.T
        if attrs["transB"]:
            b = b.T
        m, k = a.shape
        n = b.shape[1]
        y = [[0.0] * n for _ in range(m)]
        for i in range(m):
            for j in range(n):
                s = 0.0
                for x in range(k):
                    s += a[i][x] * b[x][j]
                y[i][j] = attrs["alpha"] * s
        if len(ins) > 2:
            c = np.broadcast_to(
                np.asarray(ins[2]["data"], dtype=np.float64).reshape(ins[2]["shape"]),
                (m, n),
            )
            for i in range(m):
                for j in range(n):
                    y[i][j] += attrs["beta"] * c[i][j]
        expected = np.asarray(case["expected"]["data"]).reshape(
            case["expected"]["shape"]
        )
        assert np.allclose(y, expected, atol=1e-4), "torch/pure-python Gemm mismatch"
        checked += 1
    print(f"  cross-checked {checked} Gemm cases against pure-python loops")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    mlp_small, w_small = mlp_bytes((4, 8, 3), seed=7, graph_name="mlp_4_8_3")
    mlp_wide, w_wide = mlp_bytes((4, 16, 3), seed=7, graph_name="mlp_4_16_3")
    (FIXTURES / "mlp_4_8_3.onnx").write_bytes(mlp_small)
    (FIXTURES / "mlp_4_16_3.onnx").write_bytes(mlp_wide)

    # same trunk as mlp_4_8_3 plus one extra Relu before the softmax
    rng = np.random.RandomState(7)
    nodes = []
    inits = []
    for i, dims in enumerate([(4, 8), (8, 3)], start=1):
        w = rng.uniform(-1.0, 1.0, size=dims).astype(np.float32)
        b = rng.uniform(-0.5, 0.5, size=(dims[1],)).astype(np.float32)
        inits += [build.tensor_proto(f"W{i}", w), build.tensor_proto(f"b{i}", b)]
    nodes.append(
        build.node_proto("Gemm", ["x", "W1", "b1"], ["h1"], name="fc1", alpha=1.0, beta=1.0, transA=0, transB=0)
    )
    nodes.append(build.node_proto("Relu", ["h1"], ["a1"], name="relu1"))
    nodes.append(
        build.node_proto("Gemm", ["a1", "W2", "b2"], ["h2"], name="fc2", alpha=1.0, beta=1.0, transA=0, transB=0)
    )
    nodes.append(build.node_proto("Relu", ["h2"], ["a2"], name="relu_extra"))
    nodes.append(build.node_proto("Softmax", ["a2"], ["probs"], name="softmax", axis=-1))
    extra = build.model_bytes(
        nodes=nodes,
        inputs=[build.value_info_proto("x", F32, ["N", 4])],
        outputs=[build.value_info_proto("probs", F32, ["N", 3])],
        initializers=inits,
        graph_name="mlp_4_8_3_extra_relu",
        producer="modelhub-fixtures",
    )
    (FIXTURES / "mlp_4_8_3_extra_relu.onnx").write_bytes(extra)

    (FIXTURES / "const_7.onnx").write_bytes(const_model_bytes(7.0))
    (FIXTURES / "const_9.onnx").write_bytes(const_model_bytes(9.0))
    (FIXTURES / "invalid_dangling.onnx").write_bytes(invalid_dangling_bytes())

    form_model, w_form = form_model_bytes()
    (FIXTURES / "form_mlp_7_5_2.onnx").write_bytes(form_model)

    # end-to-end goldens for the pinned rows
    pinned = np.round(
        np.random.RandomState(99).uniform(-1.5, 1.5, size=(5, 4)), 4
    ).astype(np.float32)
    golden = {
        "rows": pinned.tolist(),
        "mlp_4_8_3_probs": mlp_forward(w_small, pinned, 2).tolist(),
        "mlp_4_16_3_probs": mlp_forward(w_wide, pinned, 2).tolist(),
    }
    pure = mlp_forward_pure(w_small, pinned.tolist(), 2)
    assert np.allclose(pure, golden["mlp_4_8_3_probs"], atol=1e-9)
    print("  cross-checked MLP forward against pure-python loops")

    form_rows = np.round(
        np.random.RandomState(5).uniform(-1.0, 1.0, size=(3, 7)), 4
    ).astype(np.float32)
    golden["form_rows"] = form_rows.tolist()
    golden["form_mlp_probs"] = mlp_forward(w_form, form_rows, 2).tolist()
    (FIXTURES / "mlp_goldens.json").write_text(json.dumps(golden, indent=1))

    cases = gen_op_cases()
    crosscheck_gemm(cases)
    (FIXTURES / "op_goldens.json").write_text(json.dumps(cases))
    print(f"wrote {len(cases)} op golden cases")

    per_op = {}
    for c in cases:
        per_op[c["op"]] = per_op.get(c["op"], 0) + 1
    print("  cases per op:", per_op)


if __name__ == "__main__":
    main()
