"""Terminal-friendly architecture tables for summaries and diffs."""
from __future__ import annotations

from .diff import ModelDiff, STATUS_CHANGED, STATUS_ONLY_LEFT, STATUS_ONLY_RIGHT, STATUS_SAME
from .summary import DYNAMIC, NodeSummary, OnnxModelSummary

_STATUS_MARKS = {
    STATUS_SAME: "=",
    STATUS_CHANGED: "~",
    STATUS_ONLY_LEFT: "-",
    STATUS_ONLY_RIGHT: "+",
}


def format_shape(shape) -> str:
    if shape == DYNAMIC:
        return "dynamic"
    return "[" + ", ".join("?" if d is None else str(d) for d in shape) + "]"


def _format_attrs(attributes: dict) -> str:
    return " ".join(f"{k}={attributes[k]}" for k in sorted(attributes)) or "-"


def _format_params(param_shapes: list) -> str:
    if not param_shapes:
        return "-"
    return " ".join("x".join(str(d) for d in dims) or "scalar" for dims in param_shapes)


def _table(headers: list, rows: list) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _node_cells(node: NodeSummary) -> list:
    return [
        node.op_type,
        node.name or "-",
        _format_params(node.param_shapes),
        format_shape(node.output_shape),
        _format_attrs(node.attributes),
    ]


def render_summary_text(summary: OnnxModelSummary) -> str:
    lines = [
        f"producer: {summary.producer or '-'}  opset: {summary.opset}",
        "inputs:  "
        + (
            ", ".join(
                f"{io.name}:{io.elem_type}{format_shape(io.shape)}"
                for io in summary.inputs
            )
            or "-"
        ),
        "outputs: "
        + (
            ", ".join(
                f"{io.name}:{io.elem_type}{format_shape(io.shape)}"
                for io in summary.outputs
            )
            or "-"
        ),
        "",
    ]
    headers = ["op", "name", "params", "output", "attributes"]
    lines.append(_table(headers, [_node_cells(n) for n in summary.nodes]))
    lines.append("")
    lines.append(
        f"{len(summary.nodes)} nodes | {summary.parameter_count} parameters | "
        f"{summary.memory_size_bytes} bytes"
    )
    return "\n".join(lines) + "\n"


def render_diff_text(diff: ModelDiff) -> str:
    headers = ["", "op", "left", "right", "changes"]
    rows = []
    for row in diff.rows:
        node = row.left or row.right
        changes = (
            "; ".join(f"{c.field}: {c.left} -> {c.right}" for c in row.changes) or "-"
        )
        rows.append(
            [
                _STATUS_MARKS[row.status],
                node.op_type,
                _format_params(row.left.param_shapes) if row.left else "-",
                _format_params(row.right.param_shapes) if row.right else "-",
                changes,
            ]
        )
    lines = [_table(headers, rows), ""]
    lines.append(
        f"parameter_count delta: {diff.parameter_count_delta:+d} | "
        f"memory_size_bytes delta: {diff.memory_size_bytes_delta:+d}"
    )
    return "\n".join(lines) + "\n"


def render_architecture_text(obj) -> str:
    """Dispatch on summary vs diff; deterministic byte-for-byte layout."""
    if isinstance(obj, OnnxModelSummary):
        return render_summary_text(obj)
    if isinstance(obj, ModelDiff):
        return render_diff_text(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
