"""Model-to-model architecture comparison.

Nodes are aligned by longest common subsequence over op types; aligned pairs
are inspected field by field. A pair counts as changed when its own
parameters differ (attributes or weight shapes); shape ripple propagated
from upstream nodes does not flag a node, so widening one layer marks only
the layers whose weights actually changed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .summary import NodeSummary, OnnxModelSummary

STATUS_SAME = "same"
STATUS_CHANGED = "changed"
STATUS_ONLY_LEFT = "only_left"
STATUS_ONLY_RIGHT = "only_right"


@dataclass(frozen=True)
class FieldChange:
    field: str
    left: object
    right: object

    def to_json_dict(self) -> dict:
        return {"field": self.field, "left": self.left, "right": self.right}


@dataclass(frozen=True)
class DiffRow:
    status: str
    left: NodeSummary | None
    right: NodeSummary | None
    changes: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "left": self.left.to_json_dict() if self.left else None,
            "right": self.right.to_json_dict() if self.right else None,
            "changes": [c.to_json_dict() for c in self.changes],
        }


@dataclass
class ModelDiff:
    rows: list = field(default_factory=list)
    parameter_count_delta: int = 0
    memory_size_bytes_delta: int = 0

    def to_json_dict(self) -> dict:
        return {
            "rows": [r.to_json_dict() for r in self.rows],
            "parameter_count_delta": self.parameter_count_delta,
            "memory_size_bytes_delta": self.memory_size_bytes_delta,
        }


def _node_changes(a: NodeSummary, b: NodeSummary) -> list:
    changes = []
    keys = sorted(set(a.attributes) | set(b.attributes))
    for k in keys:
        av = a.attributes.get(k)
        bv = b.attributes.get(k)
        if av != bv:
            changes.append(FieldChange(field=f"attributes.{k}", left=av, right=bv))
    if a.param_shapes != b.param_shapes:
        changes.append(
            FieldChange(field="param_shapes", left=a.param_shapes, right=b.param_shapes)
        )
    return changes


def _lcs_pairs(left_ops: list, right_ops: list) -> list:
    """Index pairs of a longest common subsequence over op types."""
    n, m = len(left_ops), len(right_ops)
    lengths = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if left_ops[i] == right_ops[j]:
                lengths[i][j] = lengths[i + 1][j + 1] + 1
            else:
                lengths[i][j] = max(lengths[i + 1][j], lengths[i][j + 1])
    pairs = []
    i = j = 0
    while i < n and j < m:
        if left_ops[i] == right_ops[j]:
            pairs.append((i, j))
            i += 1
            j += 1
        elif lengths[i + 1][j] >= lengths[i][j + 1]:
            i += 1
        else:
            j += 1
    return pairs


def compare_models(left: OnnxModelSummary, right: OnnxModelSummary) -> ModelDiff:
    pairs = _lcs_pairs(
        [n.op_type for n in left.nodes], [n.op_type for n in right.nodes]
    )
    rows = []
    li = ri = 0
    for i, j in pairs + [(len(left.nodes), len(right.nodes))]:
        while li < i:
            rows.append(DiffRow(STATUS_ONLY_LEFT, left.nodes[li], None))
            li += 1
        while ri < j:
            rows.append(DiffRow(STATUS_ONLY_RIGHT, None, right.nodes[ri]))
            ri += 1
        if i < len(left.nodes) and j < len(right.nodes):
            a, b = left.nodes[i], right.nodes[j]
            changes = _node_changes(a, b)
            status = STATUS_CHANGED if changes else STATUS_SAME
            rows.append(DiffRow(status, a, b, tuple(changes)))
            li, ri = i + 1, j + 1

    return ModelDiff(
        rows=rows,
        parameter_count_delta=right.parameter_count - left.parameter_count,
        memory_size_bytes_delta=right.memory_size_bytes - left.memory_size_bytes,
    )
