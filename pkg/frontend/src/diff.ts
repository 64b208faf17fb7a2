// Architecture tables and the color-coded two-model diff.

import { el } from "./dom.js";
import type { DiffStatus, ModelDiff, ModelSummary, NodeSummary } from "./types.js";

export function rowClass(status: DiffStatus): string {
  return `diff-${status.replace("_", "-")}`;
}

/** Changed and one-sided rows get visual emphasis; same rows stay plain. */
export function isHighlighted(status: DiffStatus): boolean {
  return status !== "same";
}

export function formatShape(shape: unknown): string {
  if (shape === "dynamic") return "dynamic";
  if (Array.isArray(shape)) {
    return `[${shape.map((d) => (d === null ? "?" : String(d))).join(", ")}]`;
  }
  return String(shape);
}

export function formatParams(paramShapes: number[][]): string {
  if (!paramShapes.length) return "-";
  return paramShapes.map((dims) => (dims.length ? dims.join("x") : "scalar")).join(" ");
}

function formatAttributes(attributes: Record<string, unknown>): string {
  const keys = Object.keys(attributes).sort();
  if (!keys.length) return "-";
  return keys.map((key) => `${key}=${JSON.stringify(attributes[key])}`).join(" ");
}

export function renderArchitectureTable(summary: ModelSummary): HTMLElement {
  const table = el("table", { class: "arch-table" });
  table.append(
    el("thead", {}, [
      el("tr", {}, [
        el("th", {}, ["op"]),
        el("th", {}, ["name"]),
        el("th", {}, ["params"]),
        el("th", {}, ["output"]),
        el("th", {}, ["attributes"]),
      ]),
    ]),
  );
  const body = el("tbody");
  for (const node of summary.nodes) {
    body.append(
      el("tr", { class: "arch-row" }, [
        el("td", {}, [node.op_type]),
        el("td", {}, [node.name || "-"]),
        el("td", {}, [formatParams(node.param_shapes)]),
        el("td", {}, [formatShape(node.output_shape)]),
        el("td", { class: "attrs-cell" }, [formatAttributes(node.attributes)]),
      ]),
    );
  }
  table.append(body);
  const wrap = el("div", { class: "architecture" });
  wrap.append(table);
  wrap.append(
    el("div", { class: "arch-totals" }, [
      `${summary.nodes.length} nodes | ${summary.parameter_count} parameters | ` +
        `${summary.memory_size_bytes} bytes`,
    ]),
  );
  return wrap;
}

const STATUS_LABEL: Record<DiffStatus, string> = {
  same: "=",
  changed: "~",
  only_left: "-",
  only_right: "+",
};

export function renderDiffTable(diff: ModelDiff): HTMLElement {
  const container = el("div", { class: "model-diff" });
  const table = el("table", { class: "diff-table" });
  table.append(
    el("thead", {}, [
      el("tr", {}, [
        el("th", {}, [""]),
        el("th", {}, ["op"]),
        el("th", {}, ["left"]),
        el("th", {}, ["right"]),
        el("th", {}, ["changes"]),
      ]),
    ]),
  );
  const body = el("tbody");
  for (const row of diff.rows) {
    const node = (row.left ?? row.right) as NodeSummary;
    const classes = [rowClass(row.status)];
    if (isHighlighted(row.status)) classes.push("diff-highlight");
    const changes = row.changes
      .map(
        (change) =>
          `${change.field}: ${JSON.stringify(change.left)} → ${JSON.stringify(change.right)}`,
      )
      .join("; ");
    body.append(
      el("tr", { class: classes.join(" "), "data-status": row.status }, [
        el("td", { class: "status-mark" }, [STATUS_LABEL[row.status]]),
        el("td", {}, [node.op_type]),
        el("td", {}, [row.left ? formatParams(row.left.param_shapes) : "-"]),
        el("td", {}, [row.right ? formatParams(row.right.param_shapes) : "-"]),
        el("td", { class: "changes-cell" }, [changes || "-"]),
      ]),
    );
  }
  table.append(body);
  container.append(table);
  container.append(
    el("div", { class: "diff-totals" }, [
      `parameter delta: ${diff.parameter_count_delta >= 0 ? "+" : ""}${diff.parameter_count_delta}` +
        ` | memory delta: ${diff.memory_size_bytes_delta >= 0 ? "+" : ""}${diff.memory_size_bytes_delta}`,
    ]),
  );
  return container;
}
