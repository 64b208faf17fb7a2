// Leaderboard table. Row order comes from the server verbatim: ranking is
// the server's contract, the client never re-sorts the default view.

import { el, formatNumber } from "./dom.js";
import type { Leaderboard } from "./types.js";

export function metricColumns(board: Leaderboard): string[] {
  const first = board.entries[0];
  return first ? Object.keys(first.metrics) : [];
}

export function customColumns(board: Leaderboard): string[] {
  const keys = new Set<string>();
  for (const entry of board.entries) {
    for (const key of Object.keys(entry.custom_metadata)) keys.add(key);
  }
  return [...keys].sort();
}

export function hasSecretColumns(board: Leaderboard): boolean {
  return board.entries.some((entry) => entry.secret_metrics !== null);
}

export interface LeaderboardOptions {
  modelHref?: (modelId: string) => string;
  csvHref?: string;
}

export function renderLeaderboard(
  board: Leaderboard,
  opts: LeaderboardOptions = {},
): HTMLElement {
  const container = el("div", { class: "leaderboard" });
  const caption = el("div", { class: "board-caption" }, [
    `ranked on ${board.ranked_on} ${board.sort_metric}`,
  ]);
  container.append(caption);
  if (opts.csvHref) {
    container.append(
      el("a", { class: "csv-download", href: opts.csvHref, download: "leaderboard.csv" }, [
        "Download CSV",
      ]),
    );
  }

  const metrics = metricColumns(board);
  const secret = hasSecretColumns(board);
  const custom = customColumns(board);

  const header = el("tr", {}, [
    el("th", {}, ["rank"]),
    el("th", {}, ["version"]),
    el("th", {}, ["submitter"]),
  ]);
  for (const key of metrics) header.append(el("th", { class: "metric-col" }, [key]));
  if (secret) {
    for (const key of metrics) {
      header.append(el("th", { class: "secret-col" }, [`secret ${key}`]));
    }
  }
  header.append(el("th", {}, ["params"]));
  header.append(el("th", {}, ["memory"]));
  header.append(el("th", {}, ["ops"]));
  for (const key of custom) header.append(el("th", { class: "custom-col" }, [key]));

  const table = el("table", { class: "board-table" });
  table.append(el("thead", {}, [header]));
  const body = el("tbody");
  board.entries.forEach((entry, index) => {
    const row = el("tr", { class: "board-row" });
    row.append(el("td", {}, [String(index + 1)]));
    const versionCell = el("td", { class: "version-cell" });
    if (entry.model_id && opts.modelHref) {
      versionCell.append(
        el("a", { href: opts.modelHref(entry.model_id) }, [`v${entry.version}`]),
      );
    } else {
      versionCell.append(`v${entry.version}`);
    }
    row.append(versionCell);
    row.append(el("td", {}, [entry.submitter]));
    for (const key of metrics) {
      row.append(
        el("td", { class: "metric-col", title: String(entry.metrics[key]) }, [
          formatNumber(entry.metrics[key]),
        ]),
      );
    }
    if (secret) {
      for (const key of metrics) {
        const value = entry.secret_metrics?.[key];
        row.append(
          el("td", { class: "secret-col" }, [
            value === undefined || value === null ? "-" : formatNumber(value),
          ]),
        );
      }
    }
    row.append(el("td", {}, [String(entry.parameter_count)]));
    row.append(el("td", {}, [String(entry.memory_size_bytes)]));
    row.append(el("td", { class: "ops-cell" }, [entry.ops]));
    for (const key of custom) {
      const value = entry.custom_metadata[key];
      row.append(el("td", { class: "custom-col" }, [value === undefined ? "" : String(value)]));
    }
    body.append(row);
  });
  table.append(body);
  container.append(table);
  return container;
}
