import { describe, expect, it } from "vitest";

import {
  customColumns,
  hasSecretColumns,
  metricColumns,
  renderLeaderboard,
} from "../src/leaderboard.js";
import type { Leaderboard } from "../src/types.js";
import { fixture } from "./helpers.js";

const board = fixture<Leaderboard>("leaderboard");
const csvHeader = fixture<string[]>("leaderboard_csv_header");

describe("leaderboard rendering", () => {
  it("preserves the server's row order exactly (no client re-sort)", () => {
    const el = renderLeaderboard(board);
    const versions = [...el.querySelectorAll("tbody .version-cell")].map(
      (cell) => cell.textContent,
    );
    expect(versions).toEqual(board.entries.map((e) => `v${e.version}`));
  });

  it("shows no secret columns before finalization", () => {
    expect(hasSecretColumns(board)).toBe(false);
    const el = renderLeaderboard(board);
    expect(el.querySelectorAll(".secret-col").length).toBe(0);
    expect(el.textContent).not.toContain("secret accuracy");
  });

  it("secret columns appear when the API includes secret metrics", () => {
    const finalized: Leaderboard = {
      ...board,
      ranked_on: "secret",
      entries: board.entries.map((e) => ({
        ...e,
        secret_metrics: { ...e.metrics },
      })),
    };
    const el = renderLeaderboard(finalized);
    expect(el.querySelectorAll("th.secret-col").length).toBe(
      metricColumns(board).length,
    );
  });

  it("metadata column union matches the export CSV header", () => {
    const rendered = [...metricColumns(board), ...customColumns(board)];
    for (const column of rendered) {
      expect(csvHeader).toContain(column);
    }
    // and the CSV's custom columns all render too
    const fixedPrefix = ["version", "submitter", "submitted_at"];
    const fixedSuffix = ["parameter_count", "memory_size_bytes", "ops"];
    const csvCustom = csvHeader.filter(
      (c) => !fixedPrefix.includes(c) && !fixedSuffix.includes(c) && !metricColumns(board).includes(c),
    );
    expect(customColumns(board)).toEqual(csvCustom.sort());
  });

  it("renders metric values from the response verbatim", () => {
    const el = renderLeaderboard(board);
    const firstMetric = el.querySelector("tbody .metric-col");
    expect(firstMetric?.getAttribute("title")).toBe(
      String(board.entries[0].metrics[metricColumns(board)[0]]),
    );
  });

  it("links each row to its model page and offers CSV download", () => {
    const withIds: Leaderboard = {
      ...board,
      entries: board.entries.map((e, i) => ({ ...e, model_id: `mv_${i}` })),
    };
    const el = renderLeaderboard(withIds, {
      modelHref: (id) => `#/models/${id}`,
      csvHref: "/tracks/tr_1/leaderboard?format=csv",
    });
    const links = [...el.querySelectorAll("tbody .version-cell a")].map((a) =>
      a.getAttribute("href"),
    );
    expect(links).toEqual(withIds.entries.map((e) => `#/models/${e.model_id}`));
    expect(el.querySelector(".csv-download")?.getAttribute("href")).toContain(
      "format=csv",
    );
  });
});
