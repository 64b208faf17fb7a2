import { describe, expect, it } from "vitest";

import { leaderboardPage, playgroundListPage, playgroundPage } from "../src/pages.js";
import { renderRoute } from "../src/router.js";
import type { Leaderboard, PlaygroundInfo } from "../src/types.js";
import { fixture, flush, mount, stubClient } from "./helpers.js";

const playground = { ...fixture<PlaygroundInfo>("playground"), id: "pg_1" };
playground.tracks = playground.tracks.map((t, i) => ({ ...t, id: `tr_${i}` }));
const board = fixture<Leaderboard>("leaderboard");

describe("playground list page", () => {
  it("lists readable playgrounds with links", async () => {
    const root = mount();
    const { client } = stubClient({
      "GET /playgrounds": { playgrounds: [playground] },
    });
    await playgroundListPage(root, client);
    const link = root.querySelector("tbody a");
    expect(link?.getAttribute("href")).toBe("#/playgrounds/pg_1");
    expect(root.textContent).toContain("classification");
  });

  it("renders an error state instead of crashing", async () => {
    const root = mount();
    const { client } = stubClient(
      { "GET /playgrounds": { code: "forbidden", message: "nope" } },
      { status: { "GET /playgrounds": 403 } },
    );
    await playgroundListPage(root, client);
    expect(root.querySelector(".error-box")?.textContent).toContain("forbidden");
  });
});

describe("playground page", () => {
  it("shows the no-model state when nothing is deployed", async () => {
    const undeployed: PlaygroundInfo = {
      ...playground,
      deployment: { active_version: null, activated_at: null, activation_count: 0 },
    };
    const root = mount();
    const { client } = stubClient({ "GET /playgrounds/pg_1": undeployed });
    await playgroundPage(root, client, "pg_1");
    expect(root.querySelector(".no-model-state")).not.toBeNull();
    expect(root.querySelector("form.prediction-form")).toBeNull();
  });

  it("mounts the schema-driven form when a model is live", async () => {
    const root = mount();
    const { client } = stubClient({
      "GET /playgrounds/pg_1": playground,
      "GET /playgrounds/pg_1/schema": fixture("schema"),
    });
    await playgroundPage(root, client, "pg_1");
    expect(root.querySelectorAll("form.prediction-form [data-field]").length).toBe(5);
    const trackLink = root.querySelector(".track-list a");
    expect(trackLink?.getAttribute("href")).toBe("#/tracks/tr_0/leaderboard");
  });
});

describe("leaderboard page", () => {
  it("renders the board and a server-round-trip sort control", async () => {
    const root = mount();
    const { client } = stubClient({ "GET /tracks/tr_0/leaderboard": board });
    await leaderboardPage(root, client, "tr_0");
    expect(root.querySelectorAll(".board-table tbody tr").length).toBe(
      board.entries.length,
    );
    const select = root.querySelector<HTMLSelectElement>(".sort-select");
    expect(select?.value).toBe(board.sort_metric);
    select!.value = "f1_macro";
    select!.dispatchEvent(new Event("change"));
    expect(window.location.hash).toBe("#/tracks/tr_0/leaderboard?sort=f1_macro");
  });
});

describe("router", () => {
  it("routes hashes to pages", async () => {
    const root = mount();
    const { client, calls } = stubClient({
      "GET /playgrounds": { playgrounds: [] },
      "GET /models/a/compare/b": fixture("compare_identity"),
    });
    await renderRoute(root, client, "#/");
    expect(root.textContent).toContain("No playgrounds yet");
    await renderRoute(root, client, "#/models/a/compare/b");
    expect(root.querySelector(".diff-table")).not.toBeNull();
    expect(calls.length).toBe(2);
    await renderRoute(root, client, "#/bogus/route/here");
    expect(root.textContent).toContain("not found");
  });
});
