import { describe, expect, it } from "vitest";

import { HubApiError } from "../src/api.js";
import { parseHash } from "../src/router.js";
import { fixture, stubClient } from "./helpers.js";
import type { FormSchema } from "../src/types.js";

const schema = fixture<FormSchema>("schema");

describe("HubClient", () => {
  it("hits the documented paths", async () => {
    const { client, calls } = stubClient({
      "GET /playgrounds/pg_9/schema": schema,
      "GET /tracks/tr_1/leaderboard": fixture("leaderboard"),
      "GET /models/a/compare/b": fixture("compare_identity"),
    });
    await client.getSchema("pg_9");
    await client.getLeaderboard("tr_1", { sort: "accuracy" });
    await client.compareModels("a", "b");
    expect(calls.map((c) => c.url)).toEqual([
      "/playgrounds/pg_9/schema",
      "/tracks/tr_1/leaderboard?sort=accuracy",
      "/models/a/compare/b",
    ]);
  });

  it("sends the bearer key only when configured", async () => {
    const { client, calls } = stubClient(
      { "GET /playgrounds": { playgrounds: [] } },
      { apiKey: "mh_k" },
    );
    await client.listPlaygrounds();
    const headers = calls[0].init?.headers as Record<string, string>;
    expect(headers["Authorization"]).toBe("Bearer mh_k");

    const anon = stubClient({ "GET /playgrounds": { playgrounds: [] } });
    await anon.client.listPlaygrounds();
    const anonHeaders = anon.calls[0].init?.headers as Record<string, string>;
    expect(anonHeaders["Authorization"]).toBeUndefined();
  });

  it("maps error bodies to HubApiError with the machine code", async () => {
    const { client } = stubClient(
      { "GET /playgrounds/pg_x": { code: "forbidden", message: "playground is private" } },
      { status: { "GET /playgrounds/pg_x": 403 } },
    );
    await expect(client.getPlayground("pg_x")).rejects.toMatchObject({
      name: "HubApiError",
      status: 403,
      code: "forbidden",
    });
    try {
      await client.getPlayground("pg_x");
    } catch (err) {
      expect(err instanceof HubApiError).toBe(true);
    }
  });

  it("builds CSV urls with sort propagated", () => {
    const { client } = stubClient({});
    expect(client.leaderboardCsvUrl("tr_1", "rmse")).toBe(
      "/tracks/tr_1/leaderboard?format=csv&sort=rmse",
    );
  });
});

describe("router", () => {
  it("parses routes and query", () => {
    expect(parseHash("#/").parts).toEqual([]);
    expect(parseHash("#/playgrounds/pg_1").parts).toEqual(["playgrounds", "pg_1"]);
    const parsed = parseHash("#/tracks/tr_2/leaderboard?sort=rmse");
    expect(parsed.parts).toEqual(["tracks", "tr_2", "leaderboard"]);
    expect(parsed.query.get("sort")).toBe("rmse");
    expect(parseHash("#/models/a/compare/b").parts).toEqual([
      "models",
      "a",
      "compare",
      "b",
    ]);
  });
});
