// Hash router: #/... paths map to page renderers.

import { HubClient } from "./api.js";
import {
  comparePage,
  leaderboardPage,
  modelPage,
  playgroundListPage,
  playgroundPage,
} from "./pages.js";

export interface Route {
  page: (root: HTMLElement, client: HubClient) => Promise<void>;
}

export function parseHash(hash: string): { parts: string[]; query: URLSearchParams } {
  const raw = hash.startsWith("#/") ? hash.slice(2) : hash.replace(/^#/, "");
  const [path, queryText] = raw.split("?", 2);
  const parts = path.split("/").filter((p) => p.length > 0);
  return { parts, query: new URLSearchParams(queryText ?? "") };
}

export async function renderRoute(
  root: HTMLElement,
  client: HubClient,
  hash: string,
): Promise<void> {
  const { parts, query } = parseHash(hash);
  if (parts.length === 0) {
    return playgroundListPage(root, client);
  }
  if (parts[0] === "playgrounds" && parts.length === 2) {
    return playgroundPage(root, client, parts[1]);
  }
  if (parts[0] === "tracks" && parts.length === 3 && parts[2] === "leaderboard") {
    return leaderboardPage(root, client, parts[1], query.get("sort") ?? undefined);
  }
  if (parts[0] === "models" && parts.length === 2) {
    return modelPage(root, client, parts[1]);
  }
  if (parts[0] === "models" && parts.length === 4 && parts[2] === "compare") {
    return comparePage(root, client, parts[1], parts[3]);
  }
  root.textContent = "Page not found.";
}
