import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { HubClient } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", `${name}.json`), "utf-8")) as T;
}

export interface StubCall {
  url: string;
  init?: RequestInit;
}

/** HubClient whose fetch resolves from a {method path -> body} table. */
export function stubClient(
  routes: Record<string, unknown>,
  opts: { status?: Record<string, number>; apiKey?: string | null } = {},
): { client: HubClient; calls: StubCall[] } {
  const calls: StubCall[] = [];
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const method = init?.method ?? "GET";
    const key = `${method} ${url.split("?")[0]}`;
    if (!(key in routes)) {
      return new Response(
        JSON.stringify({ code: "not_found", message: `no stub for ${key}` }),
        { status: 404, headers: { "content-type": "application/json" } },
      );
    }
    const status = opts.status?.[key] ?? 200;
    return new Response(JSON.stringify(routes[key]), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { client: new HubClient("", opts.apiKey ?? null, fetchImpl), calls };
}

export function mount(): HTMLElement {
  document.body.innerHTML = '<main id="app"></main>';
  return document.getElementById("app") as HTMLElement;
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
