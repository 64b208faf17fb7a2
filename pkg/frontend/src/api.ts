import type {
  ApiErrorBody,
  FormSchema,
  Leaderboard,
  ModelDiff,
  ModelMetadata,
  PlaygroundInfo,
  PredictResponse,
} from "./types.js";

export class HubApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details?: unknown,
  ) {
    super(message);
    this.name = "HubApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class HubClient {
  constructor(
    private baseUrl: string = "",
    private apiKey: string | null = null,
    private fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  setApiKey(key: string | null): void {
    this.apiKey = key;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.apiKey) headers["Authorization"] = `Bearer ${this.apiKey}`;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      let parsed: ApiErrorBody | null = null;
      try {
        parsed = (await resp.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body
      }
      throw new HubApiError(
        resp.status,
        parsed?.code ?? "http_error",
        parsed?.message ?? `HTTP ${resp.status}`,
        parsed?.details,
      );
    }
    return (await resp.json()) as T;
  }

  listPlaygrounds(): Promise<{ playgrounds: PlaygroundInfo[] }> {
    return this.request("GET", "/playgrounds");
  }

  getPlayground(id: string): Promise<PlaygroundInfo> {
    return this.request("GET", `/playgrounds/${id}`);
  }

  getSchema(playgroundId: string): Promise<FormSchema> {
    return this.request("GET", `/playgrounds/${playgroundId}/schema`);
  }

  predict(playgroundId: string, records: unknown[]): Promise<PredictResponse> {
    return this.request("POST", `/playgrounds/${playgroundId}/predict`, { records });
  }

  getLeaderboard(
    trackId: string,
    opts: { sort?: string; scores?: "public" | "secret" } = {},
  ): Promise<Leaderboard> {
    const params = new URLSearchParams();
    if (opts.sort) params.set("sort", opts.sort);
    if (opts.scores) params.set("scores", opts.scores);
    const query = params.toString();
    return this.request("GET", `/tracks/${trackId}/leaderboard${query ? "?" + query : ""}`);
  }

  leaderboardCsvUrl(trackId: string, sort?: string): string {
    const params = new URLSearchParams({ format: "csv" });
    if (sort) params.set("sort", sort);
    return `${this.baseUrl}/tracks/${trackId}/leaderboard?${params.toString()}`;
  }

  getModel(modelId: string): Promise<ModelMetadata> {
    return this.request("GET", `/models/${modelId}/metadata`);
  }

  compareModels(leftId: string, rightId: string): Promise<ModelDiff> {
    return this.request("GET", `/models/${leftId}/compare/${rightId}`);
  }

  artifactUrl(modelId: string): string {
    return `${this.baseUrl}/models/${modelId}/artifact`;
  }
}
