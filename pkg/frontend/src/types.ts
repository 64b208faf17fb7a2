// Shapes of the hub's HTTP API responses. The UI is a pure client: every
// number shown on screen comes straight out of these bodies.

export type FieldType = "numeric" | "categorical" | "image-upload";

export interface SchemaField {
  name: string;
  type: FieldType;
  choices?: string[];
  example?: unknown;
}

export interface FormSchema {
  input_type: "tabular" | "image";
  fields: SchemaField[];
}

export type MetricMap = Record<string, number>;

export interface LeaderboardEntry {
  version: number;
  model_id?: string;
  submitter: string;
  submitted_at?: string;
  metrics: MetricMap;
  secret_metrics: MetricMap | null;
  parameter_count: number;
  memory_size_bytes: number;
  ops: string;
  custom_metadata: Record<string, string | number | boolean>;
}

export interface Leaderboard {
  track_id?: string;
  task_type: "classification" | "regression";
  sort_metric: string;
  ranked_on: "public" | "secret";
  entries: LeaderboardEntry[];
}

export interface NodeSummary {
  op_type: string;
  name: string;
  attributes: Record<string, unknown>;
  output_shape: unknown;
  param_shapes: number[][];
}

export interface IoSummary {
  name: string;
  elem_type: string;
  shape: unknown;
}

export interface ModelSummary {
  producer: string;
  opset: number;
  inputs: IoSummary[];
  outputs: IoSummary[];
  nodes: NodeSummary[];
  parameter_count: number;
  memory_size_bytes: number;
  op_histogram: Record<string, number>;
}

export type DiffStatus = "same" | "changed" | "only_left" | "only_right";

export interface FieldChange {
  field: string;
  left: unknown;
  right: unknown;
}

export interface DiffRow {
  status: DiffStatus;
  left: NodeSummary | null;
  right: NodeSummary | null;
  changes: FieldChange[];
}

export interface ModelDiff {
  left_model_id?: string;
  right_model_id?: string;
  rows: DiffRow[];
  parameter_count_delta: number;
  memory_size_bytes_delta: number;
}

export interface ModelMetadata {
  model_id?: string;
  track_id?: string;
  playground_id?: string;
  version: number;
  submitter: string;
  submitted_at?: string;
  artifact: { content_hash: string; size_bytes: number; media_kind: string };
  summary: ModelSummary;
  metrics: MetricMap;
  secret_metrics: MetricMap | null;
  custom_metadata: Record<string, string | number | boolean>;
}

export interface PredictRowResult {
  status: "ok" | "error";
  prediction?: string | number;
  error?: { code: string; message: string };
}

export interface PredictResponse {
  model_version: number;
  model_id?: string;
  results: PredictRowResult[];
}

export interface TrackInfo {
  id?: string;
  kind: "experiment" | "competition";
  policy: string;
  finalized: boolean;
  num_eval_rows: number;
  num_secret_rows: number;
  num_versions: number;
  created_at?: string;
}

export interface PlaygroundInfo {
  id?: string;
  owner: string;
  input_type: "tabular" | "image";
  task_type: "classification" | "regression";
  visibility: "public" | "private";
  collaborators: string[];
  created_at?: string;
  deployment: {
    active_version: number | null;
    activated_at: string | null;
    activation_count: number;
  };
  labels: unknown[] | null;
  has_example_data: boolean;
  tracks: TrackInfo[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details?: unknown;
}
