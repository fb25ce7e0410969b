/**
 * Wire types for the /v1 API.
 *
 * Every shape here mirrors a server response verbatim; the client never
 * invents fields. Identifiers stay opaque strings ("owner/slug@version"
 * for components, "ctx-<hex>" for contexts, a ULID for runs).
 */

export type Scalar = string | number | boolean;

/** A table cell: a scalar reading or null for a missing one. */
export type Cell = Scalar | null;

export type ComponentKind = 'dataset' | 'model' | 'metric';

export type Visibility = 'private' | 'public';

export type ResultStatus = 'ok' | 'model-failed' | 'metric-failed' | 'timeout';

export type PortSpec = {
  port_name: string;
  data_role: string;
  required: boolean;
};

export type SignatureSpec = {
  task: string;
  inputs: PortSpec[];
  outputs: PortSpec[];
};

export type FileEntry = {
  logical_name: string;
  content_hash: string;
  byte_size: number;
};

export type DatasetDescriptor = {
  id: string;
  files: FileEntry[];
  config: Record<string, Scalar>;
  provided_ports: PortSpec[];
};

export type ModelDescriptor = {
  id: string;
  signature: SignatureSpec;
  entrypoint: string;
  hyperparameter_schema: Record<string, Record<string, Scalar | Scalar[]>>;
};

export type MetricDescriptor = {
  id: string;
  signature: SignatureSpec;
  direction: 'higher-better' | 'lower-better';
  entrypoint: string;
};

export type ComponentDescriptor = DatasetDescriptor | ModelDescriptor | MetricDescriptor;

export type ComponentRecord = {
  kind: ComponentKind;
  descriptor: ComponentDescriptor;
  payload_hash: string;
  metadata: Record<string, unknown>;
  visibility: Visibility;
  permanent: boolean;
};

export type ComponentPage = {
  items: ComponentRecord[];
  total: number;
  page: number;
  page_size: number;
};

/** One concrete hyperparameter assignment, e.g. {threshold: 0.5}. */
export type HyperSetting = Record<string, Scalar>;

export type ContextBody = {
  context_id: string;
  datasets: string[];
  models: string[];
  metrics: string[];
  hyper_family: Record<string, HyperSetting[]>;
};

export type ContextSummary = {
  context_id: string;
  owner: string;
  visibility: Visibility;
  created_at: string;
  datasets: string[];
  models: string[];
  metrics: string[];
};

export type RunSummary = {
  run_id: string;
  context_id: string;
  owner: string;
  visibility: Visibility;
  permanent: number | boolean;
  created_at: string;
};

export type SystemProfile = {
  cpu_model: string;
  physical_cores: number;
  total_memory_bytes: number;
  os_name_version: string;
  runtime_versions: Record<string, string>;
  gpu_model: string | null;
  profile_hash: string;
};

export type ScenarioData = {
  dataset: string;
  model: string;
  metrics: string[];
  hyper: HyperSetting;
};

export type ScenarioResultData = {
  scenario: ScenarioData;
  status: ResultStatus;
  accuracy: Record<string, number>;
  timing: Record<string, number>;
  resources: Record<string, number>;
  log_excerpt: string;
};

export type RunData = {
  run_id: string;
  context_id: string;
  profile: SystemProfile;
  results: ScenarioResultData[];
  executed_by: string;
  started_at: string;
  finished_at: string;
  visibility: Visibility;
  /** Present exactly when the run is public. */
  minted_identifier?: string;
};

export type PublicationRecord = {
  subject: string;
  identifier: string;
  registrar: string;
  minted_at: string;
};

/** Columnar table as served by the analysis endpoints. */
export type TableData = {
  columns: string[];
  rows: Cell[][];
  catalog: Record<string, 'factor' | 'outcome'>;
};

export type CoverageData = {
  matched: string[];
  unmatched: string[];
  profiles: string[];
  contributing_runs: string[];
  complete: boolean;
};

/** (column, op, value) filter triple in the server's slice grammar. */
export type FilterTriple = [string, string, Cell | Scalar[]];

export type SliceRequest = {
  context_id: string;
  filters?: FilterTriple[];
  group_by?: string[];
  aggregates?: [string, string][];
};

export type SliceResponse = {
  table: TableData;
  coverage: CoverageData;
};

export type SuggestPartitionData = {
  suitable: string[];
  incompatible: { id: string; reasons: string[] }[];
};

/** Keyed by plural kind: datasets, models, metrics. */
export type SuggestResponse = Record<string, SuggestPartitionData>;

export type RecommendationData = {
  assignment: Record<string, Scalar>;
  covering_rows: number;
  interval_width: number;
};

export type RecommendResponse = {
  recommendations: RecommendationData[];
  coverage: CoverageData;
};

export type StratumDetailData = {
  stratum: Cell[];
  mean_a: number | null;
  mean_b: number | null;
  n_a: number;
  n_b: number;
};

export type ImpactResponse = {
  impact: {
    treatment: string;
    level_a: Scalar;
    level_b: Scalar;
    outcome: string;
    adjusted_for: string[];
    estimate: number;
    unadjusted: number;
    dropped_strata: number;
    stratum_details: StratumDetailData[];
  };
  coverage: CoverageData;
};

export type OutcomePredictionData = {
  outcome: string;
  estimate: number;
  interval: [number, number];
  method: string;
  transferred: string[];
  non_shareable: string[];
  n_rows: number;
};

export type PredictResponse = {
  prediction: {
    target: Record<string, Scalar>;
    outcomes: OutcomePredictionData[];
    notes: string[];
  };
  coverage: CoverageData;
};

export type ParetoResponse = {
  front: string[];
  coverage: CoverageData;
};

export type ApiErrorBody = {
  error: string;
  detail: string;
  violations?: { code?: string; detail: string; subject?: string }[];
};
