import type {
  Cell,
  ComponentPage,
  ComponentRecord,
  ContextBody,
  ContextSummary,
  ImpactResponse,
  ParetoResponse,
  PredictResponse,
  PublicationRecord,
  RecommendResponse,
  RunData,
  RunSummary,
  Scalar,
  SliceRequest,
  SliceResponse,
  SuggestResponse,
} from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export type ClientConfig = {
  /** Server origin, e.g. "http://127.0.0.1:8461". One setting, no per-endpoint overrides. */
  baseUrl: string;
  /** Stored API key; omitted for anonymous browsing of public entities. */
  apiKey?: string;
  /** Injectable for tests; defaults to the ambient fetch. */
  fetchImpl?: FetchLike;
};

/** A non-2xx /v1 response, carrying the server's stable error code. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: string;

  constructor(status: number, code: string, detail: string) {
    super(`${code}: ${detail}`);
    this.name = 'ApiError';
    this.status = status;
    this.code = code;
    this.detail = detail;
  }
}

function trimSlash(url: string): string {
  return url.endsWith('/') ? url.slice(0, -1) : url;
}

function queryString(params: Record<string, string | number | undefined>): string {
  const pairs = Object.entries(params).filter(([, v]) => v !== undefined && v !== '');
  if (pairs.length === 0) return '';
  const search = new URLSearchParams();
  for (const [key, value] of pairs) search.set(key, String(value));
  return '?' + search.toString();
}

/** "owner/slug@version" -> the /v1/components path for that version. */
export function componentPath(id: string): string {
  const at = id.lastIndexOf('@');
  if (at <= 0) throw new Error(`malformed component id: ${id}`);
  return `/v1/components/${id.slice(0, at)}/${id.slice(at + 1)}`;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly apiKey?: string;
  private readonly fetchImpl: FetchLike;

  constructor(config: ClientConfig) {
    this.baseUrl = trimSlash(config.baseUrl);
    this.apiKey = config.apiKey;
    this.fetchImpl = config.fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { Accept: 'application/json' };
    if (this.apiKey) headers['Authorization'] = `Bearer ${this.apiKey}`;
    const init: RequestInit = { method, headers };
    if (body !== undefined) {
      headers['Content-Type'] = 'application/json';
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let code = `http_${response.status}`;
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { error?: string; detail?: string };
        if (parsed.error) code = parsed.error;
        if (parsed.detail) detail = parsed.detail;
      } catch {
        // non-JSON error body; keep the HTTP status text
      }
      throw new ApiError(response.status, code, detail);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ ok: boolean; service: string; version: string }> {
    return this.request('GET', '/v1/health');
  }

  whoami(): Promise<{ user: string }> {
    return this.request('GET', '/v1/whoami');
  }

  listComponents(params: {
    kind?: string;
    task?: string;
    q?: string;
    scope?: 'all' | 'mine' | 'public';
    page?: number;
    page_size?: number;
  } = {}): Promise<ComponentPage> {
    return this.request('GET', '/v1/components' + queryString(params));
  }

  /** All visible versions of one name, newest first. */
  componentVersions(name: string): Promise<{ items: ComponentRecord[] }> {
    return this.request('GET', `/v1/components/${name}`);
  }

  getComponent(id: string): Promise<ComponentRecord> {
    return this.request('GET', componentPath(id));
  }

  /** Direct download link for a component archive (served as application/gzip). */
  payloadUrl(id: string): string {
    return this.baseUrl + componentPath(id) + '/payload';
  }

  saveContext(body: ContextBody): Promise<{ context_id: string }> {
    return this.request('POST', '/v1/contexts', body);
  }

  listContexts(): Promise<{ items: ContextSummary[] }> {
    return this.request('GET', '/v1/contexts');
  }

  getContext(contextId: string): Promise<ContextBody> {
    return this.request('GET', `/v1/contexts/${contextId}`);
  }

  listRuns(contextId?: string): Promise<{ items: RunSummary[] }> {
    return this.request('GET', '/v1/runs' + queryString({ context_id: contextId }));
  }

  getRun(runId: string): Promise<RunData> {
    return this.request('GET', `/v1/runs/${runId}`);
  }

  publishRun(runId: string): Promise<PublicationRecord> {
    return this.request('POST', `/v1/runs/${runId}/publish`);
  }

  publishComponent(id: string): Promise<PublicationRecord> {
    return this.request('POST', componentPath(id) + '/publish');
  }

  /** Both maps are keyed by plural kind: datasets, models, metrics. */
  suggest(
    chosen: Record<string, string[]>,
    candidates: Record<string, string[]>,
  ): Promise<SuggestResponse> {
    return this.request('POST', '/v1/compat/suggest', { chosen, candidates });
  }

  slice(req: SliceRequest): Promise<SliceResponse> {
    return this.request('POST', '/v1/analysis/slice', req);
  }

  pareto(req: {
    context_id: string;
    objectives: [string, 'min' | 'max'][];
    id_column?: string;
  }): Promise<ParetoResponse> {
    return this.request('POST', '/v1/analysis/pareto', req);
  }

  impact(req: {
    context_id: string;
    treatment: [string, Scalar, Scalar];
    outcome: string;
    graph?: unknown;
  }): Promise<ImpactResponse> {
    return this.request('POST', '/v1/analysis/impact', req);
  }

  predict(req: {
    context_id: string;
    target: Record<string, Cell>;
    graph?: unknown;
  }): Promise<PredictResponse> {
    return this.request('POST', '/v1/analysis/predict', req);
  }

  recommend(req: {
    context_id: string;
    space: Record<string, Scalar[]>;
    k?: number;
    graph?: unknown;
  }): Promise<RecommendResponse> {
    return this.request('POST', '/v1/analysis/recommend', req);
  }
}
