import type { ContextBody, HyperSetting, Scalar, SuggestResponse } from './api/types';

/** The builder's working state: picked components plus per-model sweeps. */
export type BuilderSelection = {
  datasets: string[];
  models: string[];
  metrics: string[];
  /** Model id -> list of hyperparameter settings to sweep. */
  hyper_family: Record<string, HyperSetting[]>;
};

export type CandidateStatus = 'chosen' | 'suitable' | 'incompatible';

export type CandidateView = {
  id: string;
  status: CandidateStatus;
  /** Tooltip lines explaining why a greyed-out candidate cannot join. */
  reasons: string[];
};

export type BuilderKind = 'datasets' | 'models' | 'metrics';

export type BuilderStepView = {
  candidates: Record<BuilderKind, CandidateView[]>;
  /** Scenario count the selection would expand to if submitted now. */
  preview_count: number;
  submit_enabled: boolean;
};

export function emptySelection(): BuilderSelection {
  return { datasets: [], models: [], metrics: [], hyper_family: {} };
}

/**
 * Scenario count of the would-be context: |datasets| x sum over models of
 * their sweep size. A model without settings still runs once (its empty
 * setting), so absent or empty families count as 1.
 * E.g. 2 datasets, 3 models with 2 settings each -> 12.
 */
export function expansionPreviewCount(selection: BuilderSelection): number {
  const datasets = new Set(selection.datasets).size;
  const models = [...new Set(selection.models)];
  if (datasets === 0 || models.length === 0) return 0;
  const sweeps = models
    .map((model) => selection.hyper_family[model]?.length || 1)
    .reduce((total, per) => total + per, 0);
  return datasets * sweeps;
}

const KINDS: BuilderKind[] = ['datasets', 'models', 'metrics'];

/**
 * Fold the latest suggest response into one render-ready step: chosen picks
 * first, then suitable candidates (highlighted), then incompatible ones
 * greyed out with their reasons as tooltips. Submit lights up exactly when
 * every kind still has a compatible pick available, i.e. at least one
 * compatible full combination exists.
 */
export function contextBuilderStep(
  selection: BuilderSelection,
  suggested: SuggestResponse,
): BuilderStepView {
  const candidates = {} as Record<BuilderKind, CandidateView[]>;
  let enabled = true;
  for (const kind of KINDS) {
    const chosen = selection[kind].map((id): CandidateView => ({ id, status: 'chosen', reasons: [] }));
    const partition = suggested[kind] ?? { suitable: [], incompatible: [] };
    const alreadyChosen = new Set(selection[kind]);
    const suitable = partition.suitable
      .filter((id) => !alreadyChosen.has(id))
      .map((id): CandidateView => ({ id, status: 'suitable', reasons: [] }));
    const incompatible = partition.incompatible
      .filter((entry) => !alreadyChosen.has(entry.id))
      .map((entry): CandidateView => ({ id: entry.id, status: 'incompatible', reasons: entry.reasons }));
    candidates[kind] = [...chosen, ...suitable, ...incompatible];
    if (chosen.length === 0 && suitable.length === 0) enabled = false;
  }
  return {
    candidates,
    preview_count: expansionPreviewCount(selection),
    submit_enabled: enabled,
  };
}

/**
 * Pre-fill the builder from an accepted recommendation. Component columns
 * ("dataset", "model") replace the corresponding picks; "hyper.<param>"
 * columns combine into the single setting every remaining model sweeps.
 * The result is exactly the recommended configuration, ready to submit.
 */
export function applyRecommendation(
  selection: BuilderSelection,
  assignment: Record<string, Scalar>,
): BuilderSelection {
  const next: BuilderSelection = {
    datasets: [...selection.datasets],
    models: [...selection.models],
    metrics: [...selection.metrics],
    hyper_family: { ...selection.hyper_family },
  };
  if ('dataset' in assignment) next.datasets = [String(assignment['dataset'])];
  if ('model' in assignment) {
    const model = String(assignment['model']);
    next.models = [model];
    next.hyper_family = model in next.hyper_family ? { [model]: next.hyper_family[model] } : {};
  }
  const setting: HyperSetting = {};
  for (const [column, value] of Object.entries(assignment)) {
    if (column.startsWith('hyper.')) setting[column.slice('hyper.'.length)] = value;
  }
  if (Object.keys(setting).length > 0) {
    next.hyper_family = Object.fromEntries(next.models.map((model) => [model, [{ ...setting }]]));
  }
  return next;
}

/** Shape the selection for POST /v1/contexts; the server assigns the real id. */
export function selectionToContextBody(selection: BuilderSelection): ContextBody {
  return {
    context_id: 'pending',
    datasets: [...selection.datasets],
    models: [...selection.models],
    metrics: [...selection.metrics],
    hyper_family: { ...selection.hyper_family },
  };
}
