import { describe, expect, it } from 'vitest';

import type { SuggestResponse } from '../src/api/types';
import {
  applyRecommendation,
  contextBuilderStep,
  emptySelection,
  expansionPreviewCount,
  selectionToContextBody,
  type BuilderSelection,
} from '../src/contextBuilder';
import { loadFixture } from './helpers';

type SuggestCase = {
  chosen: Record<string, string[]>;
  candidates: Record<string, string[]>;
  response: SuggestResponse;
};

const suggestCases = loadFixture<SuggestCase[]>('suggest_cases.json');

function selection(overrides: Partial<BuilderSelection> = {}): BuilderSelection {
  return { ...emptySelection(), ...overrides };
}

describe('expansionPreviewCount', () => {
  it('multiplies datasets by the summed sweep sizes: 2 x 3 models x 2 settings -> 12', () => {
    const preview = expansionPreviewCount(
      selection({
        datasets: ['d/a@1', 'd/b@1'],
        models: ['m/a@1', 'm/b@1', 'm/c@1'],
        hyper_family: {
          'm/a@1': [{ k: 1 }, { k: 2 }],
          'm/b@1': [{ k: 1 }, { k: 2 }],
          'm/c@1': [{ k: 1 }, { k: 2 }],
        },
      }),
    );
    expect(preview).toBe(12);
  });

  it('counts a model without settings once, whether absent or an empty list', () => {
    expect(
      expansionPreviewCount(selection({ datasets: ['d/a@1'], models: ['m/a@1'] })),
    ).toBe(1);
    expect(
      expansionPreviewCount(
        selection({ datasets: ['d/a@1'], models: ['m/a@1'], hyper_family: { 'm/a@1': [] } }),
      ),
    ).toBe(1);
  });

  it('ignores duplicate picks', () => {
    const preview = expansionPreviewCount(
      selection({
        datasets: ['d/a@1', 'd/a@1'],
        models: ['m/a@1', 'm/a@1'],
        hyper_family: { 'm/a@1': [{ k: 1 }, { k: 2 }, { k: 3 }] },
      }),
    );
    expect(preview).toBe(3);
  });

  it('previews zero scenarios until a dataset and a model are picked', () => {
    expect(expansionPreviewCount(selection())).toBe(0);
    expect(expansionPreviewCount(selection({ datasets: ['d/a@1'] }))).toBe(0);
    expect(expansionPreviewCount(selection({ models: ['m/a@1'] }))).toBe(0);
  });
});

describe('contextBuilderStep', () => {
  it('lists chosen picks first, then suitable, then greyed-out incompatible with reasons', () => {
    const picked = selection({ datasets: [suggestCases[0].chosen.datasets[0]] });
    const step = contextBuilderStep(picked, suggestCases[0].response);
    expect(step.candidates.datasets.map((c) => c.status)).toEqual(['chosen']);
    expect(step.candidates.models.every((c) => c.status === 'suitable')).toBe(true);
    const metricStatuses = step.candidates.metrics.map((c) => c.status);
    expect(metricStatuses).toEqual(['suitable', 'incompatible']);
    const greyed = step.candidates.metrics.find((c) => c.status === 'incompatible')!;
    expect(greyed.reasons.length).toBeGreaterThan(0);
    expect(greyed.reasons.join(' ')).toMatch(/missing role/);
    expect(step.submit_enabled).toBe(true);
  });

  it('disables submit when some kind offers no compatible candidate', () => {
    // the spiral dataset carries no ground-truth ports, so every candidate
    // metric is incompatible and no full combination can be assembled
    const picked = selection({ datasets: [suggestCases[1].chosen.datasets[0]] });
    const step = contextBuilderStep(picked, suggestCases[1].response);
    expect(step.candidates.metrics.every((c) => c.status === 'incompatible')).toBe(true);
    expect(step.submit_enabled).toBe(false);
  });

  it('treats every candidate as suitable before anything is chosen', () => {
    const step = contextBuilderStep(selection(), suggestCases[2].response);
    for (const kind of ['datasets', 'models', 'metrics'] as const) {
      expect(step.candidates[kind].length).toBeGreaterThan(0);
      expect(step.candidates[kind].every((c) => c.status === 'suitable')).toBe(true);
    }
    expect(step.submit_enabled).toBe(true);
    expect(step.preview_count).toBe(0);
  });

  it('does not repeat an already-chosen id among the suitable candidates', () => {
    const chosenId = suggestCases[2].response.datasets.suitable[0];
    const step = contextBuilderStep(selection({ datasets: [chosenId] }), suggestCases[2].response);
    const ids = step.candidates.datasets.map((c) => c.id);
    expect(ids.filter((id) => id === chosenId)).toHaveLength(1);
    expect(step.candidates.datasets[0]).toEqual({ id: chosenId, status: 'chosen', reasons: [] });
  });

  it('reports the preview count for the current selection', () => {
    const picked = selection({
      datasets: ['d/a@1'],
      models: ['m/a@1'],
      hyper_family: { 'm/a@1': [{ k: 1 }, { k: 2 }] },
    });
    const step = contextBuilderStep(picked, suggestCases[2].response);
    expect(step.preview_count).toBe(2);
  });
});

describe('applyRecommendation', () => {
  const base = selection({
    datasets: ['d/a@1'],
    models: ['m/a@1', 'm/b@1'],
    metrics: ['x/y@1'],
    hyper_family: { 'm/a@1': [{ k: 1 }, { k: 2 }], 'm/b@1': [{ j: 9 }] },
  });

  it('pins the recommended model and drops the other sweeps', () => {
    const next = applyRecommendation(base, { model: 'm/b@1' });
    expect(next.models).toEqual(['m/b@1']);
    expect(next.hyper_family).toEqual({ 'm/b@1': [{ j: 9 }] });
    expect(next.datasets).toEqual(['d/a@1']);
    expect(next.metrics).toEqual(['x/y@1']);
  });

  it('replaces the dataset pick when the assignment pins one', () => {
    const next = applyRecommendation(base, { dataset: 'd/z@1' });
    expect(next.datasets).toEqual(['d/z@1']);
    expect(next.models).toEqual(base.models);
  });

  it('collapses hyper.* columns into the single recommended setting per model', () => {
    const next = applyRecommendation(base, { 'hyper.k': 7, 'hyper.j': 0 });
    expect(next.hyper_family).toEqual({
      'm/a@1': [{ k: 7, j: 0 }],
      'm/b@1': [{ k: 7, j: 0 }],
    });
  });

  it('pins model and setting together into exactly one scenario per dataset', () => {
    const next = applyRecommendation(base, { model: 'm/a@1', 'hyper.k': 7 });
    expect(next).toEqual({
      datasets: ['d/a@1'],
      models: ['m/a@1'],
      metrics: ['x/y@1'],
      hyper_family: { 'm/a@1': [{ k: 7 }] },
    });
    expect(expansionPreviewCount(next)).toBe(1);
  });

  it('leaves the input selection untouched', () => {
    const before = JSON.parse(JSON.stringify(base));
    applyRecommendation(base, { model: 'm/a@1', 'hyper.k': 7 });
    expect(base).toEqual(before);
  });
});

describe('selectionToContextBody', () => {
  it('shapes the declaration with a pending id for the server to replace', () => {
    const picked = selection({
      datasets: ['d/a@1'],
      models: ['m/a@1'],
      metrics: ['x/y@1'],
      hyper_family: { 'm/a@1': [{ k: 1 }] },
    });
    expect(selectionToContextBody(picked)).toEqual({
      context_id: 'pending',
      datasets: ['d/a@1'],
      models: ['m/a@1'],
      metrics: ['x/y@1'],
      hyper_family: { 'm/a@1': [{ k: 1 }] },
    });
  });
});
