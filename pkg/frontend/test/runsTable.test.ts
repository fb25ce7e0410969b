import { describe, expect, it } from 'vitest';

import type { TableData } from '../src/api/types';
import {
  applyTableControls,
  matchesPredicate,
  predicatesFromTriples,
  tableRows,
  toggleSelection,
  type Row,
  type RunsTableState,
} from '../src/runsTable';

function state(overrides: Partial<RunsTableState> = {}): RunsTableState {
  return {
    sort: null,
    filters: [],
    visible_columns: ['run_id', 'status', 'wall_time', 'score'],
    selection: [],
    ...overrides,
  };
}

const rows: Row[] = [
  { run_id: 'a', status: 'ok', wall_time: 3, score: 0.5 },
  { run_id: 'b', status: 'ok', wall_time: 1, score: 0.5 },
  { run_id: 'c', status: 'model-failed', wall_time: null, score: null },
  { run_id: 'd', status: 'ok', wall_time: 2, score: 0.9 },
];

describe('tableRows', () => {
  it('zips the columnar payload into row objects', () => {
    const table: TableData = {
      columns: ['run_id', 'score'],
      rows: [
        ['a', 1],
        ['b', null],
      ],
      catalog: { score: 'outcome' },
    };
    expect(tableRows(table)).toEqual([
      { run_id: 'a', score: 1 },
      { run_id: 'b', score: null },
    ]);
  });
});

describe('applyTableControls sorting', () => {
  it('sorts wall_time {3, 1, null, 2} ascending as {1, 2, 3, null}', () => {
    const sorted = applyTableControls(rows, state({ sort: ['wall_time', 'asc'] }));
    expect(sorted.map((r) => r.wall_time)).toEqual([1, 2, 3, null]);
  });

  it('keeps null cells last when descending too', () => {
    const sorted = applyTableControls(rows, state({ sort: ['wall_time', 'desc'] }));
    expect(sorted.map((r) => r.wall_time)).toEqual([3, 2, 1, null]);
  });

  it('breaks ties by original order (stable sort)', () => {
    const sorted = applyTableControls(rows, state({ sort: ['score', 'asc'] }));
    expect(sorted.map((r) => r.run_id)).toEqual(['a', 'b', 'd', 'c']);
  });

  it('orders numbers before strings in a mixed column', () => {
    const mixed: Row[] = [
      { run_id: 'a', status: 'x', wall_time: 1, score: 'high' },
      { run_id: 'b', status: 'x', wall_time: 1, score: 2 },
    ];
    const sorted = applyTableControls(mixed, state({ sort: ['score', 'asc'] }));
    expect(sorted.map((r) => r.score)).toEqual([2, 'high']);
  });

  it('accepts a sort column known only to the hidden-column catalog', () => {
    const sorted = applyTableControls(
      rows,
      state({ sort: ['hidden_metric', 'asc'], visible_columns: ['run_id'] }),
      ['hidden_metric'],
    );
    expect(sorted).toHaveLength(rows.length);
  });

  it('rejects a sort column that is neither visible nor catalogued', () => {
    expect(() => applyTableControls(rows, state({ sort: ['bogus', 'asc'] }))).toThrow(
      /neither visible nor catalogued/,
    );
  });
});

describe('applyTableControls filtering', () => {
  it('keeps rows matching every predicate, in original order', () => {
    const kept = applyTableControls(
      rows,
      state({ filters: [{ column: 'status', op: 'eq', value: 'ok' }] }),
    );
    expect(kept.map((r) => r.run_id)).toEqual(['a', 'b', 'd']);
  });

  it('returns rows untouched when no controls are set', () => {
    expect(applyTableControls(rows, state())).toEqual(rows);
  });

  it('filters before sorting', () => {
    const out = applyTableControls(
      rows,
      state({
        filters: [{ column: 'status', op: 'eq', value: 'ok' }],
        sort: ['wall_time', 'desc'],
      }),
    );
    expect(out.map((r) => r.run_id)).toEqual(['a', 'd', 'b']);
  });
});

describe('matchesPredicate', () => {
  it('mirrors the slice grammar: null cells satisfy only isnull', () => {
    expect(matchesPredicate(null, { column: 'c', op: 'isnull' })).toBe(true);
    expect(matchesPredicate(null, { column: 'c', op: 'notnull' })).toBe(false);
    expect(matchesPredicate(null, { column: 'c', op: 'eq', value: null })).toBe(false);
    expect(matchesPredicate(null, { column: 'c', op: 'le', value: 5 })).toBe(false);
    expect(matchesPredicate(5, { column: 'c', op: 'notnull' })).toBe(true);
  });

  it('treats an absent column as a null cell', () => {
    expect(matchesPredicate(undefined, { column: 'c', op: 'isnull' })).toBe(true);
    expect(matchesPredicate(undefined, { column: 'c', op: 'eq', value: 1 })).toBe(false);
  });

  it('compares booleans as numbers, like the server', () => {
    expect(matchesPredicate(true, { column: 'c', op: 'eq', value: 1 })).toBe(true);
    expect(matchesPredicate(false, { column: 'c', op: 'lt', value: 1 })).toBe(true);
    expect(matchesPredicate(true, { column: 'c', op: 'in', value: [0, 1] })).toBe(true);
  });

  it('fails mixed-type comparisons instead of coercing', () => {
    expect(matchesPredicate('5', { column: 'c', op: 'eq', value: 5 })).toBe(false);
    expect(matchesPredicate('5', { column: 'c', op: 'lt', value: 9 })).toBe(false);
    expect(matchesPredicate(5, { column: 'c', op: 'ge', value: '1' })).toBe(false);
  });

  it('handles in-lists and ordering ops over scalars', () => {
    expect(matchesPredicate('ok', { column: 'c', op: 'in', value: ['ok', 'timeout'] })).toBe(true);
    expect(matchesPredicate('bad', { column: 'c', op: 'in', value: ['ok'] })).toBe(false);
    expect(matchesPredicate(2, { column: 'c', op: 'in', value: 2 })).toBe(false);
    expect(matchesPredicate(2, { column: 'c', op: 'ne', value: 3 })).toBe(true);
    expect(matchesPredicate('b', { column: 'c', op: 'gt', value: 'a' })).toBe(true);
    expect(matchesPredicate(2, { column: 'c', op: 'ge', value: 2 })).toBe(true);
  });
});

describe('predicatesFromTriples', () => {
  it('carries the slice triples over verbatim', () => {
    expect(
      predicatesFromTriples([
        ['status', 'eq', 'ok'],
        ['score', 'in', [1, 2]],
      ]),
    ).toEqual([
      { column: 'status', op: 'eq', value: 'ok' },
      { column: 'score', op: 'in', value: [1, 2] },
    ]);
  });
});

describe('toggleSelection', () => {
  it('adds an unselected row and removes a selected one', () => {
    expect(toggleSelection([], 'a')).toEqual(['a']);
    expect(toggleSelection(['a', 'b'], 'a')).toEqual(['b']);
    expect(toggleSelection(['a'], 'b')).toEqual(['a', 'b']);
  });
});
