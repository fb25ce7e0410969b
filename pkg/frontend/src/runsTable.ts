import type { Cell, FilterTriple, Scalar, TableData } from './api/types';

export type SortDirection = 'asc' | 'desc';

export type FilterOp = 'eq' | 'ne' | 'lt' | 'le' | 'gt' | 'ge' | 'in' | 'isnull' | 'notnull';

export type ColumnPredicate = {
  column: string;
  op: FilterOp;
  /** Comparison target; an array for "in", absent for isnull/notnull. */
  value?: Cell | Scalar[];
};

/** View state of the runs table: what to show, in which order, and what is picked. */
export type RunsTableState = {
  sort: [string, SortDirection] | null;
  filters: ColumnPredicate[];
  visible_columns: string[];
  /** Row ids (run_id or scenario_key) currently selected. */
  selection: string[];
};

export type Row = Record<string, Cell>;

/** Zip a columnar /v1 table payload into row objects keyed by column name. */
export function tableRows(table: TableData): Row[] {
  return table.rows.map((cells) => {
    const row: Row = {};
    table.columns.forEach((column, i) => {
      row[column] = cells[i] ?? null;
    });
    return row;
  });
}

/** [column, op, value] triples in the server's slice grammar -> predicates. */
export function predicatesFromTriples(triples: FilterTriple[]): ColumnPredicate[] {
  return triples.map(([column, op, value]) => ({ column, op: op as FilterOp, value }));
}

function isNumeric(value: Cell): value is number | boolean {
  return typeof value === 'number' || typeof value === 'boolean';
}

// JSON booleans count as numbers in comparisons, matching the server's
// arithmetic view of cells; strings only ever compare against strings.
function cellEquals(cell: Scalar, target: Scalar): boolean {
  if (isNumeric(cell) && isNumeric(target)) return Number(cell) === Number(target);
  return cell === target;
}

function cellOrder(cell: Scalar, target: Scalar): number | null {
  if (isNumeric(cell) && isNumeric(target)) return Number(cell) - Number(target);
  if (typeof cell === 'string' && typeof target === 'string') {
    return cell < target ? -1 : cell > target ? 1 : 0;
  }
  return null; // mixed types satisfy no ordering, as on the server
}

/**
 * One predicate against one cell, with the server's null semantics:
 * null cells satisfy no comparison, only isnull.
 */
export function matchesPredicate(cell: Cell | undefined, predicate: ColumnPredicate): boolean {
  const value = cell === undefined ? null : cell;
  if (predicate.op === 'isnull') return value === null;
  if (predicate.op === 'notnull') return value !== null;
  if (value === null) return false;
  const target = predicate.value;
  if (predicate.op === 'in') {
    return Array.isArray(target) && target.some((t) => cellEquals(value, t));
  }
  if (target === null || target === undefined || Array.isArray(target)) return false;
  if (predicate.op === 'eq') return cellEquals(value, target);
  if (predicate.op === 'ne') return !cellEquals(value, target);
  const order = cellOrder(value, target);
  if (order === null) return false;
  switch (predicate.op) {
    case 'lt':
      return order < 0;
    case 'le':
      return order <= 0;
    case 'gt':
      return order > 0;
    case 'ge':
      return order >= 0;
  }
  return false;
}

// numbers sort before strings so mixed columns stay deterministic; null is
// handled separately and always loses.
function compareCells(a: Scalar, b: Scalar): number {
  const rankA = isNumeric(a) ? 0 : 1;
  const rankB = isNumeric(b) ? 0 : 1;
  if (rankA !== rankB) return rankA - rankB;
  return cellOrder(a, b) ?? 0;
}

/**
 * Filter, then sort: the runs table primitive.
 *
 * Filtering keeps rows matching every predicate, in their original order.
 * Sorting is stable and sends null cells to the end regardless of
 * direction, so "worst first" never means "missing first". The sort column
 * must be visible or at least known to the hidden-column catalog.
 */
export function applyTableControls(
  rows: Row[],
  state: RunsTableState,
  hiddenCatalog: string[] = [],
): Row[] {
  if (state.sort) {
    const [column] = state.sort;
    if (!state.visible_columns.includes(column) && !hiddenCatalog.includes(column)) {
      throw new Error(`sort column '${column}' is neither visible nor catalogued`);
    }
  }
  const kept = rows.filter((row) =>
    state.filters.every((predicate) => matchesPredicate(row[predicate.column], predicate)),
  );
  if (!state.sort) return kept;
  const [column, direction] = state.sort;
  const sign = direction === 'desc' ? -1 : 1;
  return kept
    .map((row, index) => ({ row, index }))
    .sort((a, b) => {
      const cellA = a.row[column] ?? null;
      const cellB = b.row[column] ?? null;
      if (cellA === null || cellB === null) {
        if (cellA === null && cellB === null) return a.index - b.index;
        return cellA === null ? 1 : -1;
      }
      const order = sign * compareCells(cellA, cellB);
      return order !== 0 ? order : a.index - b.index;
    })
    .map((entry) => entry.row);
}

/** Toggle one row id in the selection, returning the new selection. */
export function toggleSelection(selection: string[], rowId: string): string[] {
  return selection.includes(rowId)
    ? selection.filter((id) => id !== rowId)
    : [...selection, rowId];
}
