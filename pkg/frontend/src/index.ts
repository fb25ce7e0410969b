export * from './api/types';
export { ApiClient, ApiError, componentPath } from './api/client';
export type { ClientConfig, FetchLike } from './api/client';
export { buildCardStacks, parseComponentId } from './cards';
export type { CardStack, ComponentCard } from './cards';
export {
  applyTableControls,
  matchesPredicate,
  predicatesFromTriples,
  tableRows,
  toggleSelection,
} from './runsTable';
export type { ColumnPredicate, FilterOp, Row, RunsTableState, SortDirection } from './runsTable';
export {
  applyRecommendation,
  contextBuilderStep,
  emptySelection,
  expansionPreviewCount,
  selectionToContextBody,
} from './contextBuilder';
export type {
  BuilderKind,
  BuilderSelection,
  BuilderStepView,
  CandidateStatus,
  CandidateView,
} from './contextBuilder';
export { doiHref, publicationLanding, runDoi } from './publication';
export { LatestWins } from './reconcile';
