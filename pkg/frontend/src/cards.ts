import type { ComponentRecord } from './api/types';

/** One component version rendered as a card. */
export type ComponentCard = {
  /** Full id, "owner/slug@version". */
  id: string;
  /** Namespaced name without the version, "owner/slug". */
  base_name: string;
  version: number;
  record: ComponentRecord;
};

/**
 * All versions of one component name, stacked behind the newest.
 * Invariant: versions is non-empty and strictly descending.
 */
export type CardStack = {
  base_name: string;
  versions: ComponentCard[];
  top_card: ComponentCard;
};

/** "owner/slug@3" -> {base_name: "owner/slug", version: 3}. */
export function parseComponentId(id: string): { base_name: string; version: number } {
  const at = id.lastIndexOf('@');
  const version = Number(id.slice(at + 1));
  if (at <= 0 || !Number.isInteger(version) || version < 1) {
    throw new Error(`malformed component id: ${id}`);
  }
  return { base_name: id.slice(0, at), version };
}

/**
 * Group component records into per-name stacks for the card grid.
 * E.g. versions {x@1, x@2, y@1} -> stacks [x (top 2), y (top 1)].
 * The top card is always the highest version; stacks are ordered by name.
 */
export function buildCardStacks(components: ComponentRecord[]): CardStack[] {
  const byName = new Map<string, Map<number, ComponentCard>>();
  for (const record of components) {
    const { base_name, version } = parseComponentId(record.descriptor.id);
    let versions = byName.get(base_name);
    if (!versions) {
      versions = new Map();
      byName.set(base_name, versions);
    }
    // the listing can repeat a version across pages; keep the first copy
    if (!versions.has(version)) {
      versions.set(version, { id: record.descriptor.id, base_name, version, record });
    }
  }
  const names = [...byName.keys()].sort();
  return names.map((base_name) => {
    const versions = [...byName.get(base_name)!.values()].sort((a, b) => b.version - a.version);
    return { base_name, versions, top_card: versions[0] };
  });
}
