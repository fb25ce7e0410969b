import type { PublicationRecord, RunData } from './api/types';

/**
 * In-app route for a minted identifier. The bundled registrar simulator
 * mints identifiers without hosting landing pages, so the client renders
 * the landing text itself at this route from the publication record.
 */
export function doiHref(identifier: string): string {
  return '#/doi/' + encodeURIComponent(identifier);
}

/** The run's DOI cell: its minted identifier, or null while unpublished. */
export function runDoi(run: RunData): string | null {
  return run.minted_identifier ?? null;
}

/** Landing text for a minted identifier, built purely from API data. */
export function publicationLanding(record: PublicationRecord): string {
  return [
    `Identifier: ${record.identifier}`,
    `Subject: ${record.subject}`,
    `Registrar: ${record.registrar}`,
    `Minted: ${record.minted_at}`,
    'This identifier is permanent: the subject and every component version it references stay retrievable.',
  ].join('\n');
}
