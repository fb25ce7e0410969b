import { readFileSync } from 'node:fs';

const fixtureDir = new URL('../fixtures/', import.meta.url);

/** Parse one recorded /v1 response from fixtures/. */
export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(new URL(name, fixtureDir), 'utf8')) as T;
}
