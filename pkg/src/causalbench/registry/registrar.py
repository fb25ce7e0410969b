"""Registrar clients that mint public identifiers for published subjects.

Two implementations: a deterministic local simulator for self-contained
deployments and tests, and an HTTP client for the Zenodo sandbox. Both
expose ``mint`` and report a stable ``name`` recorded alongside each minted
identifier.
"""

from __future__ import annotations

from dataclasses import dataclass

import requests

from causalbench.core.canonical import sha256_hex

from .errors import RegistrarUnavailable


class Registrar:
    name = "abstract"

    def mint(self, subject: str, title: str, creators: list[str], description: str) -> str:
        raise NotImplementedError


class LocalSimRegistrar(Registrar):
    """Deterministic identifier mint: no network, same subject, same identifier."""

    name = "local-sim"
    prefix = "10.70000/cb."

    def mint(self, subject: str, title: str, creators: list[str], description: str) -> str:
        return self.prefix + sha256_hex(subject.encode("utf-8"))[:12]


@dataclass
class ZenodoSandboxRegistrar(Registrar):
    """Creates a deposition on the Zenodo sandbox and returns its DOI.

    Network or API failures surface as RegistrarUnavailable so callers can
    leave visibility untouched.
    """

    token: str
    base_url: str = "https://sandbox.zenodo.org"
    timeout_s: float = 30.0
    name = "zenodo-sandbox"

    def mint(self, subject: str, title: str, creators: list[str], description: str) -> str:
        payload = {
            "metadata": {
                "title": title,
                "upload_type": "dataset",
                "description": description or f"Published benchmark subject {subject}.",
                "creators": [{"name": c} for c in (creators or ["unknown"])],
            }
        }
        try:
            resp = requests.post(
                f"{self.base_url.rstrip('/')}/api/deposit/depositions",
                json=payload,
                params={"access_token": self.token},
                timeout=self.timeout_s,
            )
        except requests.RequestException as exc:
            raise RegistrarUnavailable(f"deposition request failed: {exc}") from exc
        if resp.status_code not in (200, 201):
            raise RegistrarUnavailable(
                f"deposition rejected: HTTP {resp.status_code} {resp.text[:200]}"
            )
        body = resp.json()
        doi = body.get("doi") or body.get("metadata", {}).get("prereserve_doi", {}).get("doi")
        if not doi:
            raise RegistrarUnavailable("deposition response carries no DOI")
        return str(doi)


def make_registrar(kind: str, token: str = "") -> Registrar:
    if kind == "local-sim" or kind == "sim":
        return LocalSimRegistrar()
    if kind == "zenodo-sandbox":
        return ZenodoSandboxRegistrar(token=token)
    raise ValueError(f"unknown registrar kind: {kind!r}")
