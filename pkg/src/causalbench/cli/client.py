"""HTTP client for the /v1 API.

Raises ``ApiError`` for anything the server rejected (carrying the
server's error code and detail verbatim) and ``ServerUnreachable`` for
transport failures, so the command layer can map them onto the two
non-zero exit codes without inspecting messages.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import requests

from causalbench.core.types import ComponentId, descriptor_from_obj

from .config import CliConfig

REQUEST_TIMEOUT_S = 60.0


class ServerUnreachable(Exception):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str, violations: list | None = None):
        super().__init__(f"{code}: {detail}")
        self.status = status
        self.code = code
        self.detail = detail
        self.violations = violations or []


def component_path(component_id) -> str:
    cid = ComponentId.parse(str(component_id))
    owner, slug = cid.name.split("/", 1)
    return f"/v1/components/{owner}/{slug}/{cid.version}"


class ApiClient:
    def __init__(self, config: CliConfig, session: requests.Session | None = None):
        self.base = config.server_url.rstrip("/")
        self.api_key = config.api_key
        self.session = session or requests.Session()

    def _headers(self) -> dict:
        if self.api_key:
            return {"Authorization": f"Bearer {self.api_key}"}
        return {}

    def request(
        self,
        method: str,
        path: str,
        *,
        json_body=None,
        data=None,
        files=None,
        content=None,
        params=None,
        raw: bool = False,
    ):
        try:
            response = self.session.request(
                method,
                self.base + path,
                json=json_body,
                data=content if content is not None else data,
                files=files,
                params=params,
                headers=self._headers(),
                timeout=REQUEST_TIMEOUT_S,
            )
        except requests.RequestException as exc:
            raise ServerUnreachable(f"cannot reach {self.base}: {exc}") from exc
        if response.status_code >= 400:
            try:
                body = response.json()
            except ValueError:
                body = {}
            raise ApiError(
                response.status_code,
                body.get("error", f"http_{response.status_code}"),
                body.get("detail", response.text[:200]),
                body.get("violations"),
            )
        return response.content if raw else response.json()

    # thin wrappers named after what they fetch, used across commands

    def whoami(self) -> str:
        return self.request("GET", "/v1/whoami")["user"]

    def get_component(self, component_id: str) -> dict:
        return self.request("GET", component_path(component_id))

    def get_payload(self, component_id: str) -> bytes:
        return self.request("GET", component_path(component_id) + "/payload", raw=True)

    def save_context(self, context_obj: dict) -> str:
        return self.request("POST", "/v1/contexts", json_body=context_obj)["context_id"]

    def get_context(self, context_id: str) -> dict:
        return self.request("GET", f"/v1/contexts/{context_id}")

    def save_run(self, run_obj: dict) -> str:
        return self.request("POST", "/v1/runs", json_body=run_obj)["run_id"]


@dataclass
class RemoteSource:
    """ComponentSource over the HTTP API, verifying payload integrity.

    A downloaded payload whose bytes do not hash to the recorded
    payload_hash is treated as a server-side integrity failure rather
    than silently executed.
    """

    client: ApiClient
    _cache: dict = field(default_factory=dict)

    def fetch_component(self, component_id: str) -> tuple[object, bytes]:
        if component_id in self._cache:
            return self._cache[component_id]
        record = self.client.get_component(component_id)
        payload = self.client.get_payload(component_id)
        digest = hashlib.sha256(payload).hexdigest()
        if digest != record["payload_hash"]:
            raise ApiError(
                500,
                "integrity_failure",
                f"payload of {component_id!r} hashes to {digest[:12]}, "
                f"record says {record['payload_hash'][:12]}",
            )
        descriptor = descriptor_from_obj(record["kind"], record["descriptor"])
        self._cache[component_id] = (descriptor, payload)
        return self._cache[component_id]
