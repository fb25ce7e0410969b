"""HTTP/JSON facade over the registry, compatibility checks, and analysis.

Every handler is a thin translation layer: parse the request, call the
store or a pure function, serialize with the same canonical object forms
used on disk. Domain errors carry stable codes that map onto HTTP statuses
here; handlers never catch-and-reword them.
"""

from __future__ import annotations

import json

from fastapi import Depends, FastAPI, File, Form, Header, Query, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from starlette.exceptions import HTTPException as StarletteHTTPException

from causalbench import __version__
from causalbench.analysis import (
    AnalysisError,
    CausalGraph,
    assemble_virtual_run,
    default_graph,
    estimate_impact,
    predict,
    recommend,
    slice_table,
    table_pareto,
)
from causalbench.compat import suggest
from causalbench.core import BenchmarkContext, BenchmarkRun, ComponentKind
from causalbench.core.errors import CoreError, SchemaViolation
from causalbench.core.types import descriptor_from_obj
from causalbench.registry import RegistryError, RegistryStore

_STATUS_BY_CODE = {
    "unauthenticated": 401,
    "forbidden": 403,
    "not_owner": 403,
    "unknown_component": 404,
    "unknown_subject": 404,
    "name_taken": 409,
    "permanent_entity": 409,
    "schema_violation": 422,
    "invalid_run": 422,
    "corrupt_archive": 422,
    "empty_family": 422,
    "shape_mismatch": 422,
    "analysis_error": 422,
    "unknown_column": 422,
    "unknown_node": 422,
    "invalid_graph": 422,
    "no_overlap": 422,
    "missing_objective": 422,
    "empty_table": 422,
    "integrity_failure": 500,
    "registrar_unavailable": 503,
}


class Unauthenticated(Exception):
    code = "unauthenticated"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


def _error_body(code: str, detail: str, violations=None) -> dict:
    body = {"error": code, "detail": detail}
    if violations:
        body["violations"] = [
            v.to_obj() if hasattr(v, "to_obj") else {"detail": str(v)}
            for v in violations
        ]
    return body


def _error_response(exc) -> JSONResponse:
    code = getattr(exc, "code", "internal_error")
    return JSONResponse(
        status_code=_STATUS_BY_CODE.get(code, 500),
        content=_error_body(code, getattr(exc, "detail", str(exc)), getattr(exc, "violations", None)),
    )


def _schema_error(detail: str) -> SchemaViolation:
    return SchemaViolation([detail])


def _field(body: dict, name: str):
    if name not in body:
        raise _schema_error(f"request body is missing {name!r}")
    return body[name]


def _load_graph_arg(body: dict) -> CausalGraph:
    if "graph" in body and body["graph"] is not None:
        return CausalGraph.from_obj(body["graph"])
    return default_graph()


def create_app(store: RegistryStore) -> FastAPI:
    app = FastAPI(title="causalbench", version=__version__)

    # -- auth ---------------------------------------------------------------

    def optional_principal(authorization: str | None = Header(default=None)) -> str | None:
        """Resolve the caller, or None when no credentials are presented."""
        if authorization is None:
            return None
        scheme, _, key = authorization.partition(" ")
        if scheme.lower() != "bearer" or not key.strip():
            raise Unauthenticated("authorization header must be 'Bearer <key>'")
        principal = store.authenticate(key.strip())
        if principal is None:
            raise Unauthenticated("unknown or inactive api key")
        return principal

    def require_principal(principal: str | None = Depends(optional_principal)) -> str:
        if principal is None:
            raise Unauthenticated("this endpoint requires an api key")
        return principal

    # -- error translation ----------------------------------------------------

    @app.exception_handler(Unauthenticated)
    async def _unauthenticated(request: Request, exc: Unauthenticated):
        return _error_response(exc)

    @app.exception_handler(RegistryError)
    async def _registry_error(request: Request, exc: RegistryError):
        return _error_response(exc)

    @app.exception_handler(CoreError)
    async def _core_error(request: Request, exc: CoreError):
        return _error_response(exc)

    @app.exception_handler(AnalysisError)
    async def _analysis_error(request: Request, exc: AnalysisError):
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def _request_invalid(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content=_error_body("schema_violation", str(exc.errors()))
        )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        return JSONResponse(
            status_code=exc.status_code,
            content=_error_body(f"http_{exc.status_code}", str(exc.detail)),
        )

    # -- service ------------------------------------------------------------

    @app.get("/v1/health")
    def health():
        return {"ok": True, "service": "causalbench", "version": __version__}

    @app.get("/v1/whoami")
    def whoami(principal: str = Depends(require_principal)):
        return {"user": principal}

    # -- components -----------------------------------------------------------

    def _parse_component_form(component: str):
        try:
            obj = json.loads(component)
        except json.JSONDecodeError as exc:
            raise _schema_error(f"component field is not valid JSON: {exc}") from exc
        try:
            kind = ComponentKind(_field(obj, "kind"))
            descriptor = descriptor_from_obj(kind, _field(obj, "descriptor"))
        except SchemaViolation:
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise _schema_error(f"malformed descriptor: {exc}") from exc
        return kind, descriptor, obj.get("metadata") or {}

    @app.post("/v1/components")
    def register_component(
        component: str = Form(...),
        payload: UploadFile = File(...),
        principal: str = Depends(require_principal),
    ):
        kind, descriptor, metadata = _parse_component_form(component)
        assigned = store.register_component(
            kind, descriptor, payload.file.read(), principal, metadata=metadata
        )
        return {"id": str(assigned), "name": assigned.name, "version": assigned.version}

    @app.post("/v1/components/{owner}/{slug}/versions")
    def register_version(
        owner: str,
        slug: str,
        component: str = Form(...),
        payload: UploadFile = File(...),
        principal: str = Depends(require_principal),
    ):
        _, descriptor, metadata = _parse_component_form(component)
        assigned = store.new_version(
            f"{owner}/{slug}@1", descriptor, payload.file.read(), principal, metadata=metadata
        )
        return {"id": str(assigned), "name": assigned.name, "version": assigned.version}

    @app.get("/v1/components")
    def query_components(
        kind: str | None = None,
        task: str | None = None,
        q: str | None = None,
        scope: str = Query("all", pattern="^(all|mine|public)$"),
        page: int = Query(1, ge=1),
        page_size: int = Query(50, ge=1, le=100),
        principal: str | None = Depends(optional_principal),
    ):
        if kind is not None:
            try:
                kind = ComponentKind(kind)
            except ValueError as exc:
                raise _schema_error(str(exc)) from exc
        records, total = store.query(
            kind=kind, task=task, text=q, scope=scope,
            page=page, page_size=page_size, principal=principal,
        )
        return {
            "items": [r.to_obj() for r in records],
            "total": total,
            "page": page,
            "page_size": page_size,
        }

    @app.get("/v1/components/{owner}/{slug}")
    def component_versions(
        owner: str, slug: str, principal: str | None = Depends(optional_principal)
    ):
        records = store.component_versions(f"{owner}/{slug}", principal)
        return {"items": [r.to_obj() for r in records]}

    @app.get("/v1/components/{owner}/{slug}/{version}")
    def component_record(
        owner: str,
        slug: str,
        version: int,
        principal: str | None = Depends(optional_principal),
    ):
        return store.get_component(f"{owner}/{slug}@{version}", principal).to_obj()

    @app.get("/v1/components/{owner}/{slug}/{version}/payload")
    def download_payload(
        owner: str,
        slug: str,
        version: int,
        principal: str | None = Depends(optional_principal),
    ):
        _, payload = store.fetch(f"{owner}/{slug}@{version}", principal)
        return Response(
            content=payload,
            media_type="application/gzip",
            headers={
                "Content-Disposition": f'attachment; filename="{owner}-{slug}-{version}.tar.gz"'
            },
        )

    @app.put("/v1/components/{owner}/{slug}/{version}/payload")
    async def upload_payload(
        owner: str,
        slug: str,
        version: int,
        request: Request,
        principal: str = Depends(require_principal),
    ):
        payload = await request.body()
        digest = store.restore_payload(f"{owner}/{slug}@{version}", payload, principal)
        return {"payload_hash": digest}

    @app.post("/v1/components/{owner}/{slug}/{version}/publish")
    def publish_component(
        owner: str, slug: str, version: int, principal: str = Depends(require_principal)
    ):
        return store.publish(f"{owner}/{slug}@{version}", principal).to_obj()

    @app.delete("/v1/components/{owner}/{slug}/{version}")
    def delete_component(
        owner: str, slug: str, version: int, principal: str = Depends(require_principal)
    ):
        subject = f"{owner}/{slug}@{version}"
        store.delete(subject, principal)
        return {"deleted": subject}

    # -- contexts -------------------------------------------------------------

    @app.post("/v1/contexts")
    def save_context(body: dict, principal: str = Depends(require_principal)):
        try:
            context = BenchmarkContext.from_obj(body)
        except SchemaViolation:
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise _schema_error(f"malformed context: {exc}") from exc
        return {"context_id": store.save_context(context, principal)}

    @app.get("/v1/contexts")
    def list_contexts(principal: str | None = Depends(optional_principal)):
        return {"items": store.list_contexts(principal)}

    @app.get("/v1/contexts/{context_id}")
    def get_context(context_id: str, principal: str | None = Depends(optional_principal)):
        return store.get_context(context_id, principal).to_obj()

    @app.delete("/v1/contexts/{context_id}")
    def delete_context(context_id: str, principal: str = Depends(require_principal)):
        store.delete(context_id, principal)
        return {"deleted": context_id}

    # -- runs -------------------------------------------------------------------

    @app.post("/v1/runs")
    def save_run(body: dict, principal: str = Depends(require_principal)):
        try:
            run = BenchmarkRun.from_obj(body)
        except SchemaViolation:
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise _schema_error(f"malformed run: {exc}") from exc
        return {"run_id": store.save_run(run, principal)}

    @app.get("/v1/runs")
    def list_runs(
        context_id: str | None = None,
        principal: str | None = Depends(optional_principal),
    ):
        return {"items": store.list_runs(principal, context_id=context_id)}

    @app.get("/v1/runs/{run_id}")
    def get_run(run_id: str, principal: str | None = Depends(optional_principal)):
        return store.get_run(run_id, principal).to_obj()

    @app.post("/v1/runs/{run_id}/publish")
    def publish_run(run_id: str, principal: str = Depends(require_principal)):
        return store.publish(run_id, principal).to_obj()

    @app.delete("/v1/runs/{run_id}")
    def delete_run(run_id: str, principal: str = Depends(require_principal)):
        store.delete(run_id, principal)
        return {"deleted": run_id}

    # -- compat -------------------------------------------------------------------

    def _descriptors(ids, principal) -> list:
        return [store.get_component(cid, principal).descriptor for cid in ids]

    @app.post("/v1/compat/suggest")
    def compat_suggest(body: dict, principal: str | None = Depends(optional_principal)):
        chosen = body.get("chosen") or {}
        candidates = body.get("candidates") or {}
        partial = {k: _descriptors(chosen.get(k, ()), principal) for k in chosen}
        pool = {k: _descriptors(candidates.get(k, ()), principal) for k in candidates}
        partitions = suggest(partial, pool)
        return {k: p.to_obj() for k, p in partitions.items()}

    # -- analysis -------------------------------------------------------------------

    def _assembled(body: dict, principal: str | None):
        context = store.get_context(_field(body, "context_id"), principal)
        return assemble_virtual_run(store, context, principal)

    @app.post("/v1/analysis/slice")
    def analysis_slice(body: dict, principal: str | None = Depends(optional_principal)):
        table, coverage = _assembled(body, principal)
        sliced = slice_table(
            table,
            filters=[tuple(f) for f in body.get("filters", ())],
            group_by=body.get("group_by", ()),
            aggregates=[tuple(a) for a in body.get("aggregates", ())],
        )
        return {"table": sliced.to_obj(), "coverage": coverage.to_obj()}

    @app.post("/v1/analysis/impact")
    def analysis_impact(body: dict, principal: str | None = Depends(optional_principal)):
        table, coverage = _assembled(body, principal)
        treatment = _field(body, "treatment")
        if not isinstance(treatment, (list, tuple)) or len(treatment) != 3:
            raise _schema_error("treatment must be [column, level_a, level_b]")
        estimate = estimate_impact(
            table, _load_graph_arg(body), tuple(treatment), _field(body, "outcome")
        )
        return {"impact": estimate.to_obj(), "coverage": coverage.to_obj()}

    @app.post("/v1/analysis/pareto")
    def analysis_pareto(body: dict, principal: str | None = Depends(optional_principal)):
        table, coverage = _assembled(body, principal)
        objectives = [tuple(o) for o in _field(body, "objectives")]
        try:
            front = table_pareto(
                table, body.get("id_column", "scenario_key"), objectives
            )
        except ValueError as exc:
            raise _schema_error(str(exc)) from exc
        return {"front": front, "coverage": coverage.to_obj()}

    @app.post("/v1/analysis/predict")
    def analysis_predict(body: dict, principal: str | None = Depends(optional_principal)):
        table, coverage = _assembled(body, principal)
        report = predict(table, _load_graph_arg(body), _field(body, "target"))
        return {"prediction": report.to_obj(), "coverage": coverage.to_obj()}

    @app.post("/v1/analysis/recommend")
    def analysis_recommend(body: dict, principal: str | None = Depends(optional_principal)):
        table, coverage = _assembled(body, principal)
        try:
            recs = recommend(
                table, _load_graph_arg(body), _field(body, "space"), int(body.get("k", 3))
            )
        except ValueError as exc:
            raise _schema_error(str(exc)) from exc
        return {
            "recommendations": [r.to_obj() for r in recs],
            "coverage": coverage.to_obj(),
        }

    return app
