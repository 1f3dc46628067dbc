"""HTTP session service: one mutable explorer session behind a FastAPI app.

Reads are lock-free snapshots; mutations are serialised through a single
lock and bump a monotone revision counter.  POST bodies may carry the
revision they were computed against; a mismatch is answered with 409 and no
state change.  Mutating an immutable point answers 422 with the payload
``{"error": "immutable", "point": "G"}``.
"""

from __future__ import annotations

import threading
from typing import Any, Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .annulus import arc_from_json, arc_to_json, canonicalize
from .cosilting import (
    CosiltingTuple,
    GenericPoint,
    MutationEdge,
    RestBucketPoint,
    ShiftedInjective,
    StringPoint,
    mutate,
    exchange_graph,
    graph_to_json,
    point_from_key,
    point_key,
    tuple_from_json,
    tuple_to_json,
    tuple_to_rigid,
    validate_tuple,
)
from .errors import (
    BoundTooTightError,
    CosiltError,
    ImmutablePointError,
    SchemaError,
)
from .fixtures import DEFAULT_BOUND, fixture_tuple
from .triangulation import SearchBound


class MutateRequest(BaseModel):
    point: str
    revision: Optional[int] = None


class FlipRequest(BaseModel):
    arc: dict
    revision: Optional[int] = None


class UndoRequest(BaseModel):
    revision: Optional[int] = None


class ResetRequest(BaseModel):
    fixture: Optional[str] = None
    tuple: Optional[dict] = None
    revision: Optional[int] = None


class Session:
    def __init__(self, initial: CosiltingTuple, bound: SearchBound):
        self.bound = bound
        self.initial = initial
        self.current = initial
        self.history: list[tuple[CosiltingTuple, MutationEdge]] = []
        self.revision = 0
        self.lock = threading.Lock()

    def reset(self, new_initial: CosiltingTuple) -> None:
        self.initial = new_initial
        self.current = new_initial
        self.history = []
        self.revision += 1


def _point_view(session: Session, point) -> dict:
    mutable = not isinstance(point, (GenericPoint, RestBucketPoint))
    view: dict[str, Any] = {
        "id": point_key(point),
        "kind": type(point).__name__,
        "mutable": mutable,
    }
    if isinstance(point, StringPoint):
        view["arc"] = arc_to_json(point.arc)
    if isinstance(point, ShiftedInjective):
        view["vertex"] = point.vertex
    if hasattr(point, "label"):
        view["label"] = point.label
    return view


def _state_payload(session: Session) -> dict:
    t = session.current
    points = [_point_view(session, p) for p in tuple_to_rigid(t)]
    return {
        "revision": session.revision,
        "state": {
            **tuple_to_json(t),
            "case": "finite" if t.finite_case() else "asymptotic",
            "points": points,
            "injectives": list(t.injective_vertices()),
            "history_len": len(session.history),
        },
    }


def _error(status: int, payload: dict) -> JSONResponse:
    return JSONResponse(status_code=status, content=payload)


def create_app(initial: CosiltingTuple | None = None,
               bound: SearchBound = DEFAULT_BOUND,
               fixture: str = "finite") -> FastAPI:
    if initial is None:
        initial = fixture_tuple(fixture, bound)
    session = Session(initial, bound)
    app = FastAPI(title="cosilt explorer", version="0.1.0")
    app.state.session = session

    def stale(revision: Optional[int]) -> Optional[JSONResponse]:
        if revision is not None and revision != session.revision:
            return _error(409, {
                "error": "stale_revision",
                "expected": session.revision,
                "got": revision,
            })
        return None

    @app.get("/state")
    def get_state() -> dict:
        return _state_payload(session)

    @app.post("/mutate")
    def post_mutate(req: MutateRequest):
        with session.lock:
            conflict = stale(req.revision)
            if conflict:
                return conflict
            try:
                point = point_from_key(req.point, session.current.annulus)
            except (SchemaError, ValueError):
                return _error(422, {"error": "invalid_point", "point": req.point})
            if isinstance(point, (GenericPoint, RestBucketPoint)):
                return _error(422, {"error": "immutable",
                                    "point": "G" if isinstance(point, GenericPoint) else req.point})
            if point not in tuple_to_rigid(session.current):
                return _error(422, {"error": "invalid_point", "point": req.point})
            try:
                new, edge = mutate(session.current, point, session.bound)
            except ImmutablePointError:
                return _error(422, {"error": "immutable", "point": req.point})
            except BoundTooTightError as exc:
                return _error(409, {"error": "bound_too_tight", "detail": str(exc)})
            session.history.append((session.current, edge))
            session.current = new
            session.revision += 1
            return _state_payload(session)

    @app.post("/flip")
    def post_flip(req: FlipRequest):
        with session.lock:
            conflict = stale(req.revision)
            if conflict:
                return conflict
            try:
                arc = canonicalize(arc_from_json(req.arc), session.current.annulus)
            except (SchemaError, CosiltError):
                return _error(422, {"error": "invalid_arc", "arc": req.arc})
            current = session.current
            base = current.base.arcs
            if arc in base and arc in current.collection:
                point = ShiftedInjective(base.index(arc) + 1)
            elif arc in current.collection:
                point = StringPoint(arc)
            else:
                return _error(422, {"error": "invalid_arc", "arc": req.arc})
            try:
                new, edge = mutate(current, point, session.bound)
            except BoundTooTightError as exc:
                return _error(409, {"error": "bound_too_tight", "detail": str(exc)})
            session.history.append((current, edge))
            session.current = new
            session.revision += 1
            return _state_payload(session)

    @app.post("/undo")
    def post_undo(req: UndoRequest):
        with session.lock:
            conflict = stale(req.revision)
            if conflict:
                return conflict
            if not session.history:
                return _error(422, {"error": "nothing_to_undo"})
            previous, _ = session.history.pop()
            session.current = previous
            session.revision += 1
            return _state_payload(session)

    @app.post("/reset")
    def post_reset(req: ResetRequest):
        with session.lock:
            conflict = stale(req.revision)
            if conflict:
                return conflict
            try:
                if req.tuple is not None:
                    new = tuple_from_json(req.tuple, session.bound)
                elif req.fixture is not None:
                    new = fixture_tuple(req.fixture, session.bound)
                else:
                    new = session.initial
                report = validate_tuple(new, session.bound)
                if not report.valid:
                    return _error(422, {"error": "invalid_tuple", **report.to_json()})
            except (SchemaError, KeyError) as exc:
                return _error(422, {"error": "schema", "detail": str(exc)})
            except (CosiltError, ValueError) as exc:
                return _error(422, {"error": "invalid_tuple", "detail": str(exc)})
            session.reset(new)
            return _state_payload(session)

    @app.get("/graph")
    def get_graph(depth: int = 1):
        try:
            graph = exchange_graph(session.current, depth, session.bound)
        except BoundTooTightError as exc:
            return _error(409, {"error": "bound_too_tight", "detail": str(exc)})
        return graph_to_json(graph)

    @app.get("/schema")
    def get_schema() -> dict:
        return {
            "mutate": MutateRequest.model_json_schema(),
            "flip": FlipRequest.model_json_schema(),
            "undo": UndoRequest.model_json_schema(),
            "reset": ResetRequest.model_json_schema(),
        }

    return app
