"""HTTP/JSON facade over the cube engine.

Holds uploaded logs and built cubes in an in-memory, internally
synchronized session store. Cubes are immutable; slice and dice mint new
handles so two derived cells can be compared side by side.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from urllib.parse import parse_qsl

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from . import discovery
from .cube import (
    CubeError,
    DimensionDescriptor,
    Materialization,
    MISSING,
    ProcessCube,
    ValueNotInDomain,
    build_cube,
    cell_events,
    decode_value,
    dice_cube,
    encode_value,
    grid_view,
    list_dimensions,
    materialize_cell,
    slice_cube,
)
from .ocel import OCEL, OcelError, export_jsonocel, parse_jsonocel, parse_xmlocel, validate

__all__ = ["SessionStore", "create_app"]


@dataclass
class SessionStore:
    """Handle-addressed storage for logs and cubes; thread-safe."""

    logs: dict[str, OCEL] = field(default_factory=dict)
    cubes: dict[str, tuple[ProcessCube, str]] = field(default_factory=dict)  # cube, log handle
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _counter: "itertools.count" = field(default_factory=lambda: itertools.count(1))

    def add_log(self, log: OCEL) -> str:
        with self._lock:
            handle = f"log-{next(self._counter)}"
            self.logs[handle] = log
            return handle

    def add_cube(self, cube: ProcessCube, log_handle: str) -> str:
        with self._lock:
            handle = f"cube-{next(self._counter)}"
            self.cubes[handle] = (cube, log_handle)
            return handle

    def get_log(self, handle: str) -> OCEL:
        with self._lock:
            if handle not in self.logs:
                raise HTTPException(404, f"unknown log handle {handle!r}")
            return self.logs[handle]

    def get_cube(self, handle: str) -> tuple[ProcessCube, str]:
        with self._lock:
            if handle not in self.cubes:
                raise HTTPException(404, f"unknown cube handle {handle!r}")
            return self.cubes[handle]


def _summary(log: OCEL) -> dict:
    return {
        "events": len(log.events),
        "objects": len(log.objects),
        "types": len(log.object_types),
        "object_types": sorted(log.object_types),
        "attribute_names": sorted(log.attribute_names),
    }


def _dim_payload(dim: DimensionDescriptor) -> dict:
    return {"spec": dim.spec(), "kind": dim.kind, "name": dim.name, "scope": dim.scope}


def _parse_dim(text: str) -> DimensionDescriptor:
    try:
        return DimensionDescriptor.parse(text)
    except CubeError as exc:
        raise HTTPException(422, str(exc)) from exc


def _decode_coord(cube: ProcessCube, coord_text: str) -> dict:
    """Decode a dim=value&dim=value coordinate path segment."""
    if not cube.dims:
        if coord_text not in ("__root__", ""):
            raise HTTPException(422, "0-dim cube cells are addressed as __root__")
        return {}
    coord: dict = {}
    for dim_text, token in parse_qsl(coord_text, keep_blank_values=True):
        dim = _parse_dim(dim_text)
        if dim not in cube.dims:
            raise HTTPException(422, f"dimension {dim.spec()} not in cube")
        try:
            coord[dim] = decode_value(token, cube.domain.get(dim, ()))
        except ValueNotInDomain as exc:
            raise HTTPException(422, str(exc)) from exc
    missing = [d.spec() for d in cube.dims if d not in coord]
    if missing:
        raise HTTPException(422, f"coordinate missing dimensions: {missing}")
    return coord


def _domain_payload(cube: ProcessCube) -> dict:
    return {
        dim.spec(): [encode_value(v) for v in cube.domain.get(dim, ())]
        for dim in cube.dims
    }


def _cube_payload(handle: str, cube: ProcessCube, log_handle: str) -> dict:
    return {
        "handle": handle,
        "log": log_handle,
        "dims": [_dim_payload(d) for d in cube.dims],
        "mode": cube.mode.value,
        "domains": _domain_payload(cube),
        "cells": len(cube.index),
        "events": len(cube.events()),
    }


def create_app(
    static_dir: str | None = None,
    max_upload_bytes: int = 256 * 1024 * 1024,
    build_timeout: float = 300.0,
) -> FastAPI:
    app = FastAPI(title="ocpcube")
    store = SessionStore()
    builder = ThreadPoolExecutor(max_workers=4)

    @app.exception_handler(CubeError)
    async def _cube_error(_req, exc: CubeError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.post("/logs", status_code=201)
    async def upload_log(request: Request, format: str = Query("json")):
        body = await request.body()
        if len(body) > max_upload_bytes:
            raise HTTPException(413, "upload exceeds size cap")
        try:
            log = parse_xmlocel(body) if format == "xml" else parse_jsonocel(body)
        except OcelError as exc:
            return JSONResponse(
                status_code=400,
                content={
                    "detail": str(exc),
                    "errors": [
                        {"code": type(exc).__name__, "message": str(exc), "location": ""}
                    ],
                },
            )
        report = validate(log)
        if report.errors:
            return JSONResponse(
                status_code=400,
                content={
                    "detail": "validation failed",
                    "errors": [
                        {"code": i.code, "message": i.message, "location": i.location}
                        for i in report.errors
                    ],
                },
            )
        handle = store.add_log(log)
        return {"handle": handle, "summary": _summary(log)}

    @app.get("/logs/{handle}")
    def log_summary(handle: str):
        return {"handle": handle, "summary": _summary(store.get_log(handle))}

    @app.get("/logs/{handle}/events")
    def log_events(handle: str, limit: int = 100, offset: int = 0):
        log = store.get_log(handle)
        events = log.events[offset: offset + limit]
        return {
            "total": len(log.events),
            "events": [
                {
                    "id": e.id,
                    "activity": e.activity,
                    "timestamp": encode_value(e.timestamp),
                    "vmap": {k: encode_value(v) for k, v in sorted(e.vmap.items())},
                    "omap": list(e.omap),
                }
                for e in events
            ],
        }

    @app.get("/logs/{handle}/objects")
    def log_objects(handle: str):
        log = store.get_log(handle)
        by_type: dict[str, list] = {t: [] for t in sorted(log.object_types)}
        for oid, obj in sorted(log.objects.items()):
            by_type[obj.otype].append(
                {"id": oid, "ovmap": {k: encode_value(v) for k, v in sorted(obj.ovmap.items())}}
            )
        return {"object_types": by_type}

    @app.get("/logs/{handle}/dimensions")
    def log_dimensions(handle: str):
        log = store.get_log(handle)
        return {"dimensions": [_dim_payload(d) for d in list_dimensions(log)]}

    @app.post("/logs/{handle}/cubes", status_code=201)
    def create_cube(handle: str, body: dict):
        log = store.get_log(handle)
        dims = [_parse_dim(t) for t in body.get("dims", [])]
        try:
            mode = Materialization(body.get("mode", "existence"))
        except ValueError as exc:
            raise HTTPException(422, f"unknown mode {body.get('mode')!r}") from exc
        future = builder.submit(build_cube, log, dims, mode)
        try:
            cube = future.result(timeout=build_timeout)
        except FutureTimeout:
            raise HTTPException(503, "cube build timed out")
        cube_handle = store.add_cube(cube, handle)
        return _cube_payload(cube_handle, cube, handle)

    @app.get("/cubes/{handle}")
    def cube_info(handle: str):
        cube, log_handle = store.get_cube(handle)
        return _cube_payload(handle, cube, log_handle)

    @app.get("/cubes/{handle}/grid")
    def cube_grid(handle: str, rows: str, cols: str | None = None):
        cube, _ = store.get_cube(handle)
        row_dim = _parse_dim(rows)
        col_dim = _parse_dim(cols) if cols and cols != "ALL" else None
        view = grid_view(cube, row_dim, col_dim)
        return {
            "rows": [encode_value(v) for v in view.rows],
            "cols": ["ALL"] if col_dim is None else [encode_value(v) for v in view.cols],
            "counts": [list(r) for r in view.counts],
        }

    @app.post("/cubes/{handle}/slice", status_code=201)
    def cube_slice(handle: str, body: dict):
        cube, log_handle = store.get_cube(handle)
        dim = _parse_dim(body["dim"])
        if dim not in cube.dims:
            raise HTTPException(422, f"dimension {dim.spec()} not in cube")
        token = body["value"]
        value = MISSING if token == "__null__" else decode_value(
            str(token), cube.domain.get(dim, ())
        )
        derived = slice_cube(cube, dim, value)
        new_handle = store.add_cube(derived, log_handle)
        return _cube_payload(new_handle, derived, log_handle)

    @app.post("/cubes/{handle}/dice", status_code=201)
    def cube_dice(handle: str, body: dict):
        cube, log_handle = store.get_cube(handle)
        selection = {}
        for dim_text, tokens in body.get("selection", {}).items():
            dim = _parse_dim(dim_text)
            if dim not in cube.dims:
                raise HTTPException(422, f"dimension {dim.spec()} not in cube")
            selection[dim] = {
                MISSING if t == "__null__" else decode_value(str(t), cube.domain.get(dim, ()))
                for t in tokens
            }
        derived = dice_cube(cube, selection)
        new_handle = store.add_cube(derived, log_handle)
        return _cube_payload(new_handle, derived, log_handle)

    def _cell_log(handle: str, coord_text: str) -> OCEL:
        cube, _ = store.get_cube(handle)
        return materialize_cell(cube, _decode_coord(cube, coord_text))

    @app.get("/cubes/{handle}/cells/{coord}/count")
    def cell_count(handle: str, coord: str):
        cube, _ = store.get_cube(handle)
        return {"count": len(cell_events(cube, _decode_coord(cube, coord)))}

    @app.get("/cubes/{handle}/cells/{coord}/log")
    def cell_log(handle: str, coord: str):
        payload = export_jsonocel(_cell_log(handle, coord))
        return Response(
            content=payload,
            media_type="application/json",
            headers={"Content-Disposition": 'attachment; filename="cell.jsonocel"'},
        )

    @app.get("/cubes/{handle}/cells/{coord}/ocdfg")
    def cell_ocdfg(handle: str, coord: str, format: str = "json", min_frequency: int = 0):
        model = discovery.discover_ocdfg(_cell_log(handle, coord))
        if format == "dot":
            return PlainTextResponse(discovery.ocdfg_to_dot(model, min_frequency))
        return discovery.ocdfg_to_json(model, min_frequency)

    @app.get("/cubes/{handle}/cells/{coord}/ocpn")
    def cell_ocpn(handle: str, coord: str, format: str = "json"):
        model = discovery.discover_ocpn(_cell_log(handle, coord))
        if format == "dot":
            return PlainTextResponse(discovery.ocpn_to_dot(model))
        return discovery.ocpn_to_json(model)

    @app.post("/compare")
    def compare_cells(body: dict):
        sides = {}
        for side in ("left", "right"):
            spec = body.get(side)
            if not isinstance(spec, dict) or "cube" not in spec:
                raise HTTPException(422, f"{side} must be {{cube, coord}}")
            cube, _ = store.get_cube(spec["cube"])
            coord = _decode_coord(cube, spec.get("coord", "__root__"))
            sides[side] = discovery.discover_ocdfg(materialize_cell(cube, coord))
        diff = discovery.compare_models(sides["left"], sides["right"])
        return discovery.diff_to_json(diff)

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


app = create_app()
