"""Read-only HTTP API over a loaded dataset.

The mask table and per-image occupancy records are computed once at
startup; composites and mask renders are produced lazily and memoized in
a bounded LRU keyed on their full parameter tuple, so repeated requests
return byte-identical payloads. No endpoint mutates state.
"""

from __future__ import annotations

import logging
import threading
import time
from collections import OrderedDict

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import analytics, compositor, metrics
from .colormaps import BUILTIN_COLORMAPS, colormap_names
from .errors import (
    CompositeParamError,
    OutOfBoundsError,
    SegscopeError,
    UnknownCategoryError,
)
from .ingest import (
    DatasetManifest,
    load_label_map,
    load_rgb,
    load_weight_field,
    png_size,
    weight_field_path,
)
from .model import CategoryTable, CompositeParams, default_category_table

log = logging.getLogger("segscope.server")

API_PREFIX = "/api/v1"


class _Lru:
    """Thread-safe bounded mapping; inserts evict the least recently used key."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._items: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key not in self._items:
                return None
            self._items.move_to_end(key)
            return self._items[key]

    def put(self, key, value):
        with self._lock:
            self._items[key] = value
            self._items.move_to_end(key)
            while len(self._items) > self.capacity:
                self._items.popitem(last=False)


class SessionState:
    """Immutable dataset view shared by all requests; caches are additive only."""

    def __init__(
        self,
        manifest: DatasetManifest,
        categories: CategoryTable | None = None,
        size: tuple[int, int] | None = None,
    ):
        self.manifest = manifest
        self.categories = categories if categories is not None else default_category_table()
        self.size = size

        t0 = time.monotonic()
        self.mask_table = metrics.build_mask_table(manifest, size)
        self.occupancy: dict[str, list] = {}
        for entry in manifest.entries:
            given = load_label_map(entry.given_path)
            pred = load_label_map(entry.pred_path)
            self.occupancy[entry.image_id] = metrics.occupancy_table(entry.image_id, given, pred)
        log.info(
            "precomputed %d mask rows and occupancy for %d images in %.3fs",
            len(self.mask_table),
            len(manifest.entries),
            time.monotonic() - t0,
        )

        self._rasters = _Lru(capacity=32)
        self._composites = _Lru(capacity=128)
        self._mask_renders = _Lru(capacity=128)

    def entry(self, image_id: str):
        try:
            return self.manifest.entry(image_id)
        except KeyError:
            raise HTTPException(404, f"unknown image {image_id!r}") from None

    def image(self, image_id: str):
        key = ("image", image_id)
        img = self._rasters.get(key)
        if img is None:
            img = load_rgb(self.entry(image_id).image_path)
            self._rasters.put(key, img)
        return img

    def mask(self, image_id: str, which: str):
        key = ("mask", image_id, which)
        m = self._rasters.get(key)
        if m is None:
            entry = self.entry(image_id)
            path = entry.given_path if which == "given" else entry.pred_path
            m = load_label_map(path)
            self._rasters.put(key, m)
        return m

    def weights(self, image_id: str, category_name: str):
        try:
            self.categories.id_for_name(category_name)
        except UnknownCategoryError:
            raise HTTPException(404, f"unknown category {category_name!r}") from None
        key = ("weights", image_id, category_name)
        w = self._rasters.get(key)
        if w is None:
            path = weight_field_path(self.entry(image_id), category_name)
            if path is None or not path.is_file():
                raise HTTPException(
                    404, f"no weight field for image {image_id!r}, category {category_name!r}"
                )
            w = load_weight_field(path)
            self._rasters.put(key, w)
        return w

    def composite_png(self, image_id: str, category: str, colormap: str, a1: float, a2: float) -> bytes:
        key = (image_id, category, colormap, a1, a2)
        png = self._composites.get(key)
        if png is None:
            image = self.image(image_id)
            field = self.weights(image_id, category)
            params = CompositeParams(alpha1=a1, alpha2=a2, colormap=colormap)
            png = compositor.encode_png(compositor.superimpose(image, field, params))
            self._composites.put(key, png)
        return png

    def photo_png(self, image_id: str) -> bytes:
        key = ("photo", image_id)
        png = self._composites.get(key)
        if png is None:
            png = self.entry(image_id).image_path.read_bytes()
            self._composites.put(key, png)
        return png

    def mask_render_png(self, image_id: str, which: str, selected: frozenset[int]) -> bytes:
        key = (image_id, which, selected)
        png = self._mask_renders.get(key)
        if png is None:
            mask = self.mask(image_id, which)
            png = compositor.encode_png(
                compositor.render_mask_rgb(mask, self.categories, set(selected))
            )
            self._mask_renders.put(key, png)
        return png


def _series_payload(series: analytics.ScatterSeries, table: CategoryTable) -> dict:
    return {
        "category": table.name_for_id(series.category),
        "category_id": series.category,
        "x_meaning": series.x_meaning,
        "y_meaning": series.y_meaning,
        "points": [[x, y] for x, y in series.points],
    }


def create_app(state: SessionState, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="segscope", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins if cors_origins is not None else ["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    table = state.categories

    def parse_selected(selected: str | None) -> list[int]:
        """None selects every category; an empty string selects none."""
        if selected is None:
            return [e.id for e in table.evaluable]
        ids = []
        for name in selected.split(","):
            name = name.strip()
            if not name:
                continue
            try:
                ids.append(table.id_for_name(name))
            except UnknownCategoryError:
                raise HTTPException(400, f"unknown category {name!r} in selected") from None
        return ids

    @app.get(API_PREFIX + "/categories")
    def categories():
        return [
            {"id": e.id, "name": e.name, "color": list(e.color)} for e in table.evaluable
        ]

    @app.get(API_PREFIX + "/colormaps")
    def colormaps():
        return [
            {
                "name": cm.name,
                "kind": cm.kind,
                "bins": cm.bins,
                "lut": cm.lut.tolist(),
            }
            for cm in BUILTIN_COLORMAPS.values()
        ]

    @app.get(API_PREFIX + "/image/{image_id}/photo")
    def photo(image_id: str):
        png = state.photo_png(image_id)
        return Response(content=png, media_type="image/png")

    @app.get(API_PREFIX + "/images")
    def images():
        out = []
        for entry in state.manifest.entries:
            weight_cats = []
            if entry.weights_dir is not None and entry.weights_dir.is_dir():
                for e in table.evaluable:
                    p = weight_field_path(entry, e.name)
                    if p is not None and p.is_file():
                        weight_cats.append(e.name)
            width, height = png_size(entry.image_path)
            out.append(
                {
                    "image_id": entry.image_id,
                    "width": width,
                    "height": height,
                    "weight_categories": weight_cats,
                }
            )
        return out

    @app.get(API_PREFIX + "/scatter/overview")
    def scatter_overview():
        series = analytics.series_for_task1(state.mask_table)
        return {"series": [_series_payload(s, table) for s in series]}

    @app.get(API_PREFIX + "/scatter/detail")
    def scatter_detail(category: str):
        try:
            cid = table.id_for_name(category)
        except UnknownCategoryError:
            raise HTTPException(404, f"unknown category {category!r}") from None
        (series,) = analytics.series_for_task1(state.mask_table, cid)
        return _series_payload(series, table)

    @app.get(API_PREFIX + "/image/{image_id}/composite")
    def composite(
        image_id: str,
        category: str,
        colormap: str = "turbo",
        alpha1: float = 1.0,
        alpha2: float = 0.5,
    ):
        if colormap not in colormap_names():
            raise HTTPException(
                400, f"unknown colormap {colormap!r}; available: {', '.join(colormap_names())}"
            )
        try:
            png = state.composite_png(image_id, category, colormap, alpha1, alpha2)
        except CompositeParamError as exc:
            raise HTTPException(400, str(exc)) from None
        return Response(content=png, media_type="image/png")

    @app.get(API_PREFIX + "/image/{image_id}/weight")
    def weight(image_id: str, category: str, x: int, y: int):
        field = state.weights(image_id, category)
        try:
            value = compositor.weight_at(field, x, y)
        except OutOfBoundsError as exc:
            raise HTTPException(400, str(exc)) from None
        return {"weight": value}

    @app.get(API_PREFIX + "/image/{image_id}/maskinfo")
    def maskinfo(image_id: str, which: str, x: int, y: int):
        if which not in ("given", "pred"):
            raise HTTPException(400, f"which must be 'given' or 'pred', got {which!r}")
        mask = state.mask(image_id, which)
        try:
            _, name = compositor.category_at(mask, table, x, y)
        except OutOfBoundsError as exc:
            raise HTTPException(400, str(exc)) from None
        return {"category": name}

    @app.get(API_PREFIX + "/image/{image_id}/maskrender")
    def maskrender(image_id: str, which: str, selected: str | None = None):
        if which not in ("given", "pred"):
            raise HTTPException(400, f"which must be 'given' or 'pred', got {which!r}")
        ids = frozenset(parse_selected(selected))
        state.entry(image_id)
        png = state.mask_render_png(image_id, which, ids)
        return Response(content=png, media_type="image/png")

    @app.get(API_PREFIX + "/image/{image_id}/occupancy")
    def occupancy(image_id: str, selected: str | None = None):
        state.entry(image_id)
        ids = set(parse_selected(selected))
        records = state.occupancy[image_id]
        kept = [r for r in records if r.category in ids]
        groups = analytics.series_for_task3(records, ids)
        scatter = {
            plot: [
                {"category": table.name_for_id(s.category), "x": s.points[0][0], "y": s.points[0][1]}
                for s in series_list
            ]
            for plot, series_list in groups.items()
        }
        return {
            "records": [
                {
                    "image_id": r.image_id,
                    "category": table.name_for_id(r.category),
                    "category_id": r.category,
                    "given_occupancy_pct": r.given_occupancy_pct,
                    "pred_occupancy_pct": r.pred_occupancy_pct,
                    "iou_percent": r.iou_percent,
                }
                for r in kept
            ],
            "scatter": scatter,
        }

    @app.exception_handler(SegscopeError)
    def _domain_error(_request, exc: SegscopeError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    return app
