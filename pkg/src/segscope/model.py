"""Core domain types: category registry, label maps, images, weight fields, records.

All types here are plain containers over validated numpy arrays or tuples.
Arrays are frozen (writeable=False) after construction so instances can be
shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    CompositeParamError,
    DimensionMismatchError,
    InvalidLabelError,
    UnknownCategoryError,
)

IGNORE_ID = 255
N_CLASSES = 19

# ids 0..18 plus the reserved ignore label
VALID_IDS = frozenset(range(N_CLASSES)) | {IGNORE_ID}


def is_valid_category_id(cid: int) -> bool:
    return cid in VALID_IDS


def check_category_id(cid: int) -> int:
    """Return cid unchanged, or raise for anything outside {0..18, 255}."""
    if not isinstance(cid, (int, np.integer)) or cid not in VALID_IDS:
        raise UnknownCategoryError(f"invalid category id {cid!r}; expected 0..18 or 255")
    return int(cid)


@dataclass(frozen=True)
class CategoryEntry:
    id: int
    name: str
    color: tuple[int, int, int]


class CategoryTable:
    """Registry of the 19 evaluable classes plus the ignore label.

    Loaded from a config file (one `<id>,<name>,<r>,<g>,<b>` record per
    line) rather than hard-coded, so other datasets can swap palettes.
    """

    def __init__(self, entries: list[CategoryEntry]):
        non_ignore = [e for e in entries if e.id != IGNORE_ID]
        if len(non_ignore) != N_CLASSES:
            raise ValueError(
                f"category table needs exactly {N_CLASSES} non-ignore entries, got {len(non_ignore)}"
            )
        names = [e.name for e in entries]
        if len(set(names)) != len(names):
            raise ValueError("category names must be unique")
        ids = [e.id for e in entries]
        if len(set(ids)) != len(ids):
            raise ValueError("category ids must be unique")
        for e in entries:
            check_category_id(e.id)
            if not all(0 <= c <= 255 for c in e.color):
                raise ValueError(f"palette color out of range for {e.name!r}: {e.color}")
        self._entries = list(entries)
        if not any(e.id == IGNORE_ID for e in self._entries):
            self._entries.append(CategoryEntry(IGNORE_ID, "ignore", (0, 0, 0)))
        self._by_name = {e.name: e for e in self._entries}
        self._by_id = {e.id: e for e in self._entries}

    @property
    def entries(self) -> list[CategoryEntry]:
        """All entries in file order, ignore included."""
        return list(self._entries)

    @property
    def evaluable(self) -> list[CategoryEntry]:
        """The 19 non-ignore entries, ascending id."""
        return sorted((e for e in self._entries if e.id != IGNORE_ID), key=lambda e: e.id)

    def id_for_name(self, name: str) -> int:
        entry = self._by_name.get(name)
        if entry is None:
            raise UnknownCategoryError(f"unknown category name {name!r}")
        return entry.id

    def name_for_id(self, cid: int) -> str:
        entry = self._by_id.get(int(cid))
        if entry is None:
            raise UnknownCategoryError(f"unknown category id {cid}")
        return entry.name

    def color_for_id(self, cid: int) -> tuple[int, int, int]:
        entry = self._by_id.get(int(cid))
        if entry is None:
            raise UnknownCategoryError(f"unknown category id {cid}")
        return entry.color

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __eq__(self, other) -> bool:
        return isinstance(other, CategoryTable) and self._entries == other._entries

    def palette_array(self) -> np.ndarray:
        """256x3 uint8 lookup: row id -> palette color, zeros for unused ids."""
        lut = np.zeros((256, 3), dtype=np.uint8)
        for e in self._entries:
            lut[e.id] = e.color
        return lut


def category_by_name(table: CategoryTable, name: str) -> int:
    return table.id_for_name(name)


def load_category_table(path: str | Path) -> CategoryTable:
    entries = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected 'id,name,r,g,b', got {line!r}")
        cid = int(parts[0])
        name = parts[1]
        color = (int(parts[2]), int(parts[3]), int(parts[4]))
        entries.append(CategoryEntry(cid, name, color))
    return CategoryTable(entries)


def save_category_table(table: CategoryTable, path: str | Path) -> None:
    lines = [f"{e.id},{e.name},{e.color[0]},{e.color[1]},{e.color[2]}" for e in table.entries]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def default_category_table() -> CategoryTable:
    """The shipped Cityscapes trainId registry."""
    ref = resources.files("segscope.data") / "cityscapes_categories.txt"
    with resources.as_file(ref) as path:
        return load_category_table(path)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class LabelMap:
    """Per-pixel category raster, shape (height, width), dtype uint8."""

    def __init__(self, labels: np.ndarray):
        labels = np.ascontiguousarray(labels, dtype=np.uint8)
        if labels.ndim != 2:
            raise InvalidLabelError(f"label raster must be 2-D, got shape {labels.shape}")
        bad = (labels >= N_CLASSES) & (labels != IGNORE_ID)
        if bad.any():
            y, x = np.argwhere(bad)[0]
            raise InvalidLabelError(
                f"invalid label value {int(labels[y, x])} at (x={int(x)}, y={int(y)})"
            )
        self.labels = _freeze(labels)

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def size(self) -> tuple[int, int]:
        return (self.width, self.height)

    def present_ids(self) -> list[int]:
        """Distinct category ids in the raster, ascending, ignore included."""
        return [int(v) for v in np.unique(self.labels)]

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelMap) and np.array_equal(self.labels, other.labels)


class RgbImage:
    """8-bit RGB raster, shape (height, width, 3)."""

    def __init__(self, pixels: np.ndarray):
        pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ValueError(f"RGB raster must have shape (h, w, 3), got {pixels.shape}")
        self.pixels = _freeze(pixels)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def size(self) -> tuple[int, int]:
        return (self.width, self.height)

    def __eq__(self, other) -> bool:
        return isinstance(other, RgbImage) and np.array_equal(self.pixels, other.pixels)


class WeightField:
    """Per-pixel saliency weights in [0,1], shape (height, width), float32.

    NaNs are rejected; out-of-range and infinite values are clamped into
    [0,1] at construction.
    """

    def __init__(self, weights: np.ndarray):
        weights = np.asarray(weights, dtype=np.float32)
        if weights.ndim != 2:
            raise ValueError(f"weight raster must be 2-D, got shape {weights.shape}")
        if np.isnan(weights).any():
            raise ValueError("weight field contains NaN")
        self.weights = _freeze(np.clip(weights, 0.0, 1.0))

    @property
    def width(self) -> int:
        return self.weights.shape[1]

    @property
    def height(self) -> int:
        return self.weights.shape[0]

    @property
    def size(self) -> tuple[int, int]:
        return (self.width, self.height)


@dataclass(frozen=True)
class MaskRecord:
    """One mask-table row: a category present in an image's given mask."""

    image_id: str
    category: int
    iou_percent: float
    size_pixels: int

    def __post_init__(self):
        check_category_id(self.category)
        if not 0.0 <= self.iou_percent <= 100.0:
            raise ValueError(f"iou_percent out of range: {self.iou_percent}")
        if self.size_pixels <= 0:
            raise ValueError("size_pixels must be positive; records exist only for present categories")


@dataclass(frozen=True)
class OccupancyRecord:
    """Per-image per-category pixel occupancy in given and predicted masks."""

    image_id: str
    category: int
    given_occupancy_pct: float
    pred_occupancy_pct: float
    iou_percent: float

    def __post_init__(self):
        check_category_id(self.category)
        for v in (self.given_occupancy_pct, self.pred_occupancy_pct, self.iou_percent):
            if not 0.0 <= v <= 100.0:
                raise ValueError(f"percentage out of range: {v}")


@dataclass(frozen=True)
class CompositeParams:
    """Opacity pair and colormap for the saliency superimposition."""

    alpha1: float = 1.0
    alpha2: float = 0.5
    colormap: str = "turbo"

    def __post_init__(self):
        if not (np.isfinite(self.alpha1) and np.isfinite(self.alpha2)):
            raise CompositeParamError("alphas must be finite")
        if not 0.0 < self.alpha1 <= 1.0:
            raise CompositeParamError(f"alpha1 must be in (0, 1], got {self.alpha1}")
        if not 0.0 <= self.alpha2 <= 1.0:
            raise CompositeParamError(f"alpha2 must be in [0, 1], got {self.alpha2}")
        if not self.alpha1 > self.alpha2:
            raise CompositeParamError(
                f"alpha1 must exceed alpha2 so the image stays visible "
                f"(got alpha1={self.alpha1}, alpha2={self.alpha2})"
            )


def require_same_size(a, b, what: str = "rasters") -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"{what} differ in size: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
