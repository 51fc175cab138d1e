"""IoU, object sizes, the dataset-wide mask table, and per-image occupancy.

Per-image statistics are computed with bulk raster arithmetic (one
bincount pass per mask plus one over the agreement pixels) instead of
per-category pixel loops.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyUnionError, ManifestError, UnknownCategoryError
from .ingest import DatasetManifest, load_label_map, resize_label_map
from .model import (
    CategoryTable,
    IGNORE_ID,
    LabelMap,
    MaskRecord,
    N_CLASSES,
    OccupancyRecord,
    check_category_id,
    require_same_size,
)


@dataclass(frozen=True)
class MaskTable:
    """At most one row per (image_id, category), in deterministic order."""

    rows: list[MaskRecord]

    def __len__(self) -> int:
        return len(self.rows)

    def for_category(self, cid: int) -> list[MaskRecord]:
        return [r for r in self.rows if r.category == cid]


def _class_counts(m: LabelMap) -> np.ndarray:
    return np.bincount(m.labels.ravel(), minlength=256)


def _pair_counts(given: LabelMap, pred: LabelMap) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-id pixel counts in given, in pred, and in their agreement set."""
    g = given.labels.ravel()
    p = pred.labels.ravel()
    counts_g = np.bincount(g, minlength=256)
    counts_p = np.bincount(p, minlength=256)
    counts_inter = np.bincount(g[g == p], minlength=256)
    return counts_g, counts_p, counts_inter


def iou_percent(given: LabelMap, pred: LabelMap, c: int) -> float:
    """100 * |given_c ∩ pred_c| / |given_c ∪ pred_c| for category c."""
    require_same_size(given, pred, "given and pred masks")
    check_category_id(c)
    if c == IGNORE_ID:
        raise UnknownCategoryError("IoU is undefined for the ignore label")
    counts_g, counts_p, counts_inter = _pair_counts(given, pred)
    inter = int(counts_inter[c])
    union = int(counts_g[c]) + int(counts_p[c]) - inter
    if union == 0:
        raise EmptyUnionError(f"category {c} absent from both masks")
    return 100.0 * inter / union


def object_size(m: LabelMap, c: int) -> int:
    """Count of pixels labeled c (0 when absent)."""
    check_category_id(c)
    return int(np.count_nonzero(m.labels == c))


def image_mask_records(
    image_id: str, given: LabelMap, pred: LabelMap
) -> list[MaskRecord]:
    """One record per non-ignore category present in the given mask."""
    require_same_size(given, pred, "given and pred masks")
    counts_g, counts_p, counts_inter = _pair_counts(given, pred)
    records = []
    for c in range(N_CLASSES):
        size = int(counts_g[c])
        if size == 0:
            continue
        inter = int(counts_inter[c])
        union = size + int(counts_p[c]) - inter
        records.append(
            MaskRecord(
                image_id=image_id,
                category=c,
                iou_percent=100.0 * inter / union,
                size_pixels=size,
            )
        )
    return records


def build_mask_table(
    ds: DatasetManifest, size: tuple[int, int] | None = None
) -> MaskTable:
    """Scan every manifest entry's given/pred pair into the mask table.

    `size` is the working (width, height) resolution; masks are
    nearest-neighbor resized to it before counting, so object sizes are
    reported at the working resolution. None keeps native resolution.
    Rows are ordered image_id lexicographic, then category id ascending.
    """
    rows: list[MaskRecord] = []
    for entry in ds.entries:
        try:
            given = load_label_map(entry.given_path)
            pred = load_label_map(entry.pred_path)
            if size is not None:
                given = resize_label_map(given, size[0], size[1])
                pred = resize_label_map(pred, size[0], size[1])
            rows.extend(image_mask_records(entry.image_id, given, pred))
        except Exception as exc:
            raise ManifestError(f"entry {entry.image_id!r}: {exc}") from exc
    rows.sort(key=lambda r: (r.image_id, r.category))
    return MaskTable(rows)


def occupancy_table(
    image_id: str, given: LabelMap, pred: LabelMap
) -> list[OccupancyRecord]:
    """Occupancy percentages and IoU per non-ignore category in given ∪ pred.

    Occupancy is normalized by the full pixel count (ignore included),
    so per-mask occupancies plus the ignore fraction sum to 100.
    """
    require_same_size(given, pred, "given and pred masks")
    total = given.width * given.height
    counts_g, counts_p, counts_inter = _pair_counts(given, pred)
    records = []
    for c in range(N_CLASSES):
        ng, np_, ni = int(counts_g[c]), int(counts_p[c]), int(counts_inter[c])
        union = ng + np_ - ni
        if union == 0:
            continue
        records.append(
            OccupancyRecord(
                image_id=image_id,
                category=c,
                given_occupancy_pct=100.0 * ng / total,
                pred_occupancy_pct=100.0 * np_ / total,
                iou_percent=100.0 * ni / union,
            )
        )
    return records


def write_mask_table_csv(table: MaskTable, categories: CategoryTable, path: str | Path) -> None:
    """CSV export: image_id,category,iou_percent,size_pixels; IoU to 6 decimals."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["image_id", "category", "iou_percent", "size_pixels"])
        for r in table.rows:
            writer.writerow(
                [r.image_id, categories.name_for_id(r.category), f"{r.iou_percent:.6f}", r.size_pixels]
            )
