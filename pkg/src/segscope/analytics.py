"""Scatter statistics and validation scoring.

Correlations back the size-vs-IoU exploration; the occlusion score is a
concrete mark-overlap stand-in for a perception-of-density metric; the
score_* functions implement the lab-study weighted averages.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateInputError, ZeroWeightSumError
from .metrics import MaskTable
from .model import CategoryTable, OccupancyRecord, check_category_id

AXIS_MEANINGS = ("size_pixels", "iou_percent", "given_occupancy", "pred_occupancy")

CONFIDENCE_VALUES = {
    "highly_confident": 100.0,
    "confident": 80.0,
    "somewhat_confident": 60.0,
    "not_confident": 40.0,
    "not_confident_at_all": 0.0,
}


@dataclass(frozen=True)
class ScatterSeries:
    category: int
    points: list[tuple[float, float]]
    x_meaning: str
    y_meaning: str

    def __post_init__(self):
        check_category_id(self.category)
        if self.x_meaning not in AXIS_MEANINGS or self.y_meaning not in AXIS_MEANINGS:
            raise ValueError(f"axis meanings must be one of {AXIS_MEANINGS}")
        for x, y in self.points:
            if not (np.isfinite(x) and np.isfinite(y)):
                raise ValueError(f"non-finite point ({x}, {y})")


@dataclass(frozen=True)
class ScoreWeights:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    delta: float = 1.0

    def __post_init__(self):
        for w in (self.alpha, self.beta, self.gamma, self.delta):
            if w < 0 or not np.isfinite(w):
                raise ValueError(f"weights must be finite and nonnegative, got {w}")


@dataclass(frozen=True)
class LabStudyRecord:
    accuracy: float  # [0, 100]
    time_norm: float  # [0, 100], higher = faster
    clicks_norm: float  # [0, 1]
    confidence: float  # [0, 100]

    def __post_init__(self):
        for v, hi, label in (
            (self.accuracy, 100.0, "accuracy"),
            (self.time_norm, 100.0, "time_norm"),
            (self.clicks_norm, 1.0, "clicks_norm"),
            (self.confidence, 100.0, "confidence"),
        ):
            if not 0.0 <= v <= hi:
                raise ValueError(f"{label} out of range [0, {hi}]: {v}")


def _check_points(points) -> tuple[np.ndarray, np.ndarray]:
    if len(points) < 2:
        raise DegenerateInputError(f"need at least 2 points, got {len(points)}")
    xs = np.asarray([p[0] for p in points], dtype=np.float64)
    ys = np.asarray([p[1] for p in points], dtype=np.float64)
    if np.allclose(xs, xs[0], rtol=0.0, atol=0.0) or np.allclose(ys, ys[0], rtol=0.0, atol=0.0):
        raise DegenerateInputError("zero variance in x or y")
    return xs, ys


def pearson_r(points: list[tuple[float, float]]) -> float:
    """Sample Pearson correlation coefficient."""
    xs, ys = _check_points(points)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    return float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))


def _average_ranks(v: np.ndarray) -> np.ndarray:
    # ties receive the average of the ranks they span
    _, inverse, counts = np.unique(v, return_inverse=True, return_counts=True)
    below = np.concatenate(([0], np.cumsum(counts)))[:-1]
    return below[inverse] + (counts[inverse] + 1) / 2.0


def spearman_r(points: list[tuple[float, float]]) -> float:
    """Pearson correlation of the average-tie ranks of x and y."""
    xs, ys = _check_points(points)
    rx = _average_ranks(xs)
    ry = _average_ranks(ys)
    return pearson_r(list(zip(rx, ry)))


def occlusion_score(
    points: list[tuple[float, float]],
    mark_radius: float,
    viewport: tuple[float, float],
) -> float:
    """Fraction of marks whose center lies within 2*mark_radius of another.

    Points are data-space coordinates; each axis is linearly scaled from
    its data extent onto the viewport (the default axis scaling of the
    scatter views). A degenerate extent collapses that axis to 0.
    """
    if len(points) == 0:
        raise DegenerateInputError("occlusion score needs at least one point")
    vw, vh = viewport
    if vw <= 0 or vh <= 0:
        raise ValueError(f"viewport must be positive, got {viewport}")
    xs = np.asarray([p[0] for p in points], dtype=np.float64)
    ys = np.asarray([p[1] for p in points], dtype=np.float64)

    def scale(v: np.ndarray, extent: float) -> np.ndarray:
        lo, hi = v.min(), v.max()
        if hi == lo:
            return np.zeros_like(v)
        return (v - lo) / (hi - lo) * extent

    px = scale(xs, vw)
    py = scale(ys, vh)
    if len(points) == 1:
        return 0.0
    d2 = (px[:, None] - px[None, :]) ** 2 + (py[:, None] - py[None, :]) ** 2
    np.fill_diagonal(d2, np.inf)
    overlapped = d2.min(axis=1) < (2.0 * mark_radius) ** 2
    return float(np.count_nonzero(overlapped) / len(points))


def score_task1(a: float, t: float, w: ScoreWeights) -> float:
    """Weighted average of accuracy and time: (a*alpha + t*beta) / (alpha + beta)."""
    denom = w.alpha + w.beta
    if denom == 0:
        raise ZeroWeightSumError("alpha + beta must be positive")
    # clamp away float residue; the exact value lies in [0, 100]
    return min(max((a * w.alpha + t * w.beta) / denom, 0.0), 100.0)


def score_task2(r: LabStudyRecord, w: ScoreWeights) -> float:
    """Weighted average of accuracy, time, inverted clicks, and confidence.

    The click term enters as (1 - m) * 100 so that all four terms share
    the 0..100 scale.
    """
    denom = w.alpha + w.beta + w.gamma + w.delta
    if denom == 0:
        raise ZeroWeightSumError("alpha + beta + gamma + delta must be positive")
    s = (
        r.accuracy * w.alpha
        + r.time_norm * w.beta
        + (1.0 - r.clicks_norm) * 100.0 * w.gamma
        + r.confidence * w.delta
    ) / denom
    return min(max(s, 0.0), 100.0)


def normalize_time(t_raw: float, t_min: float, t_max: float) -> float:
    """Map a raw answer time onto [0,100] with faster answers scoring higher."""
    if t_max <= t_min:
        raise ValueError("t_max must exceed t_min")
    frac = (t_raw - t_min) / (t_max - t_min)
    return 100.0 * (1.0 - min(max(frac, 0.0), 1.0))


def confidence_value(label: str) -> float:
    try:
        return CONFIDENCE_VALUES[label]
    except KeyError:
        raise ValueError(
            f"unknown confidence label {label!r}; expected one of {sorted(CONFIDENCE_VALUES)}"
        ) from None


def series_for_task1(
    table: MaskTable, category: int | None = None
) -> list[ScatterSeries]:
    """Size-vs-IoU series: one per present category (overview) or one filtered
    series (detail). A detail request for a category with no rows yields an
    empty series, not an error."""
    if category is not None:
        check_category_id(category)
        points = [
            (float(r.size_pixels), r.iou_percent) for r in table.rows if r.category == category
        ]
        return [ScatterSeries(category, points, "size_pixels", "iou_percent")]
    by_cat: dict[int, list[tuple[float, float]]] = {}
    for r in table.rows:
        by_cat.setdefault(r.category, []).append((float(r.size_pixels), r.iou_percent))
    return [
        ScatterSeries(cid, pts, "size_pixels", "iou_percent")
        for cid, pts in sorted(by_cat.items())
    ]


def series_for_task3(
    records: list[OccupancyRecord], selected: set[int]
) -> dict[str, list[ScatterSeries]]:
    """The three per-image correlation point sets, restricted to `selected`:
    given vs pred occupancy, given occupancy vs IoU, pred occupancy vs IoU."""
    for cid in selected:
        check_category_id(cid)
    kept = [r for r in records if r.category in selected]
    return {
        "given_vs_pred": [
            ScatterSeries(
                r.category,
                [(r.given_occupancy_pct, r.pred_occupancy_pct)],
                "given_occupancy",
                "pred_occupancy",
            )
            for r in kept
        ],
        "given_vs_iou": [
            ScatterSeries(
                r.category,
                [(r.given_occupancy_pct, r.iou_percent)],
                "given_occupancy",
                "iou_percent",
            )
            for r in kept
        ],
        "pred_vs_iou": [
            ScatterSeries(
                r.category,
                [(r.pred_occupancy_pct, r.iou_percent)],
                "pred_occupancy",
                "iou_percent",
            )
            for r in kept
        ],
    }


def write_correlation_csv(
    table: MaskTable, categories: CategoryTable, path: str | Path
) -> None:
    """Per-category Pearson/Spearman over the size-vs-IoU points.

    Degenerate series (under 2 points or zero variance) emit empty
    correlation fields rather than failing the export.
    """
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["category", "n_points", "pearson_r", "spearman_r"])
        for series in series_for_task1(table):
            name = categories.name_for_id(series.category)
            try:
                pr = f"{pearson_r(series.points):.6f}"
                sr = f"{spearman_r(series.points):.6f}"
            except DegenerateInputError:
                pr = sr = ""
            writer.writerow([name, len(series.points), pr, sr])
