"""Deterministic synthetic datasets for desk-scale verification.

Each image is an ignore-labeled canvas with one axis-aligned rectangle per
chosen category, each confined to its own horizontal band so rectangles
never overlap and pixel counts equal rectangle areas exactly. The
"prediction" shifts every rectangle horizontally by a known offset, which
makes IoU a closed-form function of the rectangle width and the shift:

    iou = 100 * (w - dx) / (w + dx)   for dx < w, else 0.

Fixed content:
  * image 0 ("calibration"): a single 40x20 road rectangle at (0,0),
    prediction shifted +20 px, so IoU is exactly 100/3.
  * image 1 ("perfect"): prediction equals the given mask.
  * images 2..n-1: a building rectangle whose width grows with the image
    index under a fixed shift (size and IoU positively correlated), a pole
    rectangle whose target IoU falls as its size grows (negatively
    correlated), and 1..4 extra random categories; the last image also
    carries a rectangle present only in the prediction.

Every byte of output is a pure function of (seed, n_images, width, height).
Ground-truth geometry is written to truth.json next to the manifest.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .ingest import DatasetManifest, load_manifest, save_label_map, save_rgb, save_weight_field
from .model import CategoryTable, IGNORE_ID, LabelMap, RgbImage, WeightField, default_category_table

MIN_WIDTH = 128
MIN_HEIGHT = 64
N_BANDS = 8

CALIBRATION_CATEGORY = 0  # road
POSITIVE_TREND_CATEGORY = 2  # building: IoU grows with size
NEGATIVE_TREND_CATEGORY = 5  # pole: IoU falls as size grows
PERFECT_CATEGORIES = (0, 10, 13)  # road, sky, car
EXTRA_CANDIDATES = tuple(
    c for c in range(19) if c not in (CALIBRATION_CATEGORY, POSITIVE_TREND_CATEGORY, NEGATIVE_TREND_CATEGORY)
)


def rect_iou_percent(w: int, dx: int) -> float:
    """IoU of a w-wide rectangle against itself shifted dx pixels sideways."""
    if dx >= w:
        return 0.0
    return 100.0 * (w - dx) / (w + dx)


def _image_id(idx: int) -> str:
    return f"img_{idx:04d}"


def _base_image(width: int, height: int) -> np.ndarray:
    xs = (np.arange(width) * 255 // max(width - 1, 1)).astype(np.uint8)
    ys = (np.arange(height) * 255 // max(height - 1, 1)).astype(np.uint8)
    img = np.empty((height, width, 3), dtype=np.uint8)
    img[:, :, 0] = xs[None, :]
    img[:, :, 1] = ys[:, None]
    img[:, :, 2] = 128
    return img


def _paint_rect(canvas: np.ndarray, rect: tuple[int, int, int, int], value) -> None:
    x, y, w, h = rect
    canvas[y : y + h, x : x + w] = value


def _bump_field(width: int, height: int, rect: tuple[int, int, int, int]) -> WeightField:
    """Radial Gaussian bump peaking at 1.0 on the rectangle center."""
    x, y, w, h = rect
    cx = x + (w - 1) / 2.0
    cy = y + (h - 1) / 2.0
    sigma = max(w, h) / 2.0
    xs = np.arange(width, dtype=np.float64) - cx
    ys = np.arange(height, dtype=np.float64) - cy
    d2 = xs[None, :] ** 2 + ys[:, None] ** 2
    return WeightField(np.exp(-d2 / (2.0 * sigma * sigma)).astype(np.float32))


def _band_bounds(band: int, height: int) -> tuple[int, int]:
    band_h = height // N_BANDS
    return band * band_h, band_h


def generate_fixtures(
    seed: int,
    n_images: int,
    out_dir: str | Path,
    width: int = 1024,
    height: int = 512,
    categories: CategoryTable | None = None,
) -> DatasetManifest:
    """Write a synthetic dataset under out_dir and return its loaded manifest."""
    if width < MIN_WIDTH or height < MIN_HEIGHT:
        raise ValueError(f"fixture images must be at least {MIN_WIDTH}x{MIN_HEIGHT}")
    if n_images < 0:
        raise ValueError("n_images must be nonnegative")
    table = categories if categories is not None else default_category_table()
    out_dir = Path(out_dir)
    for sub in ("images", "given", "pred"):
        (out_dir / sub).mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(seed)
    n_scheduled = max(n_images - 2, 0)
    entries = []
    truth_images = []

    for idx in range(n_images):
        image_id = _image_id(idx)
        given = np.full((height, width), IGNORE_ID, dtype=np.uint8)
        pred = np.full((height, width), IGNORE_ID, dtype=np.uint8)
        rects: dict[int, dict] = {}
        pred_only = None

        if idx == 0:
            rect = (0, 0, 40, 20)
            dx = 20
            _paint_rect(given, rect, CALIBRATION_CATEGORY)
            _paint_rect(pred, (rect[0] + dx, rect[1], rect[2], rect[3]), CALIBRATION_CATEGORY)
            rects[CALIBRATION_CATEGORY] = {"rect": rect, "dx": dx}
        elif idx == 1:
            for band, cid in zip((1, 3, 5), PERFECT_CATEGORIES):
                top, band_h = _band_bounds(band, height)
                rect = (width // 5, top + 2, width // 4, band_h - 4)
                _paint_rect(given, rect, cid)
                rects[cid] = {"rect": rect, "dx": 0}
            pred = given.copy()
        else:
            j = idx - 2
            frac = j / max(n_scheduled - 1, 1)
            band_h = height // N_BANDS

            # positive trend: fixed shift, growing width
            w_pos = width // 8 + round(frac * (width // 2 - width // 8))
            dx_pos = max(2, width // 32)
            top, _ = _band_bounds(1, height)
            rect = (4, top + 2, w_pos, band_h - 4)
            _paint_rect(given, rect, POSITIVE_TREND_CATEGORY)
            _paint_rect(pred, (rect[0] + dx_pos, rect[1], rect[2], rect[3]), POSITIVE_TREND_CATEGORY)
            rects[POSITIVE_TREND_CATEGORY] = {"rect": rect, "dx": dx_pos}

            # negative trend: width grows while the target IoU falls
            w_neg = width // 8 + round(frac * (width // 2 - width // 8))
            target = 85.0 - frac * 60.0
            dx_neg = max(1, round(w_neg * (100.0 - target) / (100.0 + target)))
            top, _ = _band_bounds(2, height)
            rect = (4, top + 2, w_neg, band_h - 4)
            _paint_rect(given, rect, NEGATIVE_TREND_CATEGORY)
            _paint_rect(pred, (rect[0] + dx_neg, rect[1], rect[2], rect[3]), NEGATIVE_TREND_CATEGORY)
            rects[NEGATIVE_TREND_CATEGORY] = {"rect": rect, "dx": dx_neg}

            n_extra = int(rng.integers(1, 5))
            extra_ids = rng.choice(EXTRA_CANDIDATES, size=n_extra, replace=False)
            for band, cid in zip((3, 4, 5, 6), extra_ids):
                cid = int(cid)
                top, _ = _band_bounds(band, height)
                h = int(rng.integers(band_h // 2, band_h - 1))
                y0 = top + int(rng.integers(0, band_h - h))
                w = int(rng.integers(width // 8, width // 4 + 1))
                dx = int(rng.integers(0, w + 1))
                x0 = int(rng.integers(0, width - w - dx + 1))
                rect = (x0, y0, w, h)
                _paint_rect(given, rect, cid)
                _paint_rect(pred, (x0 + dx, y0, w, h), cid)
                rects[cid] = {"rect": rect, "dx": dx}

            if idx == n_images - 1:
                unused = [c for c in EXTRA_CANDIDATES if c not in rects]
                cid = int(rng.choice(unused))
                top, _ = _band_bounds(7, height)
                rect = (width // 3, top + 2, width // 5, band_h - 4)
                _paint_rect(pred, rect, cid)
                pred_only = {"category": table.name_for_id(cid), "rect": list(rect)}

        image = _base_image(width, height)
        for cid, info in rects.items():
            x, y, w, h = info["rect"]
            color = np.array(table.color_for_id(cid), dtype=np.uint16)
            region = image[y : y + h, x : x + w].astype(np.uint16)
            image[y : y + h, x : x + w] = ((region + color) // 2).astype(np.uint8)

        save_rgb(RgbImage(image), out_dir / "images" / f"{image_id}.png")
        save_label_map(LabelMap(given), out_dir / "given" / f"{image_id}.png")
        save_label_map(LabelMap(pred), out_dir / "pred" / f"{image_id}.png")
        for cid, info in rects.items():
            field = _bump_field(width, height, info["rect"])
            name = table.name_for_id(cid)
            save_weight_field(field, out_dir / "weights" / name / f"{image_id}.wgt")

        entries.append(
            {
                "image_id": image_id,
                "image": f"images/{image_id}.png",
                "given": f"given/{image_id}.png",
                "pred": f"pred/{image_id}.png",
                "weights": "weights",
            }
        )
        truth_images.append(
            {
                "image_id": image_id,
                "categories": {
                    table.name_for_id(cid): {
                        "rect": list(info["rect"]),
                        "shift_x": info["dx"],
                        "size_pixels": info["rect"][2] * info["rect"][3],
                        "iou_percent": 100.0 if idx == 1 else rect_iou_percent(info["rect"][2], info["dx"]),
                    }
                    for cid, info in rects.items()
                },
                "pred_only": pred_only,
            }
        )

    manifest_doc = {"root": ".", "entries": entries}
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest_doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    truth_doc = {
        "seed": seed,
        "n_images": n_images,
        "width": width,
        "height": height,
        "images": truth_images,
    }
    (out_dir / "truth.json").write_text(
        json.dumps(truth_doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return load_manifest(out_dir / "manifest.json")


def load_truth(out_dir: str | Path) -> dict:
    return json.loads((Path(out_dir) / "truth.json").read_text(encoding="utf-8"))
