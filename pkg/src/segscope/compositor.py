"""Saliency superimposition, palette mask rendering, and pixel point queries.

All operations are pure functions of their inputs, so renders of different
images can run concurrently and outputs are cacheable.
"""

from __future__ import annotations

import io

import numpy as np
from PIL import Image

from .colormaps import Colormap, colormap_apply_field, get_colormap
from .errors import OutOfBoundsError
from .model import (
    CategoryTable,
    CompositeParams,
    IGNORE_ID,
    LabelMap,
    RgbImage,
    WeightField,
    check_category_id,
    require_same_size,
)


def superimpose(i: RgbImage, w: WeightField, p: CompositeParams) -> RgbImage:
    """Blend the colormapped weight layer over the dimmed image.

    Back-to-front over-compositing onto an opaque black backdrop:
    out = colormap(w) * alpha2 + i * alpha1 * (1 - alpha2), per channel,
    rounded half-up into 0..255.
    """
    require_same_size(i, w, "image and weight field")
    cm = p.colormap if isinstance(p.colormap, Colormap) else get_colormap(p.colormap)
    layer = colormap_apply_field(cm, w.weights).astype(np.float64)
    base = i.pixels.astype(np.float64)
    out = layer * p.alpha2 + base * (p.alpha1 * (1.0 - p.alpha2))
    return RgbImage(np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8))


def weight_at(w: WeightField, x: int, y: int) -> float:
    """Exact stored weight at pixel (x, y)."""
    if not (0 <= x < w.width and 0 <= y < w.height):
        raise OutOfBoundsError(
            f"({x}, {y}) outside weight field of size {w.width}x{w.height}"
        )
    return float(w.weights[y, x])


def category_at(m: LabelMap, table: CategoryTable, x: int, y: int) -> tuple[int, str]:
    """Label id and resolved name at pixel (x, y); labels are never blended."""
    if not (0 <= x < m.width and 0 <= y < m.height):
        raise OutOfBoundsError(f"({x}, {y}) outside label map of size {m.width}x{m.height}")
    cid = int(m.labels[y, x])
    return cid, table.name_for_id(cid)


def render_mask_rgb(m: LabelMap, table: CategoryTable, selected: set[int]) -> RgbImage:
    """Palette-color pixels of selected categories; everything else black.

    Ignore pixels always render black, even if 255 is passed in `selected`.
    """
    for cid in selected:
        check_category_id(cid)
    palette = table.palette_array()
    keep = np.zeros(256, dtype=bool)
    for cid in selected:
        keep[cid] = True
    keep[IGNORE_ID] = False
    lut = np.where(keep[:, None], palette, 0).astype(np.uint8)
    return RgbImage(lut[m.labels])


def encode_png(i: RgbImage) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(i.pixels, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()
