"""Dataset loading: manifests, label-map and RGB PNGs, WGT1 weight fields, resizing.

Loaders share no mutable state; distinct files may be read in parallel.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import InvalidLabelError, ManifestError, WeightFormatError
from .model import LabelMap, RgbImage, WeightField

WGT1_MAGIC = b"WGT1"


@dataclass(frozen=True)
class ManifestEntry:
    image_id: str
    image_path: Path
    given_path: Path
    pred_path: Path
    weights_dir: Path | None


@dataclass(frozen=True)
class DatasetManifest:
    root: Path
    entries: list[ManifestEntry]

    def entry(self, image_id: str) -> ManifestEntry:
        for e in self.entries:
            if e.image_id == image_id:
                return e
        raise KeyError(image_id)

    def image_ids(self) -> list[str]:
        return [e.image_id for e in self.entries]


def weight_field_path(entry: ManifestEntry, category_name: str) -> Path | None:
    """Weight files live at <weights_dir>/<category_name>/<image_id>.wgt."""
    if entry.weights_dir is None:
        return None
    return entry.weights_dir / category_name / f"{entry.image_id}.wgt"


def png_size(path: Path) -> tuple[int, int]:
    """(width, height) from the PNG header, without decoding pixel data."""
    with Image.open(path) as im:
        return im.size


def load_manifest(path: str | Path) -> DatasetManifest:
    """Parse and validate a dataset manifest.

    Validation checks that image ids are unique, every referenced path
    exists, and each entry's given/pred masks match its image dimensions.
    """
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "root" not in doc or "entries" not in doc:
        raise ManifestError(f"manifest {path} must be an object with 'root' and 'entries'")

    root = Path(doc["root"])
    if not root.is_absolute():
        root = path.parent / root

    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for i, raw in enumerate(doc["entries"]):
        try:
            image_id = raw["image_id"]
            image = root / raw["image"]
            given = root / raw["given"]
            pred = root / raw["pred"]
        except (TypeError, KeyError) as exc:
            raise ManifestError(f"manifest entry #{i} is missing field {exc}") from exc
        weights = root / raw["weights"] if raw.get("weights") else None
        if image_id in seen:
            raise ManifestError(f"duplicate image_id {image_id!r}")
        seen.add(image_id)

        for label, p in (("image", image), ("given mask", given), ("pred mask", pred)):
            if not p.is_file():
                raise ManifestError(f"entry {image_id!r}: {label} file missing: {p}")
        if weights is not None and not weights.is_dir():
            raise ManifestError(f"entry {image_id!r}: weights directory missing: {weights}")

        img_size = png_size(image)
        for label, p in (("given mask", given), ("pred mask", pred)):
            mask_size = png_size(p)
            if mask_size != img_size:
                raise ManifestError(
                    f"entry {image_id!r}: {label} is {mask_size[0]}x{mask_size[1]} "
                    f"but image is {img_size[0]}x{img_size[1]}"
                )
        entries.append(ManifestEntry(image_id, image, given, pred, weights))

    return DatasetManifest(root=root, entries=entries)


def load_label_map(path: str | Path) -> LabelMap:
    """Read an 8-bit single-channel PNG of category ids."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode != "L":
                raise InvalidLabelError(f"{path}: expected 8-bit grayscale PNG, got mode {im.mode!r}")
            arr = np.asarray(im, dtype=np.uint8)
    except InvalidLabelError:
        raise
    except Exception as exc:
        raise InvalidLabelError(f"{path}: cannot decode PNG: {exc}") from exc
    try:
        return LabelMap(arr)
    except InvalidLabelError as exc:
        raise InvalidLabelError(f"{path}: {exc}") from exc


def save_label_map(m: LabelMap, path: str | Path) -> None:
    Image.fromarray(m.labels, mode="L").save(path, format="PNG")


def load_rgb(path: str | Path) -> RgbImage:
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode != "RGB":
                raise ValueError(f"{path}: expected 8-bit RGB PNG, got mode {im.mode!r}")
            arr = np.asarray(im, dtype=np.uint8)
    except ValueError:
        raise
    except Exception as exc:
        raise ValueError(f"{path}: cannot decode PNG: {exc}") from exc
    return RgbImage(arr)


def save_rgb(i: RgbImage, path: str | Path) -> None:
    Image.fromarray(i.pixels, mode="RGB").save(path, format="PNG")


def load_weight_field(path: str | Path) -> WeightField:
    """Read a WGT1 file: magic, u32le width, u32le height, then w*h f32le row-major."""
    path = Path(path)
    data = path.read_bytes()
    if len(data) < 12 or data[:4] != WGT1_MAGIC:
        raise WeightFormatError(f"{path}: bad magic {data[:4]!r}, expected {WGT1_MAGIC!r}")
    width, height = struct.unpack_from("<II", data, 4)
    expected = 12 + 4 * width * height
    if len(data) < expected:
        raise WeightFormatError(
            f"{path}: truncated payload: {len(data)} bytes, need {expected} for {width}x{height}"
        )
    floats = np.frombuffer(data, dtype="<f4", count=width * height, offset=12)
    if np.isnan(floats).any():
        idx = int(np.flatnonzero(np.isnan(floats))[0])
        raise WeightFormatError(f"{path}: NaN in payload at index {idx}")
    return WeightField(floats.reshape(height, width))


def save_weight_field(w: WeightField, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = WGT1_MAGIC + struct.pack("<II", w.width, w.height)
    payload = np.ascontiguousarray(w.weights, dtype="<f4").tobytes()
    path.write_bytes(header + payload)


def _nearest_indices(n_out: int, n_in: int) -> np.ndarray:
    # pixel-center mapping: out i samples src floor((i + 0.5) * n_in / n_out)
    idx = np.floor((np.arange(n_out) + 0.5) * n_in / n_out).astype(np.intp)
    return np.clip(idx, 0, n_in - 1)


def resize_label_map(m: LabelMap, width: int, height: int) -> LabelMap:
    """Nearest-neighbor resample; never introduces labels absent from the source."""
    if width < 1 or height < 1:
        raise ValueError("target size must be at least 1x1")
    if (width, height) == (m.width, m.height):
        return LabelMap(m.labels.copy())
    ys = _nearest_indices(height, m.height)
    xs = _nearest_indices(width, m.width)
    return LabelMap(m.labels[np.ix_(ys, xs)])


def resize_rgb(i: RgbImage, width: int, height: int) -> RgbImage:
    """Bilinear resample with pixel-center alignment, rounded half-up."""
    if width < 1 or height < 1:
        raise ValueError("target size must be at least 1x1")
    if (width, height) == (i.width, i.height):
        return RgbImage(i.pixels.copy())

    src = i.pixels.astype(np.float64)
    sy = (np.arange(height) + 0.5) * i.height / height - 0.5
    sx = (np.arange(width) + 0.5) * i.width / width - 0.5
    y0 = np.clip(np.floor(sy).astype(np.intp), 0, i.height - 1)
    x0 = np.clip(np.floor(sx).astype(np.intp), 0, i.width - 1)
    y1 = np.minimum(y0 + 1, i.height - 1)
    x1 = np.minimum(x0 + 1, i.width - 1)
    fy = np.clip(sy - y0, 0.0, 1.0)[:, None, None]
    fx = np.clip(sx - x0, 0.0, 1.0)[None, :, None]

    top = src[np.ix_(y0, x0)] * (1 - fx) + src[np.ix_(y0, x1)] * fx
    bot = src[np.ix_(y1, x0)] * (1 - fx) + src[np.ix_(y1, x1)] * fx
    out = top * (1 - fy) + bot * fy
    return RgbImage(np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8))
