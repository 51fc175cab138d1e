"""Shared test fixtures: a small deterministic dataset and raster builders."""

import numpy as np
import pytest

from segscope.fixtures import generate_fixtures, load_truth
from segscope.model import IGNORE_ID, LabelMap, default_category_table

FIXTURE_SEED = 1
FIXTURE_COUNT = 8
FIXTURE_W = 256
FIXTURE_H = 128


@pytest.fixture(scope="session")
def categories():
    return default_category_table()


@pytest.fixture(scope="session")
def dataset(tmp_path_factory):
    """(manifest, truth, root) for a seeded 8-image synthetic dataset."""
    root = tmp_path_factory.mktemp("fixture_ds")
    manifest = generate_fixtures(FIXTURE_SEED, FIXTURE_COUNT, root, width=FIXTURE_W, height=FIXTURE_H)
    return manifest, load_truth(root), root


def label_map(rows) -> LabelMap:
    return LabelMap(np.asarray(rows, dtype=np.uint8))


def rect_map(width, height, rects, background=IGNORE_ID) -> LabelMap:
    """Label map from (x, y, w, h, category) rectangles over a background."""
    arr = np.full((height, width), background, dtype=np.uint8)
    for x, y, w, h, cid in rects:
        arr[y : y + h, x : x + w] = cid
    return LabelMap(arr)


def random_label_pair(rng, width, height, ids=(0, 1, 2, 13, IGNORE_ID)):
    ids = np.asarray(ids, dtype=np.uint8)
    g = ids[rng.integers(0, len(ids), size=(height, width))]
    p = ids[rng.integers(0, len(ids), size=(height, width))]
    return LabelMap(g), LabelMap(p)
