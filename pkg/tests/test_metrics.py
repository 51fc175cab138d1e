import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_label_pair, rect_map
from oracles import iou_counts, mask_rows_oracle, pixel_counts
from segscope.errors import DimensionMismatchError, EmptyUnionError, UnknownCategoryError
from segscope.ingest import load_label_map, save_label_map
from segscope.metrics import (
    build_mask_table,
    image_mask_records,
    iou_percent,
    object_size,
    occupancy_table,
    write_mask_table_csv,
)
from segscope.model import IGNORE_ID, LabelMap


class TestIouPercent:
    def test_identical_masks(self):
        m = rect_map(8, 8, [(1, 1, 4, 4, 13)])
        assert iou_percent(m, m, 13) == 100.0

    def test_disjoint_regions(self):
        g = rect_map(8, 8, [(0, 0, 2, 2, 13)])
        p = rect_map(8, 8, [(4, 4, 2, 2, 13)])
        assert iou_percent(g, p, 13) == 0.0

    def test_column_overlap_case(self):
        """Given on columns 0-3, pred on columns 2-5: 16 / 48."""
        g = rect_map(8, 8, [(0, 0, 4, 8, 2)])
        p = rect_map(8, 8, [(2, 0, 4, 8, 2)])
        g_counts, p_counts, inter = iou_counts(g.labels, p.labels)
        assert inter[2] == 16 and g_counts[2] + p_counts[2] - inter[2] == 48
        assert iou_percent(g, p, 2) == pytest.approx(100.0 * 16 / 48, abs=1e-12)

    def test_dimension_mismatch(self):
        g = rect_map(4, 4, [(0, 0, 2, 2, 0)])
        p = rect_map(4, 8, [(0, 0, 2, 2, 0)])
        with pytest.raises(DimensionMismatchError):
            iou_percent(g, p, 0)

    def test_empty_union(self):
        g = rect_map(4, 4, [(0, 0, 2, 2, 0)])
        with pytest.raises(EmptyUnionError):
            iou_percent(g, g, 5)

    def test_ignore_label_rejected(self):
        g = rect_map(4, 4, [(0, 0, 2, 2, 0)])
        with pytest.raises(UnknownCategoryError):
            iou_percent(g, g, IGNORE_ID)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_symmetric_in_masks(self, seed):
        rng = np.random.default_rng(seed)
        g, p = random_label_pair(rng, 12, 9)
        for c in range(19):
            try:
                forward = iou_percent(g, p, c)
            except EmptyUnionError:
                with pytest.raises(EmptyUnionError):
                    iou_percent(p, g, c)
                continue
            assert iou_percent(p, g, c) == forward

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_invariant_under_pixel_permutation(self, seed):
        rng = np.random.default_rng(seed)
        g, p = random_label_pair(rng, 8, 8)
        perm = rng.permutation(64)
        g2 = LabelMap(g.labels.ravel()[perm].reshape(8, 8))
        p2 = LabelMap(p.labels.ravel()[perm].reshape(8, 8))
        for c in range(19):
            try:
                expected = iou_percent(g, p, c)
            except EmptyUnionError:
                continue
            assert iou_percent(g2, p2, c) == expected


class TestObjectSize:
    def test_full_frame(self):
        m = LabelMap(np.full((512, 1024), 3, dtype=np.uint8))
        assert object_size(m, 3) == 524288

    def test_absent_category(self):
        m = rect_map(8, 8, [(0, 0, 3, 3, 0)])
        assert object_size(m, 7) == 0

    def test_fixture_rectangle(self):
        m = rect_map(64, 32, [(0, 0, 40, 20, 13)])
        assert object_size(m, 13) == 800


class TestBuildMaskTable:
    def test_single_class_single_row(self, tmp_path):
        m = LabelMap(np.zeros((4, 4), dtype=np.uint8))
        save_label_map(m, tmp_path / "g.png")
        save_label_map(m, tmp_path / "p.png")
        from PIL import Image

        Image.fromarray(np.zeros((4, 4, 3), dtype=np.uint8), "RGB").save(tmp_path / "i.png")
        (tmp_path / "manifest.json").write_text(
            '{"root": ".", "entries": [{"image_id": "a", "image": "i.png", "given": "g.png", "pred": "p.png"}]}'
        )
        from segscope.ingest import load_manifest

        table = build_mask_table(load_manifest(tmp_path / "manifest.json"))
        assert len(table) == 1
        assert table.rows[0].category == 0 and table.rows[0].iou_percent == 100.0

    def test_row_count_matches_independent_rescan(self, dataset):
        manifest, _, _ = dataset
        table = build_mask_table(manifest)
        expected = 0
        for entry in manifest.entries:
            labels = load_label_map(entry.given_path).labels
            expected += len(set(pixel_counts(labels)) - {IGNORE_ID})
        assert len(table) == expected

    def test_pred_only_category_has_no_row(self, dataset, categories):
        manifest, truth, _ = dataset
        table = build_mask_table(manifest)
        last = truth["images"][-1]
        extra = last["pred_only"]
        assert extra is not None
        cid = categories.id_for_name(extra["category"])
        assert not any(
            r.image_id == last["image_id"] and r.category == cid for r in table.rows
        )

    def test_rows_sorted_and_unique(self, dataset):
        manifest, _, _ = dataset
        table = build_mask_table(manifest)
        keys = [(r.image_id, r.category) for r in table.rows]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_matches_brute_force_oracle(self, seed):
        rng = np.random.default_rng(seed)
        g, p = random_label_pair(rng, 24, 16, ids=(0, 2, 5, 13, 18, IGNORE_ID))
        engine = image_mask_records("img", g, p)
        oracle = mask_rows_oracle("img", g.labels, p.labels)
        assert len(engine) == len(oracle)
        for rec, (image_id, c, iou, size) in zip(engine, oracle):
            assert rec.image_id == image_id
            assert rec.category == c
            assert rec.size_pixels == size
            assert rec.iou_percent == pytest.approx(iou, abs=1e-9)

    def test_resize_to_working_resolution_scales_sizes(self, dataset):
        manifest, _, _ = dataset
        native = build_mask_table(manifest)
        doubled = build_mask_table(manifest, (512, 256))
        by_key = {(r.image_id, r.category): r for r in doubled.rows}
        for r in native.rows:
            assert by_key[(r.image_id, r.category)].size_pixels == 4 * r.size_pixels


class TestOccupancyTable:
    def test_full_frame_single_class(self):
        m = LabelMap(np.zeros((4, 4), dtype=np.uint8))
        records = occupancy_table("a", m, m)
        assert len(records) == 1
        r = records[0]
        assert (r.given_occupancy_pct, r.pred_occupancy_pct, r.iou_percent) == (100.0, 100.0, 100.0)

    def test_half_and_half(self):
        arr = np.zeros((4, 4), dtype=np.uint8)
        arr[2:, :] = 1
        m = LabelMap(arr)
        records = occupancy_table("a", m, m)
        assert [(r.category, r.given_occupancy_pct, r.pred_occupancy_pct, r.iou_percent) for r in records] == [
            (0, 50.0, 50.0, 100.0),
            (1, 50.0, 50.0, 100.0),
        ]

    def test_ignore_quarter_sums_to_75(self):
        arr = np.zeros((4, 4), dtype=np.uint8)
        arr[0, :] = IGNORE_ID  # 25% ignore
        arr[1, :] = 1
        m = LabelMap(arr)
        records = occupancy_table("a", m, m)
        assert sum(r.given_occupancy_pct for r in records) == pytest.approx(75.0, abs=1e-12)

    def test_pred_only_category_is_included(self):
        g = rect_map(8, 8, [(0, 0, 4, 4, 0)])
        p = rect_map(8, 8, [(0, 0, 4, 4, 0), (4, 4, 2, 2, 13)])
        records = occupancy_table("a", g, p)
        cats = {r.category: r for r in records}
        assert cats[13].given_occupancy_pct == 0.0
        assert cats[13].pred_occupancy_pct == pytest.approx(100.0 * 4 / 64)
        assert cats[13].iou_percent == 0.0

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_occupancy_conservation(self, seed):
        rng = np.random.default_rng(seed)
        g, p = random_label_pair(rng, 10, 7)
        records = occupancy_table("a", g, p)
        for mask, field in ((g, "given_occupancy_pct"), (p, "pred_occupancy_pct")):
            ignore_frac = pixel_counts(mask.labels).get(IGNORE_ID, 0) / 70
            total = sum(getattr(r, field) for r in records) + ignore_frac * 100.0
            assert total == pytest.approx(100.0, abs=1e-9)

    def test_dimension_mismatch(self):
        g = rect_map(4, 4, [(0, 0, 2, 2, 0)])
        p = rect_map(8, 4, [(0, 0, 2, 2, 0)])
        with pytest.raises(DimensionMismatchError):
            occupancy_table("a", g, p)


class TestCsvExport:
    def test_format_and_determinism(self, dataset, categories, tmp_path):
        manifest, _, _ = dataset
        table = build_mask_table(manifest)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_mask_table_csv(table, categories, a)
        write_mask_table_csv(table, categories, b)
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().splitlines()
        assert lines[0] == "image_id,category,iou_percent,size_pixels"
        assert len(lines) == len(table) + 1
        first = lines[1].split(",")
        assert first[0] == "img_0000" and first[1] == "road"
        assert first[2] == "33.333333"
