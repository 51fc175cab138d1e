import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import rect_map
from segscope.colormaps import (
    BUILTIN_COLORMAPS,
    Colormap,
    colormap_apply,
    colormap_names,
    get_colormap,
    make_paired,
)
from segscope.compositor import category_at, render_mask_rgb, superimpose, weight_at
from segscope.errors import (
    CompositeParamError,
    DimensionMismatchError,
    OutOfBoundsError,
    UnknownCategoryError,
)
from segscope.model import CompositeParams, IGNORE_ID, RgbImage, WeightField


def constant_colormap(color) -> Colormap:
    lut = np.tile(np.asarray(color, dtype=np.uint8), (256, 1))
    return Colormap(name="const", kind="sequential", lut=lut)


class TestColormaps:
    def test_shipped_names(self):
        assert set(colormap_names()) == {"turbo", "rainbow", "paired", "nipy-spectral-binned"}

    def test_unknown_name_lists_choices(self):
        with pytest.raises(UnknownCategoryError, match="turbo"):
            get_colormap("plasma")

    def test_turbo_endpoints(self):
        turbo = get_colormap("turbo")
        # first/last entries of the published 256-entry turbo table
        assert colormap_apply(turbo, 0.0) == (48, 18, 59)
        assert colormap_apply(turbo, 1.0) == tuple(turbo.lut[255])

    def test_sequential_is_function_of_quantized_weight(self):
        turbo = get_colormap("turbo")
        # 0.5 and 0.5004 both round to LUT index 128
        assert colormap_apply(turbo, 0.5) == colormap_apply(turbo, 0.5004)
        assert colormap_apply(turbo, 0.5) == tuple(turbo.lut[128])

    def test_paired_bin_boundary(self):
        paired = get_colormap("paired")
        assert paired.bins == 8
        assert colormap_apply(paired, 0.49) == tuple(paired.bin_colors[3])
        assert colormap_apply(paired, 0.50) == tuple(paired.bin_colors[4])

    @pytest.mark.parametrize("name", ["paired", "nipy-spectral-binned"])
    def test_every_bin_boundary_lands_in_its_bin(self, name):
        cm = get_colormap(name)
        for k in range(cm.bins):
            assert colormap_apply(cm, k / cm.bins) == tuple(cm.bin_colors[k])
        assert colormap_apply(cm, 1.0) == tuple(cm.bin_colors[cm.bins - 1])

    def test_categorical_lut_is_piecewise_constant(self):
        cm = get_colormap("nipy-spectral-binned")
        # 256 / 8 = 32-wide constant runs
        for b in range(8):
            block = cm.lut[b * 32 : (b + 1) * 32]
            assert (block == block[0]).all()

    def test_paired_cycles_beyond_palette(self):
        cm = make_paired(bins=16)
        assert tuple(cm.bin_colors[12]) == tuple(cm.bin_colors[0])

    def test_sequential_luts_are_complete(self):
        for name in ("turbo", "rainbow"):
            assert BUILTIN_COLORMAPS[name].lut.shape == (256, 3)


class TestSuperimpose:
    def test_zero_alpha2_is_dimmed_image(self):
        rng = np.random.default_rng(5)
        img = RgbImage(rng.integers(0, 256, size=(9, 7, 3), dtype=np.uint8))
        field = WeightField(rng.random((9, 7), dtype=np.float32))
        out = superimpose(img, field, CompositeParams(alpha1=0.7, alpha2=0.0))
        expected = np.floor(img.pixels.astype(np.float64) * 0.7 + 0.5).astype(np.uint8)
        assert np.array_equal(out.pixels, expected)

    def test_linear_blend_arithmetic(self):
        img = RgbImage(np.full((2, 2, 3), 100, dtype=np.uint8))
        field = WeightField(np.full((2, 2), 0.25, dtype=np.float32))
        params = CompositeParams(alpha1=1.0, alpha2=0.5, colormap=constant_colormap((200, 0, 0)))
        out = superimpose(img, field, params)
        assert out.pixels[0, 0].tolist() == [150, 50, 50]

    def test_near_total_weight_layer(self):
        img = RgbImage(np.full((1, 1, 3), 255, dtype=np.uint8))
        field = WeightField(np.zeros((1, 1), dtype=np.float32))
        params = CompositeParams(alpha1=1.0, alpha2=0.999, colormap=constant_colormap((0, 0, 0)))
        out = superimpose(img, field, params)
        # image contribution is 255 * 0.001 = 0.255 -> rounds to 0
        assert out.pixels[0, 0].tolist() == [0, 0, 0]

    def test_alpha_ordering_rejected(self):
        with pytest.raises(CompositeParamError):
            CompositeParams(alpha1=1.0, alpha2=1.0)

    def test_dimension_mismatch(self):
        img = RgbImage(np.zeros((4, 4, 3), dtype=np.uint8))
        field = WeightField(np.zeros((4, 5), dtype=np.float32))
        with pytest.raises(DimensionMismatchError):
            superimpose(img, field, CompositeParams())

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_single_weight_change_touches_one_pixel(self, seed):
        rng = np.random.default_rng(seed)
        img = RgbImage(rng.integers(0, 256, size=(6, 8, 3), dtype=np.uint8))
        base = rng.random((6, 8)).astype(np.float32) * 0.4
        changed = base.copy()
        y, x = int(rng.integers(0, 6)), int(rng.integers(0, 8))
        changed[y, x] = 0.95
        params = CompositeParams(alpha1=1.0, alpha2=0.5)
        out_a = superimpose(img, WeightField(base), params)
        out_b = superimpose(img, WeightField(changed), params)
        diff = np.any(out_a.pixels != out_b.pixels, axis=2)
        assert diff[y, x]
        assert int(diff.sum()) == 1


class TestPointQueries:
    def test_weight_lookup(self):
        arr = np.zeros((4, 5), dtype=np.float32)
        arr[2, 3] = 0.25
        field = WeightField(arr)
        assert weight_at(field, 3, 2) == 0.25

    def test_weight_out_of_bounds(self):
        field = WeightField(np.zeros((4, 5), dtype=np.float32))
        with pytest.raises(OutOfBoundsError, match="5, 0"):
            weight_at(field, 5, 0)
        with pytest.raises(OutOfBoundsError):
            weight_at(field, 0, -1)

    def test_constant_field_everywhere(self):
        field = WeightField(np.full((3, 3), 0.5, dtype=np.float32))
        assert weight_at(field, 0, 0) == weight_at(field, 2, 2) == 0.5

    def test_category_inside_rectangle(self, categories):
        m = rect_map(16, 16, [(2, 2, 6, 6, 13)])
        assert category_at(m, categories, 4, 4) == (13, "car")

    def test_category_on_ignore(self, categories):
        m = rect_map(16, 16, [(2, 2, 6, 6, 13)])
        assert category_at(m, categories, 0, 0) == (IGNORE_ID, "ignore")

    def test_boundary_pixel_is_never_blended(self, categories):
        m = rect_map(8, 8, [(0, 0, 4, 8, 0), (4, 0, 4, 8, 1)])
        assert category_at(m, categories, 3, 0)[0] == 0
        assert category_at(m, categories, 4, 0)[0] == 1

    def test_category_out_of_bounds(self, categories):
        m = rect_map(8, 8, [(0, 0, 4, 8, 0)])
        with pytest.raises(OutOfBoundsError):
            category_at(m, categories, 8, 0)


class TestRenderMask:
    def test_all_selected_colors_every_non_ignore_pixel(self, categories):
        m = rect_map(16, 8, [(0, 0, 4, 4, 0), (8, 0, 4, 4, 13)])
        out = render_mask_rgb(m, categories, set(range(19)))
        colored = np.any(out.pixels != 0, axis=2)
        assert np.array_equal(colored, m.labels != IGNORE_ID)

    def test_empty_selection_is_black(self, categories):
        m = rect_map(16, 8, [(0, 0, 16, 8, 5)])
        out = render_mask_rgb(m, categories, set())
        assert not out.pixels.any()

    def test_single_category_matches_rectangle(self, categories):
        m = rect_map(16, 8, [(2, 1, 5, 4, 13), (9, 1, 5, 4, 0)])
        out = render_mask_rgb(m, categories, {13})
        nonblack = np.any(out.pixels != 0, axis=2)
        expected = np.zeros((8, 16), dtype=bool)
        expected[1:5, 2:7] = True
        assert np.array_equal(nonblack, expected)
        assert out.pixels[2, 3].tolist() == [0, 0, 142]

    def test_union_equals_pixelwise_max(self, categories):
        m = rect_map(16, 8, [(0, 0, 4, 4, 0), (8, 0, 4, 4, 13), (4, 4, 4, 4, 5)])
        s1, s2 = {0, 5}, {13}
        union = render_mask_rgb(m, categories, s1 | s2)
        parts = np.maximum(
            render_mask_rgb(m, categories, s1).pixels,
            render_mask_rgb(m, categories, s2).pixels,
        )
        assert np.array_equal(union.pixels, parts)

    def test_ignore_always_black(self, categories):
        m = rect_map(4, 4, [(0, 0, 2, 2, 0)])
        out = render_mask_rgb(m, categories, set(range(19)) | {IGNORE_ID})
        assert out.pixels[3, 3].tolist() == [0, 0, 0]
