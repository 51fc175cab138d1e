import io

import numpy as np
import pytest
from fastapi.testclient import TestClient
from PIL import Image

from conftest import FIXTURE_H, FIXTURE_W
from segscope.compositor import weight_at
from segscope.ingest import load_label_map, load_rgb, load_weight_field, weight_field_path
from segscope.server import SessionState, create_app


@pytest.fixture(scope="module")
def state(dataset):
    manifest, _, _ = dataset
    return SessionState(manifest, size=(FIXTURE_W, FIXTURE_H))


@pytest.fixture(scope="module")
def client(state):
    return TestClient(create_app(state))


def png_pixels(body: bytes) -> np.ndarray:
    return np.asarray(Image.open(io.BytesIO(body)).convert("RGB"))


class TestCategories:
    def test_nineteen_entries(self, client, categories):
        r = client.get("/api/v1/categories")
        assert r.status_code == 200
        payload = r.json()
        assert len(payload) == 19
        assert [e["name"] for e in payload] == [e.name for e in categories.evaluable]
        assert payload[0] == {"id": 0, "name": "road", "color": [128, 64, 128]}


class TestColormapsEndpoint:
    def test_lists_shipped_maps_with_luts(self, client):
        payload = client.get("/api/v1/colormaps").json()
        by_name = {cm["name"]: cm for cm in payload}
        assert set(by_name) == {"turbo", "rainbow", "paired", "nipy-spectral-binned"}
        assert by_name["turbo"]["kind"] == "sequential"
        assert by_name["turbo"]["bins"] is None
        assert len(by_name["turbo"]["lut"]) == 256
        assert by_name["turbo"]["lut"][0] == [48, 18, 59]
        assert by_name["paired"]["kind"] == "categorical"
        assert by_name["paired"]["bins"] == 8


class TestPhoto:
    def test_serves_stored_image_bytes(self, client, dataset):
        manifest, _, _ = dataset
        r = client.get("/api/v1/image/img_0000/photo")
        assert r.status_code == 200 and r.headers["content-type"] == "image/png"
        assert r.content == manifest.entry("img_0000").image_path.read_bytes()

    def test_unknown_image_404(self, client):
        assert client.get("/api/v1/image/zzz/photo").status_code == 404


class TestScatter:
    def test_overview_point_total_matches_table(self, client, state):
        r = client.get("/api/v1/scatter/overview")
        series = r.json()["series"]
        assert sum(len(s["points"]) for s in series) == len(state.mask_table)

    def test_detail_equals_overview_series(self, client):
        overview = client.get("/api/v1/scatter/overview").json()["series"]
        road_overview = next(s for s in overview if s["category"] == "road")
        detail = client.get("/api/v1/scatter/detail", params={"category": "road"}).json()
        assert detail["points"] == road_overview["points"]
        assert detail["x_meaning"] == "size_pixels"
        assert detail["y_meaning"] == "iou_percent"

    def test_unknown_category_404(self, client):
        r = client.get("/api/v1/scatter/detail", params={"category": "spaceship"})
        assert r.status_code == 404

    def test_configured_but_absent_category_is_empty_200(self, client, state):
        present = {r.category for r in state.mask_table.rows}
        absent = next(e.name for e in state.categories.evaluable if e.id not in present)
        r = client.get("/api/v1/scatter/detail", params={"category": absent})
        assert r.status_code == 200
        assert r.json()["points"] == []

    def test_empty_dataset_overview(self, tmp_path):
        (tmp_path / "m.json").write_text('{"root": ".", "entries": []}')
        from segscope.ingest import load_manifest

        empty = SessionState(load_manifest(tmp_path / "m.json"))
        c = TestClient(create_app(empty))
        assert c.get("/api/v1/scatter/overview").json() == {"series": []}


class TestComposite:
    def test_alpha2_zero_is_dimmed_image(self, client, dataset):
        manifest, truth, _ = dataset
        r = client.get(
            "/api/v1/image/img_0000/composite",
            params={"category": "road", "alpha1": 0.5, "alpha2": 0.0},
        )
        assert r.status_code == 200 and r.headers["content-type"] == "image/png"
        img = load_rgb(manifest.entry("img_0000").image_path)
        expected = np.floor(img.pixels.astype(np.float64) * 0.5 + 0.5).astype(np.uint8)
        assert np.array_equal(png_pixels(r.content), expected)

    def test_repeated_requests_byte_identical(self, client):
        params = {"category": "road", "colormap": "turbo", "alpha1": 1.0, "alpha2": 0.5}
        a = client.get("/api/v1/image/img_0000/composite", params=params)
        b = client.get("/api/v1/image/img_0000/composite", params=params)
        assert a.content == b.content

    def test_alpha_violation_400(self, client):
        r = client.get(
            "/api/v1/image/img_0000/composite",
            params={"category": "road", "alpha1": 0.3, "alpha2": 0.5},
        )
        assert r.status_code == 400

    def test_unknown_image_404(self, client):
        r = client.get("/api/v1/image/nope/composite", params={"category": "road"})
        assert r.status_code == 404

    def test_unknown_category_404(self, client):
        r = client.get("/api/v1/image/img_0000/composite", params={"category": "spaceship"})
        assert r.status_code == 404

    def test_category_without_weights_404(self, client):
        # bicycle has no weight field on the calibration image
        r = client.get("/api/v1/image/img_0000/composite", params={"category": "bicycle"})
        assert r.status_code == 404

    def test_unknown_colormap_400(self, client):
        r = client.get(
            "/api/v1/image/img_0000/composite",
            params={"category": "road", "colormap": "plasma"},
        )
        assert r.status_code == 400
        assert "turbo" in r.json()["detail"]


class TestWeight:
    def test_matches_core_call(self, client, dataset):
        manifest, _, _ = dataset
        field = load_weight_field(weight_field_path(manifest.entry("img_0000"), "road"))
        for x, y in ((0, 0), (20, 10), (100, 50)):
            r = client.get(
                "/api/v1/image/img_0000/weight",
                params={"category": "road", "x": x, "y": y},
            )
            assert r.json()["weight"] == weight_at(field, x, y)

    def test_out_of_bounds_400(self, client):
        r = client.get(
            "/api/v1/image/img_0000/weight",
            params={"category": "road", "x": FIXTURE_W, "y": 0},
        )
        assert r.status_code == 400

    def test_unknown_ids_404(self, client):
        assert (
            client.get("/api/v1/image/zzz/weight", params={"category": "road", "x": 0, "y": 0}).status_code
            == 404
        )
        assert (
            client.get(
                "/api/v1/image/img_0000/weight", params={"category": "spaceship", "x": 0, "y": 0}
            ).status_code
            == 404
        )


class TestMaskInfo:
    def test_mismatch_pixel_differs_between_masks(self, client):
        # calibration image: given rect spans x 0..39, pred is shifted +20
        given = client.get(
            "/api/v1/image/img_0000/maskinfo", params={"which": "given", "x": 5, "y": 5}
        ).json()
        pred = client.get(
            "/api/v1/image/img_0000/maskinfo", params={"which": "pred", "x": 5, "y": 5}
        ).json()
        assert given == {"category": "road"}
        assert pred == {"category": "ignore"}

    def test_matches_core_call(self, client, dataset, categories):
        manifest, _, _ = dataset
        mask = load_label_map(manifest.entry("img_0003").given_path)
        for x, y in ((0, 0), (30, 40), (FIXTURE_W - 1, FIXTURE_H - 1)):
            r = client.get(
                "/api/v1/image/img_0003/maskinfo", params={"which": "given", "x": x, "y": y}
            )
            assert r.json()["category"] == categories.name_for_id(int(mask.labels[y, x]))

    def test_bad_which_400(self, client):
        r = client.get(
            "/api/v1/image/img_0000/maskinfo", params={"which": "guess", "x": 0, "y": 0}
        )
        assert r.status_code == 400

    def test_bad_coords_400(self, client):
        r = client.get(
            "/api/v1/image/img_0000/maskinfo", params={"which": "given", "x": -1, "y": 0}
        )
        assert r.status_code == 400


class TestMaskRender:
    def test_empty_selection_is_black(self, client):
        r = client.get(
            "/api/v1/image/img_0001/maskrender", params={"which": "given", "selected": ""}
        )
        assert r.status_code == 200
        assert not png_pixels(r.content).any()

    def test_default_selection_is_all(self, client):
        everything = ",".join(e["name"] for e in client.get("/api/v1/categories").json())
        a = client.get("/api/v1/image/img_0001/maskrender", params={"which": "given"})
        b = client.get(
            "/api/v1/image/img_0001/maskrender",
            params={"which": "given", "selected": everything},
        )
        assert a.content == b.content

    def test_single_category_matches_rectangle(self, client, dataset, categories):
        _, truth, _ = dataset
        im = next(t for t in truth["images"] if t["image_id"] == "img_0001")
        x, y, w, h = im["categories"]["car"]["rect"]
        r = client.get(
            "/api/v1/image/img_0001/maskrender",
            params={"which": "given", "selected": "car"},
        )
        px = png_pixels(r.content)
        nonblack = np.any(px != 0, axis=2)
        expected = np.zeros((FIXTURE_H, FIXTURE_W), dtype=bool)
        expected[y : y + h, x : x + w] = True
        assert np.array_equal(nonblack, expected)
        assert px[y, x].tolist() == list(categories.color_for_id(13))

    def test_unknown_selected_name_400(self, client):
        r = client.get(
            "/api/v1/image/img_0001/maskrender",
            params={"which": "given", "selected": "car,spaceship"},
        )
        assert r.status_code == 400

    def test_unknown_image_404(self, client):
        assert client.get("/api/v1/image/zzz/maskrender", params={"which": "given"}).status_code == 404


class TestOccupancy:
    def test_perfect_image_on_diagonal(self, client):
        r = client.get("/api/v1/image/img_0001/occupancy")
        payload = r.json()
        assert payload["records"]
        for p in payload["scatter"]["given_vs_pred"]:
            assert p["x"] == p["y"]
        for rec in payload["records"]:
            assert rec["iou_percent"] == 100.0

    def test_sums_plus_ignore_reach_100(self, client, dataset):
        manifest, _, _ = dataset
        for image_id in ("img_0002", "img_0004"):
            payload = client.get(f"/api/v1/image/{image_id}/occupancy").json()
            mask = load_label_map(manifest.entry(image_id).given_path)
            ignore_pct = 100.0 * float((mask.labels == 255).mean())
            total = sum(r["given_occupancy_pct"] for r in payload["records"]) + ignore_pct
            assert total == pytest.approx(100.0, abs=1e-9)

    def test_filtering_matches_series_builder(self, client, state):
        from segscope.analytics import series_for_task3

        payload = client.get(
            "/api/v1/image/img_0001/occupancy", params={"selected": "car,road"}
        ).json()
        groups = series_for_task3(state.occupancy["img_0001"], {0, 13})
        expected = {
            plot: sorted((s.points[0][0], s.points[0][1]) for s in series_list)
            for plot, series_list in groups.items()
        }
        got = {
            plot: sorted((p["x"], p["y"]) for p in pts)
            for plot, pts in payload["scatter"].items()
        }
        assert got == expected
        assert {r["category"] for r in payload["records"]} == {"car", "road"}

    def test_unknown_image_404(self, client):
        assert client.get("/api/v1/image/zzz/occupancy").status_code == 404


class TestApiIsReadOnly:
    def test_request_sequence_is_replayable(self, client):
        paths = [
            "/api/v1/categories",
            "/api/v1/images",
            "/api/v1/scatter/overview",
            "/api/v1/scatter/detail?category=building",
            "/api/v1/image/img_0002/occupancy",
            "/api/v1/image/img_0002/maskinfo?which=pred&x=10&y=10",
        ]
        first = [client.get(p).content for p in paths]
        second = [client.get(p).content for p in paths]
        assert first == second

    def test_images_index(self, client, dataset):
        manifest, truth, _ = dataset
        payload = client.get("/api/v1/images").json()
        assert [e["image_id"] for e in payload] == manifest.image_ids()
        entry0 = payload[0]
        assert entry0["width"] == FIXTURE_W and entry0["height"] == FIXTURE_H
        assert entry0["weight_categories"] == ["road"]
