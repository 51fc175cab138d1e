"""Operator entry point: fixture generation, table builds, reports, renders, serving.

Every subcommand is deterministic given identical inputs and flags; all
randomness flows from --seed. The SEGSCOPE_LOG environment variable sets
the log level (default INFO).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .analytics import write_correlation_csv
from .colormaps import colormap_names
from .compositor import encode_png, superimpose
from .errors import SegscopeError
from .fixtures import generate_fixtures
from .ingest import load_manifest, load_rgb, load_weight_field, weight_field_path
from .metrics import build_mask_table, write_mask_table_csv
from .model import CompositeParams, default_category_table

log = logging.getLogger("segscope.cli")

DEFAULT_WIDTH = 1024
DEFAULT_HEIGHT = 512


def _add_resolution_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--width", type=int, default=DEFAULT_WIDTH, help="working resolution width in pixels")
    p.add_argument("--height", type=int, default=DEFAULT_HEIGHT, help="working resolution height in pixels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segscope",
        description="Class-imbalance vs. segmentation-performance analysis engine.",
        epilog=(
            "File formats: the manifest is JSON "
            '{"root": ..., "entries": [{"image_id", "image", "given", "pred", "weights"}]} '
            "with paths relative to root; label masks are 8-bit grayscale PNG of "
            "category ids (0-18, 255 = ignore); images are 8-bit RGB PNG; weight "
            "fields are WGT1 binaries (magic 'WGT1', u32le width, u32le height, "
            "then width*height f32le row-major weights) found at "
            "<weights>/<category name>/<image_id>.wgt; category config is one "
            "'id,name,r,g,b' record per line."
        ),
    )
    parser.add_argument("--version", action="version", version=f"segscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-fixtures", help="write a deterministic synthetic dataset")
    p.add_argument("--seed", type=int, required=True, help="RNG seed; same seed gives identical bytes")
    p.add_argument("--count", type=int, required=True, help="number of images to generate")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    _add_resolution_flags(p)

    p = sub.add_parser("build-table", help="compute the per-mask IoU/size table as CSV")
    p.add_argument("--manifest", type=Path, required=True, help="dataset manifest JSON")
    p.add_argument("--out-csv", type=Path, required=True, help="output CSV path")
    _add_resolution_flags(p)

    p = sub.add_parser("render", help="render one saliency superimposition to PNG")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--image", required=True, help="image id from the manifest")
    p.add_argument("--category", required=True, help="category name")
    p.add_argument("--colormap", default="turbo", help=f"one of: {', '.join(colormap_names())}")
    p.add_argument("--alpha1", type=float, default=1.0, help="image opacity in (0,1]")
    p.add_argument("--alpha2", type=float, default=0.5, help="weight-layer opacity, below alpha1")
    p.add_argument("--out-png", type=Path, required=True)

    p = sub.add_parser("report", help="per-category size-vs-IoU correlation CSV")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--out-csv", type=Path, required=True)
    _add_resolution_flags(p)

    p = sub.add_parser("serve", help="run the read-only HTTP API")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--addr", default="127.0.0.1:8000", help="listen address as host:port")
    p.add_argument("--cors-origin", action="append", default=None, help="allowed CORS origin (repeatable)")
    p.add_argument("--ui-dir", type=Path, default=None, help="serve a built web UI from this directory at /ui")
    _add_resolution_flags(p)

    return parser


def _cmd_gen_fixtures(args) -> int:
    manifest = generate_fixtures(
        args.seed, args.count, args.out, width=args.width, height=args.height
    )
    log.info("wrote %d images under %s", len(manifest.entries), args.out)
    return 0


def _cmd_build_table(args) -> int:
    manifest = load_manifest(args.manifest)
    table = build_mask_table(manifest, (args.width, args.height))
    write_mask_table_csv(table, default_category_table(), args.out_csv)
    log.info("wrote %d rows to %s", len(table), args.out_csv)
    return 0


def _cmd_render(args) -> int:
    if args.colormap not in colormap_names():
        raise SegscopeError(
            f"unknown colormap {args.colormap!r}; valid names: {', '.join(colormap_names())}"
        )
    params = CompositeParams(alpha1=args.alpha1, alpha2=args.alpha2, colormap=args.colormap)
    manifest = load_manifest(args.manifest)
    try:
        entry = manifest.entry(args.image)
    except KeyError:
        raise SegscopeError(f"unknown image {args.image!r}") from None
    path = weight_field_path(entry, args.category)
    if path is None or not path.is_file():
        raise SegscopeError(f"no weight field for image {args.image!r}, category {args.category!r}")
    image = load_rgb(entry.image_path)
    field = load_weight_field(path)
    png = encode_png(superimpose(image, field, params))
    args.out_png.write_bytes(png)
    log.info("wrote %s", args.out_png)
    return 0


def _cmd_report(args) -> int:
    manifest = load_manifest(args.manifest)
    table = build_mask_table(manifest, (args.width, args.height))
    write_correlation_csv(table, default_category_table(), args.out_csv)
    log.info("wrote correlation report to %s", args.out_csv)
    return 0


def _parse_addr(addr: str) -> tuple[str, int]:
    host, sep, port = addr.rpartition(":")
    if not sep or not host:
        raise SegscopeError(f"bad --addr {addr!r}; expected host:port")
    try:
        port_num = int(port)
    except ValueError:
        raise SegscopeError(f"bad port in --addr {addr!r}") from None
    if not 0 <= port_num <= 65535:
        raise SegscopeError(f"port out of range in --addr {addr!r}")
    return host, port_num


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import SessionState, create_app

    host, port = _parse_addr(args.addr)
    manifest = load_manifest(args.manifest)
    state = SessionState(manifest, size=(args.width, args.height))
    app = create_app(state, cors_origins=args.cors_origin)
    if args.ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        if not args.ui_dir.is_dir():
            raise SegscopeError(f"--ui-dir {args.ui_dir} is not a directory")
        app.mount("/ui", StaticFiles(directory=args.ui_dir, html=True), name="ui")
    log.info("listening on http://%s:%d%s", host, port, " (UI at /ui)" if args.ui_dir else "")
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


_COMMANDS = {
    "gen-fixtures": _cmd_gen_fixtures,
    "build-table": _cmd_build_table,
    "render": _cmd_render,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=os.environ.get("SEGSCOPE_LOG", "INFO").upper(),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SegscopeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
