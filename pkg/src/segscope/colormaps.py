"""Shipped colormaps: 256-entry lookup tables and the named registry.

Sequential maps (turbo, rainbow) carry a full 256-entry LUT. Categorical
maps quantize the weight into equal-width bins: paired draws bin colors
from its 12-color palette, nipy-spectral-binned samples bin centers of
the continuous nipy-spectral table. Default bin count is 8.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownCategoryError

TURBO_LUT = (
    (48, 18, 59), (50, 21, 67), (51, 24, 74), (52, 27, 81), (53, 30, 88), (54, 33, 95),
    (55, 36, 102), (56, 39, 109), (57, 42, 115), (58, 45, 121), (59, 47, 128), (60, 50, 134),
    (61, 53, 139), (62, 56, 145), (63, 59, 151), (63, 62, 156), (64, 64, 162), (65, 67, 167),
    (65, 70, 172), (66, 73, 177), (66, 75, 181), (67, 78, 186), (68, 81, 191), (68, 84, 195),
    (68, 86, 199), (69, 89, 203), (69, 92, 207), (69, 94, 211), (70, 97, 214), (70, 100, 218),
    (70, 102, 221), (70, 105, 224), (70, 107, 227), (71, 110, 230), (71, 113, 233), (71, 115, 235),
    (71, 118, 238), (71, 120, 240), (71, 123, 242), (70, 125, 244), (70, 128, 246), (70, 130, 248),
    (70, 133, 250), (70, 135, 251), (69, 138, 252), (69, 140, 253), (68, 143, 254), (67, 145, 254),
    (66, 148, 255), (65, 150, 255), (64, 153, 255), (62, 155, 254), (61, 158, 254), (59, 160, 253),
    (58, 163, 252), (56, 165, 251), (55, 168, 250), (53, 171, 248), (51, 173, 247), (49, 175, 245),
    (47, 178, 244), (46, 180, 242), (44, 183, 240), (42, 185, 238), (40, 188, 235), (39, 190, 233),
    (37, 192, 231), (35, 195, 228), (34, 197, 226), (32, 199, 223), (31, 201, 221), (30, 203, 218),
    (28, 205, 216), (27, 208, 213), (26, 210, 210), (26, 212, 208), (25, 213, 205), (24, 215, 202),
    (24, 217, 200), (24, 219, 197), (24, 221, 194), (24, 222, 192), (24, 224, 189), (25, 226, 187),
    (25, 227, 185), (26, 228, 182), (28, 230, 180), (29, 231, 178), (31, 233, 175), (32, 234, 172),
    (34, 235, 170), (37, 236, 167), (39, 238, 164), (42, 239, 161), (44, 240, 158), (47, 241, 155),
    (50, 242, 152), (53, 243, 148), (56, 244, 145), (60, 245, 142), (63, 246, 138), (67, 247, 135),
    (70, 248, 132), (74, 248, 128), (78, 249, 125), (82, 250, 122), (85, 250, 118), (89, 251, 115),
    (93, 252, 111), (97, 252, 108), (101, 253, 105), (105, 253, 102), (109, 254, 98), (113, 254, 95),
    (117, 254, 92), (121, 254, 89), (125, 255, 86), (128, 255, 83), (132, 255, 81), (136, 255, 78),
    (139, 255, 75), (143, 255, 73), (146, 255, 71), (150, 254, 68), (153, 254, 66), (156, 254, 64),
    (159, 253, 63), (161, 253, 61), (164, 252, 60), (167, 252, 58), (169, 251, 57), (172, 251, 56),
    (175, 250, 55), (177, 249, 54), (180, 248, 54), (183, 247, 53), (185, 246, 53), (188, 245, 52),
    (190, 244, 52), (193, 243, 52), (195, 241, 52), (198, 240, 52), (200, 239, 52), (203, 237, 52),
    (205, 236, 52), (208, 234, 52), (210, 233, 53), (212, 231, 53), (215, 229, 53), (217, 228, 54),
    (219, 226, 54), (221, 224, 55), (223, 223, 55), (225, 221, 55), (227, 219, 56), (229, 217, 56),
    (231, 215, 57), (233, 213, 57), (235, 211, 57), (236, 209, 58), (238, 207, 58), (239, 205, 58),
    (241, 203, 58), (242, 201, 58), (244, 199, 58), (245, 197, 58), (246, 195, 58), (247, 193, 58),
    (248, 190, 57), (249, 188, 57), (250, 186, 57), (251, 184, 56), (251, 182, 55), (252, 179, 54),
    (252, 177, 54), (253, 174, 53), (253, 172, 52), (254, 169, 51), (254, 167, 50), (254, 164, 49),
    (254, 161, 48), (254, 158, 47), (254, 155, 45), (254, 153, 44), (254, 150, 43), (254, 147, 42),
    (254, 144, 41), (253, 141, 39), (253, 138, 38), (252, 135, 37), (252, 132, 35), (251, 129, 34),
    (251, 126, 33), (250, 123, 31), (249, 120, 30), (249, 117, 29), (248, 114, 28), (247, 111, 26),
    (246, 108, 25), (245, 105, 24), (244, 102, 23), (243, 99, 21), (242, 96, 20), (241, 93, 19),
    (240, 91, 18), (239, 88, 17), (237, 85, 16), (236, 83, 15), (235, 80, 14), (234, 78, 13),
    (232, 75, 12), (231, 73, 12), (229, 71, 11), (228, 69, 10), (226, 67, 10), (225, 65, 9),
    (223, 63, 8), (221, 61, 8), (220, 59, 7), (218, 57, 7), (216, 55, 6), (214, 53, 6),
    (212, 51, 5), (210, 49, 5), (208, 47, 5), (206, 45, 4), (204, 43, 4), (202, 42, 4),
    (200, 40, 3), (197, 38, 3), (195, 37, 3), (193, 35, 2), (190, 33, 2), (188, 32, 2),
    (185, 30, 2), (183, 29, 2), (180, 27, 1), (178, 26, 1), (175, 24, 1), (172, 23, 1),
    (169, 22, 1), (167, 20, 1), (164, 19, 1), (161, 18, 1), (158, 16, 1), (155, 15, 1),
    (152, 14, 1), (149, 13, 1), (146, 11, 1), (142, 10, 1), (139, 9, 2), (136, 8, 2),
    (133, 7, 2), (129, 6, 2), (126, 5, 2), (122, 4, 3),
)

RAINBOW_LUT = (
    (128, 0, 255), (126, 3, 255), (124, 6, 255), (122, 9, 255), (120, 13, 255), (118, 16, 255),
    (116, 19, 255), (114, 22, 255), (112, 25, 255), (110, 28, 255), (108, 31, 255), (106, 34, 254),
    (104, 38, 254), (102, 41, 254), (100, 44, 254), (98, 47, 254), (96, 50, 254), (94, 53, 254),
    (92, 56, 253), (90, 59, 253), (88, 62, 253), (86, 65, 253), (84, 68, 253), (82, 71, 252),
    (80, 74, 252), (78, 77, 252), (76, 80, 252), (74, 83, 251), (72, 86, 251), (70, 89, 251),
    (68, 92, 251), (66, 95, 250), (64, 98, 250), (62, 101, 250), (60, 104, 249), (57, 107, 249),
    (56, 109, 249), (54, 112, 248), (52, 115, 248), (49, 118, 248), (48, 121, 247), (46, 123, 247),
    (44, 126, 247), (41, 129, 246), (40, 132, 246), (38, 134, 245), (36, 137, 245), (33, 140, 244),
    (32, 142, 244), (30, 145, 243), (28, 147, 243), (25, 150, 243), (24, 152, 242), (22, 155, 242),
    (20, 157, 241), (17, 160, 241), (16, 162, 240), (14, 165, 239), (12, 167, 239), (9, 169, 238),
    (8, 172, 238), (6, 174, 237), (4, 176, 237), (1, 179, 236), (0, 181, 235), (2, 183, 235),
    (4, 185, 234), (7, 187, 234), (8, 190, 233), (10, 192, 232), (13, 194, 232), (15, 196, 231),
    (16, 198, 230), (18, 200, 230), (20, 202, 229), (23, 203, 228), (24, 205, 228), (26, 207, 227),
    (29, 209, 226), (31, 211, 225), (33, 213, 225), (34, 214, 224), (36, 216, 223), (39, 218, 222),
    (41, 219, 222), (42, 221, 221), (45, 222, 220), (47, 224, 219), (49, 225, 218), (50, 227, 218),
    (52, 228, 217), (55, 230, 216), (57, 231, 215), (58, 232, 214), (61, 234, 213), (63, 235, 213),
    (65, 236, 212), (66, 237, 211), (68, 238, 210), (71, 239, 209), (73, 241, 208), (74, 242, 207),
    (77, 243, 206), (79, 243, 205), (81, 244, 204), (82, 245, 203), (84, 246, 203), (87, 247, 202),
    (89, 248, 201), (90, 248, 200), (93, 249, 199), (95, 250, 198), (97, 250, 197), (98, 251, 196),
    (100, 251, 195), (103, 252, 194), (105, 252, 193), (106, 253, 192), (109, 253, 191), (111, 254, 190),
    (113, 254, 188), (114, 254, 187), (116, 254, 186), (119, 255, 185), (121, 255, 184), (122, 255, 183),
    (125, 255, 182), (127, 255, 181), (129, 255, 180), (131, 255, 179), (132, 255, 178), (134, 255, 176),
    (136, 255, 175), (139, 254, 174), (141, 254, 173), (143, 254, 172), (145, 254, 171), (147, 253, 169),
    (148, 253, 168), (150, 252, 167), (153, 252, 166), (155, 251, 165), (157, 251, 164), (159, 250, 162),
    (161, 250, 161), (163, 249, 160), (164, 248, 159), (166, 248, 157), (168, 247, 156), (171, 246, 155),
    (173, 245, 154), (175, 244, 152), (177, 243, 151), (179, 243, 150), (180, 242, 149), (182, 241, 147),
    (185, 239, 146), (187, 238, 145), (189, 237, 143), (191, 236, 142), (193, 235, 141), (195, 234, 140),
    (196, 232, 138), (198, 231, 137), (200, 230, 136), (203, 228, 134), (205, 227, 133), (207, 225, 132),
    (209, 224, 130), (211, 222, 129), (212, 221, 128), (214, 219, 126), (217, 218, 125), (219, 216, 123),
    (221, 214, 122), (223, 213, 121), (225, 211, 119), (227, 209, 118), (228, 207, 116), (230, 205, 115),
    (232, 203, 114), (235, 202, 112), (237, 200, 111), (239, 198, 109), (241, 196, 108), (243, 194, 107),
    (244, 192, 105), (246, 190, 104), (249, 187, 102), (251, 185, 101), (253, 183, 99), (255, 181, 98),
    (255, 179, 96), (255, 176, 95), (255, 174, 94), (255, 172, 92), (255, 169, 91), (255, 167, 89),
    (255, 165, 88), (255, 162, 86), (255, 160, 85), (255, 157, 83), (255, 155, 82), (255, 152, 80),
    (255, 150, 79), (255, 147, 77), (255, 145, 76), (255, 142, 74), (255, 140, 73), (255, 137, 71),
    (255, 134, 70), (255, 132, 68), (255, 129, 67), (255, 126, 65), (255, 123, 64), (255, 121, 62),
    (255, 118, 61), (255, 115, 59), (255, 112, 58), (255, 109, 56), (255, 107, 55), (255, 104, 53),
    (255, 101, 51), (255, 98, 50), (255, 95, 48), (255, 92, 47), (255, 89, 45), (255, 86, 44),
    (255, 83, 42), (255, 80, 41), (255, 77, 39), (255, 74, 38), (255, 71, 36), (255, 68, 34),
    (255, 65, 33), (255, 62, 31), (255, 59, 30), (255, 56, 28), (255, 53, 27), (255, 50, 25),
    (255, 47, 24), (255, 44, 22), (255, 41, 20), (255, 38, 19), (255, 34, 17), (255, 31, 16),
    (255, 28, 14), (255, 25, 13), (255, 22, 11), (255, 19, 9), (255, 16, 8), (255, 13, 6),
    (255, 9, 5), (255, 6, 3), (255, 3, 2), (255, 0, 0),
)

NIPY_SPECTRAL_LUT = (
    (0, 0, 0), (9, 0, 11), (19, 0, 21), (28, 0, 32), (37, 0, 43), (47, 0, 53),
    (56, 0, 64), (65, 0, 75), (75, 0, 85), (84, 0, 96), (93, 0, 107), (103, 0, 117),
    (112, 0, 128), (119, 0, 136), (121, 0, 138), (122, 0, 139), (123, 0, 140), (125, 0, 142),
    (126, 0, 143), (127, 0, 144), (129, 0, 146), (130, 0, 147), (131, 0, 148), (133, 0, 150),
    (134, 0, 151), (135, 0, 152), (131, 0, 154), (120, 0, 155), (109, 0, 156), (99, 0, 158),
    (88, 0, 159), (77, 0, 160), (67, 0, 162), (56, 0, 163), (45, 0, 164), (35, 0, 166),
    (24, 0, 167), (13, 0, 168), (3, 0, 170), (0, 0, 173), (0, 0, 177), (0, 0, 181),
    (0, 0, 185), (0, 0, 189), (0, 0, 193), (0, 0, 197), (0, 0, 201), (0, 0, 205),
    (0, 0, 209), (0, 0, 213), (0, 0, 217), (0, 0, 221), (0, 9, 221), (0, 19, 221),
    (0, 28, 221), (0, 37, 221), (0, 47, 221), (0, 56, 221), (0, 65, 221), (0, 75, 221),
    (0, 84, 221), (0, 93, 221), (0, 103, 221), (0, 112, 221), (0, 120, 221), (0, 122, 221),
    (0, 125, 221), (0, 128, 221), (0, 130, 221), (0, 133, 221), (0, 136, 221), (0, 138, 221),
    (0, 141, 221), (0, 144, 221), (0, 146, 221), (0, 149, 221), (0, 152, 221), (0, 154, 219),
    (0, 155, 215), (0, 156, 211), (0, 158, 207), (0, 159, 203), (0, 160, 199), (0, 162, 195),
    (0, 163, 191), (0, 164, 187), (0, 166, 183), (0, 167, 179), (0, 168, 175), (0, 170, 171),
    (0, 170, 168), (0, 170, 165), (0, 170, 163), (0, 170, 160), (0, 170, 157), (0, 170, 155),
    (0, 170, 152), (0, 170, 149), (0, 170, 147), (0, 170, 144), (0, 170, 141), (0, 170, 139),
    (0, 170, 136), (0, 169, 125), (0, 167, 115), (0, 166, 104), (0, 165, 93), (0, 163, 83),
    (0, 162, 72), (0, 161, 61), (0, 159, 51), (0, 158, 40), (0, 157, 29), (0, 155, 19),
    (0, 154, 8), (0, 154, 0), (0, 156, 0), (0, 159, 0), (0, 162, 0), (0, 164, 0),
    (0, 167, 0), (0, 170, 0), (0, 172, 0), (0, 175, 0), (0, 178, 0), (0, 180, 0),
    (0, 183, 0), (0, 186, 0), (0, 188, 0), (0, 191, 0), (0, 194, 0), (0, 196, 0),
    (0, 199, 0), (0, 202, 0), (0, 204, 0), (0, 207, 0), (0, 210, 0), (0, 212, 0),
    (0, 215, 0), (0, 218, 0), (0, 220, 0), (0, 223, 0), (0, 226, 0), (0, 228, 0),
    (0, 231, 0), (0, 234, 0), (0, 236, 0), (0, 239, 0), (0, 242, 0), (0, 244, 0),
    (0, 247, 0), (0, 250, 0), (0, 252, 0), (0, 255, 0), (15, 255, 0), (29, 255, 0),
    (44, 255, 0), (59, 255, 0), (73, 255, 0), (88, 255, 0), (103, 255, 0), (117, 255, 0),
    (132, 255, 0), (147, 255, 0), (161, 255, 0), (176, 255, 0), (188, 255, 0), (192, 253, 0),
    (196, 252, 0), (200, 251, 0), (204, 249, 0), (208, 248, 0), (212, 247, 0), (216, 245, 0),
    (220, 244, 0), (224, 243, 0), (228, 241, 0), (232, 240, 0), (236, 239, 0), (239, 237, 0),
    (240, 234, 0), (241, 231, 0), (243, 229, 0), (244, 226, 0), (245, 223, 0), (247, 221, 0),
    (248, 218, 0), (249, 215, 0), (251, 213, 0), (252, 210, 0), (253, 207, 0), (255, 205, 0),
    (255, 201, 0), (255, 197, 0), (255, 193, 0), (255, 189, 0), (255, 185, 0), (255, 181, 0),
    (255, 177, 0), (255, 173, 0), (255, 169, 0), (255, 165, 0), (255, 161, 0), (255, 157, 0),
    (255, 153, 0), (255, 141, 0), (255, 129, 0), (255, 117, 0), (255, 105, 0), (255, 93, 0),
    (255, 81, 0), (255, 69, 0), (255, 57, 0), (255, 45, 0), (255, 33, 0), (255, 21, 0),
    (255, 9, 0), (254, 0, 0), (252, 0, 0), (249, 0, 0), (246, 0, 0), (244, 0, 0),
    (241, 0, 0), (238, 0, 0), (236, 0, 0), (233, 0, 0), (230, 0, 0), (228, 0, 0),
    (225, 0, 0), (222, 0, 0), (220, 0, 0), (219, 0, 0), (218, 0, 0), (216, 0, 0),
    (215, 0, 0), (214, 0, 0), (212, 0, 0), (211, 0, 0), (210, 0, 0), (208, 0, 0),
    (207, 0, 0), (206, 0, 0), (204, 0, 0), (204, 12, 12), (204, 28, 28), (204, 44, 44),
    (204, 60, 60), (204, 76, 76), (204, 92, 92), (204, 108, 108), (204, 124, 124), (204, 140, 140),
    (204, 156, 156), (204, 172, 172), (204, 188, 188), (204, 204, 204),
)

PAIRED_COLORS = (
    (166, 206, 227), (31, 120, 180), (178, 223, 138),
    (51, 160, 44), (251, 154, 153), (227, 26, 28),
    (253, 191, 111), (255, 127, 0), (202, 178, 214),
    (106, 61, 154), (255, 255, 153), (177, 89, 40),
)


DEFAULT_BINS = 8


@dataclass(frozen=True)
class Colormap:
    """A named weight-to-color mapping.

    `lut` always holds 256 RGB triples; for categorical maps it is
    piecewise-constant over `bins` equal-width index ranges and
    `bin_colors` holds one color per bin.
    """

    name: str
    kind: str  # "sequential" | "categorical"
    lut: np.ndarray  # (256, 3) uint8
    bins: int | None = None
    bin_colors: np.ndarray | None = None  # (bins, 3) uint8, categorical only


def _as_lut(table) -> np.ndarray:
    arr = np.asarray(table, dtype=np.uint8)
    if arr.shape != (256, 3):
        raise ValueError(f"LUT must be 256x3, got {arr.shape}")
    return arr


def _sequential(name: str, table) -> Colormap:
    return Colormap(name=name, kind="sequential", lut=_as_lut(table))


def _categorical(name: str, bin_colors: np.ndarray, bins: int) -> Colormap:
    if bins < 2:
        raise ValueError("categorical maps need at least 2 bins")
    # materialize the piecewise-constant 256 LUT for color bars / exports
    idx = np.minimum(np.arange(256) * bins // 256, bins - 1)
    lut = bin_colors[idx]
    return Colormap(name=name, kind="categorical", lut=lut, bins=bins, bin_colors=bin_colors)


def make_paired(bins: int = DEFAULT_BINS) -> Colormap:
    palette = np.asarray(PAIRED_COLORS, dtype=np.uint8)
    colors = palette[np.arange(bins) % len(palette)]
    return _categorical("paired", colors, bins)


def make_nipy_spectral_binned(bins: int = DEFAULT_BINS) -> Colormap:
    base = _as_lut(NIPY_SPECTRAL_LUT)
    centers = np.floor((np.arange(bins) + 0.5) / bins * 255.0 + 0.5).astype(np.intp)
    return _categorical("nipy-spectral-binned", base[centers], bins)


BUILTIN_COLORMAPS: dict[str, Colormap] = {
    "turbo": _sequential("turbo", TURBO_LUT),
    "rainbow": _sequential("rainbow", RAINBOW_LUT),
    "paired": make_paired(),
    "nipy-spectral-binned": make_nipy_spectral_binned(),
}


def colormap_names() -> list[str]:
    return list(BUILTIN_COLORMAPS)


def get_colormap(name: str) -> Colormap:
    cm = BUILTIN_COLORMAPS.get(name)
    if cm is None:
        raise UnknownCategoryError(
            f"unknown colormap {name!r}; available: {', '.join(BUILTIN_COLORMAPS)}"
        )
    return cm


def colormap_apply(cm: Colormap, w: float) -> tuple[int, int, int]:
    """Color for a single weight in [0,1].

    Sequential: lut[round(w * 255)]. Categorical: the color of bin
    floor(w * bins), with w = 1 landing in the last bin.
    """
    w = min(max(float(w), 0.0), 1.0)
    if cm.kind == "sequential":
        rgb = cm.lut[int(np.floor(w * 255.0 + 0.5))]
    else:
        b = min(int(np.floor(w * cm.bins)), cm.bins - 1)
        rgb = cm.bin_colors[b]
    return (int(rgb[0]), int(rgb[1]), int(rgb[2]))


def colormap_apply_field(cm: Colormap, weights: np.ndarray) -> np.ndarray:
    """Vectorized colormap_apply over a weight raster; returns (h, w, 3) uint8."""
    w = np.clip(weights, 0.0, 1.0)
    if cm.kind == "sequential":
        idx = np.floor(w * 255.0 + 0.5).astype(np.intp)
        return cm.lut[idx]
    b = np.minimum(np.floor(w * cm.bins).astype(np.intp), cm.bins - 1)
    return cm.bin_colors[b]
