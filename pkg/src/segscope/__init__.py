"""segscope: class-imbalance vs. segmentation-performance analysis engine.

Correlates per-class statistics of semantic-segmentation datasets with
per-class model IoU, renders saliency-weight superimpositions, and serves
the tables and rasters over a read-only HTTP API for interactive
exploration.
"""

__version__ = "0.1.0"

from .analytics import (
    LabStudyRecord,
    ScatterSeries,
    ScoreWeights,
    confidence_value,
    occlusion_score,
    pearson_r,
    score_task1,
    score_task2,
    series_for_task1,
    series_for_task3,
    spearman_r,
)
from .colormaps import Colormap, colormap_apply, colormap_names, get_colormap
from .compositor import category_at, render_mask_rgb, superimpose, weight_at
from .errors import SegscopeError
from .fixtures import generate_fixtures
from .ingest import (
    DatasetManifest,
    load_label_map,
    load_manifest,
    load_rgb,
    load_weight_field,
    resize_label_map,
    resize_rgb,
    save_label_map,
    save_rgb,
    save_weight_field,
)
from .metrics import (
    MaskTable,
    build_mask_table,
    iou_percent,
    object_size,
    occupancy_table,
    write_mask_table_csv,
)
from .model import (
    CategoryTable,
    CompositeParams,
    IGNORE_ID,
    LabelMap,
    MaskRecord,
    OccupancyRecord,
    RgbImage,
    WeightField,
    category_by_name,
    default_category_table,
    load_category_table,
    save_category_table,
)
