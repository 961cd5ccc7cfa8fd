"""Fusion, segmentation and the end-to-end detection run."""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .color_saliency import ColorSaliencyConfig, color_saliency
from .colorspace import MIN_SIDE, all_planes, as_rgb_image, normalize_channel
from .dmd import DmdConfig
from .errors import ConfigError, RankZero, ShapeMismatch, TooFewSnapshots
from .luminance_saliency import LuminanceConfig, luminance_saliency

THRESHOLD_CAP = 0.95


@dataclass(frozen=True)
class PipelineConfig:
    color_weight: float = 0.8
    luminance_weight: float = 0.2
    segmentation_multiplier: float = 2.0
    max_dimension: int = 400

    def __post_init__(self):
        if self.color_weight < 0 or self.luminance_weight < 0:
            raise ConfigError("color_weight and luminance_weight must be >= 0")
        if not self.color_weight + self.luminance_weight > 0:
            raise ConfigError("color_weight + luminance_weight must be > 0")
        if not self.segmentation_multiplier > 0:
            raise ConfigError(
                f"segmentation_multiplier must be > 0, got {self.segmentation_multiplier}"
            )
        if int(self.max_dimension) != self.max_dimension or self.max_dimension < MIN_SIDE:
            raise ConfigError(
                f"max_dimension must be an integer >= {MIN_SIDE}, got {self.max_dimension}"
            )


@dataclass
class Detection:
    saliency: np.ndarray
    mask: np.ndarray
    working_shape: tuple
    dmd: dict = field(default_factory=dict)


def fuse_maps(color, lum, cfg=None):
    cfg = cfg or PipelineConfig()
    color = np.asarray(color, dtype=np.float64)
    lum = np.asarray(lum, dtype=np.float64)
    if color.shape != lum.shape:
        raise ShapeMismatch(f"color map {color.shape} vs luminance map {lum.shape}")
    wc, wl = cfg.color_weight, cfg.luminance_weight
    return normalize_channel((wc * color + wl * lum) / (wc + wl))


def adaptive_threshold(saliency, kappa):
    return min(kappa * float(np.mean(saliency)), THRESHOLD_CAP)


def segment(saliency, cfg=None):
    cfg = cfg or PipelineConfig()
    saliency = np.asarray(saliency, dtype=np.float64)
    return saliency > adaptive_threshold(saliency, cfg.segmentation_multiplier)


def working_shape(shape, max_dimension):
    M, N = shape[:2]
    if max(M, N) <= max_dimension:
        return (M, N)
    scale = max_dimension / max(M, N)
    return (max(MIN_SIDE, int(round(M * scale))), max(MIN_SIDE, int(round(N * scale))))


def resize_image(img, shape):
    if tuple(img.shape[:2]) == tuple(shape):
        return img
    chans = [kernels.resize_bilinear(img[..., c], *shape) for c in range(3)]
    return np.clip(np.rint(np.stack(chans, axis=-1)), 0, 255).astype(np.uint8)


def detect(img, config=None):
    """Saliency map and binary mask at the input resolution.

    ``config`` is a :class:`dmdsal.config.RunConfig`; defaults are used when
    omitted. A luminance branch that is rank-degenerate contributes an
    all-zero map rather than failing the run.
    """
    from .config import RunConfig

    config = config or RunConfig()
    img = as_rgb_image(img)
    shape = img.shape[:2]
    wshape = working_shape(shape, config.pipeline.max_dimension)
    work = resize_image(img, wshape)

    planes = all_planes(work)
    color, dumps = color_saliency(cfg=config.color, dmd_cfg=config.dmd, planes=planes)
    try:
        lum, lum_dumps = luminance_saliency(
            cfg=config.luminance, dmd_cfg=config.dmd, planes=planes
        )
    except (TooFewSnapshots, RankZero):
        lum = np.zeros(wshape)
        lum_dumps = {c: None for c in config.luminance.channels}
    dumps.update(lum_dumps)

    fused = fuse_maps(color, lum, config.pipeline)
    if wshape != shape:
        fused = np.clip(kernels.resize_bilinear(fused, *shape), 0.0, 1.0)
    return Detection(fused, segment(fused, config.pipeline), wshape, dumps)


__all__ = [
    "ColorSaliencyConfig",
    "Detection",
    "DmdConfig",
    "LuminanceConfig",
    "PipelineConfig",
    "adaptive_threshold",
    "detect",
    "fuse_maps",
    "segment",
    "working_shape",
]
