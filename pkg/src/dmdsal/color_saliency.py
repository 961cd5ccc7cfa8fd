"""Color-based saliency from two chroma channel matrices.

C1 stacks the (b, V, Cr) planes and C2 the (a, U, Cb) planes. Each matrix is
cycled into a period-3 snapshot sequence; the DMD zero mode models what is
shared across channels and the residual scores each pixel.
"""
from dataclasses import dataclass

import numpy as np

from .colorspace import all_planes, normalize_channel
from .dmd import DmdConfig, SnapshotMatrix, separate
from .errors import ConfigError, RankZero

C1_CHANNELS = ("b", "V", "Cr")
C2_CHANNELS = ("a", "U", "Cb")
COMBINE_RULES = ("max", "mean", "c1_only", "c2_only")

# raw score spreads below this fraction of the data scale are round-off
NOISE_FLOOR = 1e-9


@dataclass(frozen=True)
class ColorSaliencyConfig:
    repeats: int = 8
    combine_rule: str = "max"

    def __post_init__(self):
        if isinstance(self.repeats, bool) or int(self.repeats) != self.repeats or self.repeats < 2:
            raise ConfigError(f"repeats must be an integer >= 2, got {self.repeats!r}")
        if self.combine_rule not in COMBINE_RULES:
            raise ConfigError(
                f"combine_rule must be one of {COMBINE_RULES}, got {self.combine_rule!r}"
            )


@dataclass(frozen=True)
class ColorMatrixPair:
    c1: np.ndarray
    c2: np.ndarray


def center_channel(p):
    """Min-max normalize, then shift so the median (background) pixel sits at 0.

    Output lies in [-1, 1]; a constant plane gives all zeros.
    """
    q = normalize_channel(p)
    return q - np.median(q)


def _matrix(planes, names):
    return np.stack([center_channel(planes[c]).ravel() for c in names], axis=1)


def assemble_color_matrices(img=None, planes=None):
    """Build C1 = (b, V, Cr) and C2 = (a, U, Cb), one row per pixel (row-major)."""
    if planes is None:
        planes = all_planes(img)
    return ColorMatrixPair(_matrix(planes, C1_CHANNELS), _matrix(planes, C2_CHANNELS))


def permute_repeat(C, r):
    """Cycle the three columns of ``C`` r times: c0, c1, c2, c0, c1, c2, ...

    The sequence is exactly 3-periodic, so for independent columns its DMD
    spectrum is the three cube roots of unity.
    """
    C = np.asarray(C, dtype=np.float64)
    if C.ndim != 2 or C.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) matrix, got shape {C.shape}")
    if r < 2:
        raise ConfigError(f"repeats must be >= 2, got {r}")
    return SnapshotMatrix(np.tile(C, (1, r)), 1.0)


def score_to_map(score, shape, data_scale):
    """Reshape a per-pixel score and min-max normalize it.

    Spreads at round-off level relative to ``data_scale`` give the zero map.
    """
    score = np.asarray(score, dtype=np.float64)
    spread = score.max() - score.min()
    if spread <= NOISE_FLOOR * max(float(data_scale), np.finfo(float).tiny):
        return np.zeros(shape)
    return normalize_channel(score.reshape(shape))


def _matrix_map(C, shape, repeats, dmd_cfg):
    X = permute_repeat(C, repeats)
    try:
        score, d, zero = separate(X, dmd_cfg)
    except RankZero:
        return np.zeros(shape), None
    return score_to_map(score, shape, np.abs(X.data).max()), d.summary(zero)


def combine(m1, m2, rule):
    if rule == "max":
        out = np.maximum(m1, m2)
    elif rule == "mean":
        out = 0.5 * (m1 + m2)
    elif rule == "c1_only":
        out = m1
    elif rule == "c2_only":
        out = m2
    else:
        raise ConfigError(f"unknown combine_rule {rule!r}")
    return normalize_channel(out)


def color_saliency(img=None, cfg=None, dmd_cfg=None, planes=None):
    """Color saliency map plus per-matrix DMD summaries (None when degenerate)."""
    cfg = cfg or ColorSaliencyConfig()
    dmd_cfg = dmd_cfg or DmdConfig()
    if planes is None:
        planes = all_planes(img)
    shape = planes["Y"].shape
    pair = assemble_color_matrices(planes=planes)
    m1, s1 = _matrix_map(pair.c1, shape, cfg.repeats, dmd_cfg)
    m2, s2 = _matrix_map(pair.c2, shape, cfg.repeats, dmd_cfg)
    return combine(m1, m2, cfg.combine_rule), {"C1": s1, "C2": s2}


def color_saliency_map(img, cfg=None, dmd_cfg=None):
    return color_saliency(img, cfg, dmd_cfg)[0]
