"""Luminance saliency from cumulative truncated-SVD reconstructions.

Snapshot k reconstructs the luminance plane from singular values
i0 .. i0+k-1. Background settles after a few terms while the object keeps
gaining detail, which DMD separates into zero-mode and residual parts.
"""
from dataclasses import dataclass

import numpy as np

from .color_saliency import score_to_map
from .colorspace import all_planes, normalize_channel
from .dmd import DmdConfig, SnapshotMatrix, separate
from .errors import ConfigError, NonFinite, TooFewSnapshots

LUMINANCE_CHANNELS = ("L", "Y")


@dataclass(frozen=True)
class LuminanceConfig:
    first_index: int = 3
    last_index: int = 20
    channels: tuple = LUMINANCE_CHANNELS

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(self.channels))
        if self.first_index < 2:
            raise ConfigError(f"first_index must be >= 2, got {self.first_index}")
        if self.last_index < self.first_index + 2:
            raise ConfigError(
                "last_index must be >= first_index + 2 (at least 3 snapshots), "
                f"got range {self.first_index}..{self.last_index}"
            )
        if not self.channels or any(c not in LUMINANCE_CHANNELS for c in self.channels):
            raise ConfigError(
                f"channels must be a non-empty subset of {LUMINANCE_CHANNELS}, got {self.channels}"
            )
        if len(set(self.channels)) != len(self.channels):
            raise ConfigError(f"channels must not repeat, got {self.channels}")


def _svd(p):
    p = np.asarray(p, dtype=np.float64)
    if not np.all(np.isfinite(p)):
        raise NonFinite("plane contains non-finite values")
    U, s, Vh = np.linalg.svd(p, full_matrices=False)
    return U, s, Vh


def numerical_rank(s, shape):
    if len(s) == 0 or s[0] == 0.0:
        return 0
    tol = s[0] * max(shape) * np.finfo(np.float64).eps
    return int(np.count_nonzero(s > tol))


def svd_reconstruct_range(p, i0, i1):
    """Sum of sigma_i u_i v_i^T for 1-indexed i in [i0, min(i1, rank)]."""
    if i0 < 1 or i1 < i0:
        raise ValueError(f"invalid singular value range {i0}..{i1}")
    U, s, Vh = _svd(p)
    hi = min(i1, numerical_rank(s, np.shape(p)))
    if i0 > hi:
        return np.zeros(np.shape(p))
    sl = slice(i0 - 1, hi)
    return (U[:, sl] * s[sl]) @ Vh[sl]


def build_luminance_sequence(p, cfg=None):
    """Snapshot matrix of cumulative reconstructions over i0..i0+k-1."""
    cfg = cfg or LuminanceConfig()
    U, s, Vh = _svd(p)
    hi = min(cfg.last_index, numerical_rank(s, np.shape(p)))
    n_snap = hi - cfg.first_index + 1
    if n_snap < 3:
        raise TooFewSnapshots(
            f"singular values {cfg.first_index}..{cfg.last_index} leave {max(n_snap, 0)} "
            "snapshots after rank clipping; need at least 3"
        )
    cols = np.empty((U.shape[0] * Vh.shape[1], n_snap))
    acc = np.zeros((U.shape[0], Vh.shape[1]))
    for k, i in enumerate(range(cfg.first_index - 1, hi)):
        acc += s[i] * np.outer(U[:, i], Vh[i])
        cols[:, k] = acc.ravel()
    return SnapshotMatrix(cols, 1.0)


def channel_map(p, cfg=None, dmd_cfg=None):
    """Saliency map of a single luminance plane and its DMD summary."""
    X = build_luminance_sequence(p, cfg)
    score, d, zero = separate(X, dmd_cfg or DmdConfig())
    return score_to_map(score, np.shape(p), np.abs(X.data).max()), d.summary(zero)


def luminance_saliency(img=None, cfg=None, dmd_cfg=None, planes=None):
    """Mean of the per-channel maps, re-normalized, plus DMD summaries."""
    cfg = cfg or LuminanceConfig()
    if planes is None:
        planes = all_planes(img)
    maps, summaries = [], {}
    for c in cfg.channels:
        m, summaries[c] = channel_map(planes[c], cfg, dmd_cfg)
        maps.append(m)
    return normalize_channel(np.mean(maps, axis=0)), summaries


def luminance_saliency_map(img, cfg=None, dmd_cfg=None):
    return luminance_saliency(img, cfg, dmd_cfg)[0]
