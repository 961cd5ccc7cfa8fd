"""RGB to YUV / YCbCr / CIELab conversion and channel normalization.

Conventions: BT.601 luma for both Y variants, full-range (JFIF) YCbCr clamped
to [0, 255], analog YUV scale factors 0.492 / 0.877, and sRGB with a D65
white for CIELab. All outputs are float64 planes, never re-quantized.
"""
import numpy as np

from . import kernels
from .errors import DegenerateInput, NonFinite
from .kernels._fallback import LAB_DELTA, SRGB_TO_XYZ, WHITE_D65

CHANNELS = kernels.PLANE_ORDER
MIN_SIDE = 3


def as_rgb_image(img, min_side=MIN_SIDE):
    """Validate and return an (M, N, 3) uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise DegenerateInput(f"expected an (M, N, 3) RGB raster, got shape {arr.shape}")
    if arr.shape[0] < min_side or arr.shape[1] < min_side:
        raise DegenerateInput(f"image must be at least {min_side}x{min_side}, got {arr.shape[:2]}")
    if arr.dtype != np.uint8:
        if np.any(arr < 0) or np.any(arr > 255) or np.any(arr != np.round(arr)):
            raise DegenerateInput("RGB values must be integers in [0, 255]")
        arr = arr.astype(np.uint8)
    return np.ascontiguousarray(arr)


def all_planes(img):
    """Dict of the eight channel planes keyed by channel id."""
    stack = kernels.rgb_planes(as_rgb_image(img))
    return dict(zip(CHANNELS, stack))


def rgb_to_ycbcr(img):
    p = all_planes(img)
    return p["Y"], p["Cb"], p["Cr"]


def rgb_to_yuv(img):
    p = all_planes(img)
    return p["Y"], p["U"], p["V"]


def rgb_to_cielab(img):
    p = all_planes(img)
    return p["L"], p["a"], p["b"]


def cielab_to_rgb(L, a, b):
    """Inverse of :func:`rgb_to_cielab`, returning float RGB in [0, 255]."""
    L, a, b = (np.asarray(v, dtype=np.float64) for v in (L, a, b))
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0

    def finv(f):
        return np.where(f > LAB_DELTA, f ** 3, 3.0 * LAB_DELTA ** 2 * (f - 4.0 / 29.0))

    xyz = np.stack([finv(fx) * WHITE_D65[0], finv(fy) * WHITE_D65[1], finv(fz) * WHITE_D65[2]], -1)
    lin = xyz @ np.linalg.inv(SRGB_TO_XYZ).T
    lin = np.clip(lin, 0.0, 1.0)
    srgb = np.where(lin <= 0.0031308, 12.92 * lin, 1.055 * lin ** (1 / 2.4) - 0.055)
    return srgb * 255.0


def normalize_channel(p):
    """Min-max rescale to [0, 1]; a constant plane maps to all zeros."""
    p = np.asarray(p, dtype=np.float64)
    if not np.all(np.isfinite(p)):
        raise NonFinite("channel plane contains non-finite values")
    lo, hi = p.min(), p.max()
    if hi == lo:
        return np.zeros_like(p)
    return (p - lo) / (hi - lo)
