"""Pure numpy implementations of the per-pixel kernels.

These define the reference semantics; ``_core.pyx`` must agree with them
to round-off.
"""
import numpy as np

# BT.601 luma
KR, KB = 0.299, 0.114
# sRGB (D65) linear RGB -> XYZ
SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
WHITE_D65 = (0.95047, 1.0, 1.08883)
LAB_DELTA = 6.0 / 29.0

# X/Xn and Z/Zn written as Y + chroma differences, so R=G=B yields
# X/Xn == Y == Z/Zn exactly and a = b = 0 without round-off.
X_DR = SRGB_TO_XYZ[0, 0] / WHITE_D65[0] - SRGB_TO_XYZ[1, 0]
X_DB = SRGB_TO_XYZ[0, 2] / WHITE_D65[0] - SRGB_TO_XYZ[1, 2]
Z_DR = SRGB_TO_XYZ[2, 0] / WHITE_D65[2] - SRGB_TO_XYZ[1, 0]
Z_DB = SRGB_TO_XYZ[2, 2] / WHITE_D65[2] - SRGB_TO_XYZ[1, 2]

PLANE_ORDER = ("Y", "U", "V", "Cb", "Cr", "L", "a", "b")


def _srgb_linear(c):
    c = c / 255.0
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _lab_f(t):
    d3 = LAB_DELTA ** 3
    return np.where(t > d3, np.cbrt(t), t / (3.0 * LAB_DELTA ** 2) + 4.0 / 29.0)


def rgb_planes(rgb):
    """Convert an (M, N, 3) uint8 image to an (8, M, N) float64 stack.

    Plane order is ``PLANE_ORDER``.
    """
    rgb = np.asarray(rgb, dtype=np.float64)
    R, G, B = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    out = np.empty((8,) + R.shape)

    Y = G + KR * (R - G) + KB * (B - G)
    out[0] = Y
    out[1] = 0.492 * (B - Y)
    out[2] = 0.877 * (R - Y)
    out[3] = np.clip(128.0 + (0.5 / (1.0 - KB)) * (B - Y), 0.0, 255.0)
    out[4] = np.clip(128.0 + (0.5 / (1.0 - KR)) * (R - Y), 0.0, 255.0)

    r, g, b = _srgb_linear(R), _srgb_linear(G), _srgb_linear(B)
    yy = SRGB_TO_XYZ[1, 0] * r + SRGB_TO_XYZ[1, 1] * g + SRGB_TO_XYZ[1, 2] * b
    xx = yy + X_DR * (r - g) + X_DB * (b - g)
    zz = yy + Z_DR * (r - g) + Z_DB * (b - g)
    fx, fy, fz = _lab_f(xx), _lab_f(yy), _lab_f(zz)
    out[5] = 116.0 * fy - 16.0
    out[6] = 500.0 * (fx - fy)
    out[7] = 200.0 * (fy - fz)
    return out


def mean_abs_sparse(X, coef, powers):
    """Row means of ``|X - |coef @ powers||``.

    X is (n, m) real, coef is (n, z) complex (amplitude-scaled modes),
    powers is (z, m) complex (eigenvalue powers per snapshot).
    """
    X = np.asarray(X, dtype=np.float64)
    if coef.shape[1] == 0:
        return np.abs(X).mean(axis=1)
    low = np.abs(coef @ powers)
    return np.abs(X - low).mean(axis=1)


def threshold_counts(values, truth, thresholds):
    """True- and false-positive counts of ``values > t`` for each threshold.

    ``thresholds`` must be sorted ascending. Returns two int64 arrays.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    truth = np.asarray(truth, dtype=bool).ravel()
    nt = len(thresholds)
    # number of thresholds strictly below each value
    above = np.searchsorted(thresholds, values, side="left")
    pos = np.bincount(above[truth], minlength=nt + 1)
    neg = np.bincount(above[~truth], minlength=nt + 1)
    # pixel with `above == c` exceeds thresholds 0..c-1
    tp = np.cumsum(pos[::-1])[::-1][1:]
    fp = np.cumsum(neg[::-1])[::-1][1:]
    return tp.astype(np.int64), fp.astype(np.int64)


def _axis_weights(n_in, n_out):
    scale = n_in / n_out
    src = (np.arange(n_out) + 0.5) * scale - 0.5
    src = np.clip(src, 0.0, n_in - 1)
    lo = np.floor(src).astype(np.intp)
    hi = np.minimum(lo + 1, n_in - 1)
    return lo, hi, src - lo


def resize_bilinear(plane, out_h, out_w):
    """Bilinear resampling with pixel-centre alignment and edge clamping."""
    plane = np.asarray(plane, dtype=np.float64)
    r0, r1, wr = _axis_weights(plane.shape[0], out_h)
    c0, c1, wc = _axis_weights(plane.shape[1], out_w)
    top = plane[r0][:, c0] * (1.0 - wc) + plane[r0][:, c1] * wc
    bot = plane[r1][:, c0] * (1.0 - wc) + plane[r1][:, c1] * wc
    return top * (1.0 - wr)[:, None] + bot * wr[:, None]
