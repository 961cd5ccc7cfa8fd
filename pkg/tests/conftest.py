import numpy as np
import pytest


def disk_image(size=128, radius=20, color=(255, 0, 0), background=(120, 120, 120)):
    """Gray canvas with a centred filled disk; returns (image, analytic mask)."""
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[...] = background
    c = (size - 1) / 2.0
    yy, xx = np.mgrid[:size, :size]
    mask = (yy - c) ** 2 + (xx - c) ** 2 <= radius ** 2
    img[mask] = color
    return img, mask


def square_image(size=64, side=16, color=(255, 0, 0), background=(120, 120, 120)):
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[...] = background
    lo = (size - side) // 2
    mask = np.zeros((size, size), dtype=bool)
    mask[lo:lo + side, lo:lo + side] = True
    img[mask] = color
    return img, mask


def f_beta(pred, truth, beta_squared=0.3):
    tp = np.count_nonzero(pred & truth)
    p = tp / np.count_nonzero(pred) if pred.any() else 1.0
    r = tp / np.count_nonzero(truth)
    return (1 + beta_squared) * p * r / (beta_squared * p + r) if p + r else 0.0


@pytest.fixture
def rng():
    return np.random.default_rng(20161016)


@pytest.fixture(scope="session")
def red_disk():
    return disk_image()
