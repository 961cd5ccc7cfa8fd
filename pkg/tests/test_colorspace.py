import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from dmdsal.colorspace import (
    all_planes,
    as_rgb_image,
    cielab_to_rgb,
    normalize_channel,
    rgb_to_cielab,
    rgb_to_ycbcr,
    rgb_to_yuv,
)
from dmdsal.errors import DegenerateInput, NonFinite

# sRGB -> XYZ -> Lab evaluated with mpmath at 40 digits (D65, Yn = 1)
LAB_ORACLE = {
    (255, 0, 0): (53.2407941413072, 80.0924595964111, 67.203196515853),
    (0, 255, 0): (87.7347223527979, -86.1827164205346, 83.1793205026978),
    (0, 0, 255): (32.2970109328507, 79.1875198451222, -107.860161754148),
}


def pixel(rgb):
    return np.tile(np.array(rgb, dtype=np.uint8), (3, 3, 1))


def at(planes):
    return tuple(float(p[1, 1]) for p in planes)


def test_image_validation():
    with pytest.raises(DegenerateInput):
        as_rgb_image(np.zeros((2, 5, 3), np.uint8))
    with pytest.raises(DegenerateInput):
        as_rgb_image(np.zeros((4, 4), np.uint8))
    with pytest.raises(DegenerateInput):
        as_rgb_image(np.full((3, 3, 3), 300))
    assert as_rgb_image(np.full((3, 3, 3), 7)).dtype == np.uint8


@pytest.mark.parametrize(
    "rgb, expected",
    [((255, 255, 255), (255, 128, 128)), ((0, 0, 0), (0, 128, 128))],
)
def test_ycbcr_achromatic(rgb, expected):
    assert at(rgb_to_ycbcr(pixel(rgb))) == expected


def test_ycbcr_red():
    Y, Cb, Cr = at(rgb_to_ycbcr(pixel((255, 0, 0))))
    assert Y == pytest.approx(76.245, abs=1e-9)
    assert Cb == pytest.approx(128 - 0.168736 * 255, abs=1e-4)  # 84.97232
    assert Cr == 255.0  # clamped from 255.5


def test_yuv_examples():
    _, U, V = at(rgb_to_yuv(pixel((255, 0, 0))))
    assert V == pytest.approx(0.877 * (255 - 76.245), abs=1e-9)
    _, U, V = at(rgb_to_yuv(pixel((0, 0, 255))))
    assert U == pytest.approx(0.492 * (255 - 29.07), abs=1e-9)


@pytest.mark.parametrize("g", [0, 1, 37, 128, 254, 255])
def test_yuv_gray_is_exactly_achromatic(g):
    Y, U, V = at(rgb_to_yuv(pixel((g, g, g))))
    assert Y == g and U == 0.0 and V == 0.0


def test_lab_white_and_black():
    assert at(rgb_to_cielab(pixel((255, 255, 255)))) == pytest.approx((100, 0, 0), abs=1e-3)
    assert at(rgb_to_cielab(pixel((0, 0, 0)))) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("rgb", sorted(LAB_ORACLE))
def test_lab_against_high_precision_oracle(rgb):
    assert at(rgb_to_cielab(pixel(rgb))) == pytest.approx(LAB_ORACLE[rgb], abs=1e-4)


def test_achromatic_image_all_spaces(rng):
    g = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
    img = np.stack([g, g, g], axis=-1)
    p = all_planes(img)
    assert np.all(p["U"] == 0) and np.all(p["V"] == 0)
    assert np.all(p["Cb"] == 128) and np.all(p["Cr"] == 128)
    assert np.max(np.abs(p["a"])) <= 1e-6 and np.max(np.abs(p["b"])) <= 1e-6


def test_lab_round_trip(rng):
    px = rng.integers(0, 256, size=(1000, 1, 3), dtype=np.uint8)
    img = np.repeat(px, 3, axis=1)  # 1000 x 3 image
    L, a, b = rgb_to_cielab(img)
    back = cielab_to_rgb(L, a, b)
    assert np.max(np.abs(back - img)) <= 1.0


def test_spatial_permutation_equivariance(rng):
    img = rng.integers(0, 256, size=(6, 7, 3), dtype=np.uint8)
    perm = rng.permutation(42)
    shuffled = img.reshape(-1, 3)[perm].reshape(6, 7, 3)
    a, b = all_planes(img), all_planes(shuffled)
    for k in a:
        assert np.array_equal(a[k].ravel()[perm], b[k].ravel())


def test_normalize_examples():
    assert np.array_equal(normalize_channel(np.array([0.0, 50.0, 100.0])), [0, 0.5, 1])
    assert np.array_equal(normalize_channel(np.full((3, 3), 4.2)), np.zeros((3, 3)))
    assert np.array_equal(normalize_channel(np.array([-10.0, 0.0, 30.0])), [0, 0.25, 1])
    with pytest.raises(NonFinite):
        normalize_channel(np.array([0.0, np.nan]))


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (4, 5), elements=st.floats(-1e6, 1e6)))
def test_normalize_range_and_idempotence(p):
    q = normalize_channel(p)
    assert q.min() >= 0.0 and q.max() <= 1.0
    if q.max() == 1.0:
        assert np.array_equal(normalize_channel(q), q)
