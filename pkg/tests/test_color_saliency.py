import numpy as np
import pytest

from dmdsal.color_saliency import (
    ColorSaliencyConfig,
    assemble_color_matrices,
    center_channel,
    color_saliency,
    color_saliency_map,
    combine,
    permute_repeat,
)
from dmdsal.colorspace import all_planes
from dmdsal.dmd import classify_modes, exact_dmd, lowrank_reconstruction, sparse_component
from dmdsal.errors import ConfigError

from conftest import disk_image, square_image


def test_config_invariants():
    with pytest.raises(ConfigError):
        ColorSaliencyConfig(repeats=1)
    with pytest.raises(ConfigError):
        ColorSaliencyConfig(combine_rule="median")


def test_grayscale_matrices_are_zero(rng):
    g = rng.integers(0, 256, size=(9, 11), dtype=np.uint8)
    pair = assemble_color_matrices(np.stack([g] * 3, axis=-1))
    assert pair.c1.shape == pair.c2.shape == (99, 3)
    assert not pair.c1.any() and not pair.c2.any()


def test_single_red_pixel_cr_column():
    img = np.full((3, 3, 3), 120, dtype=np.uint8)
    img[1, 2] = (255, 0, 0)
    c1 = assemble_color_matrices(img).c1
    expected = np.zeros(9)
    expected[1 * 3 + 2] = 1.0  # row-major vectorization
    assert np.array_equal(c1[:, 2], expected)


def test_matrix_shape_and_range(rng):
    img = rng.integers(0, 256, size=(5, 8, 3), dtype=np.uint8)
    pair = assemble_color_matrices(img)
    for C in (pair.c1, pair.c2):
        assert C.shape == (40, 3)
        assert C.min() >= -1.0 and C.max() <= 1.0


def test_center_channel_puts_median_at_zero():
    p = np.array([[5.0, 5.0, 5.0], [5.0, 9.0, 1.0]])
    q = center_channel(p)
    assert np.median(q) == 0.0
    assert np.allclose(q, (p - 5.0) / 8.0)


def test_permute_repeat_cycle():
    C = np.arange(12.0).reshape(4, 3)
    X = permute_repeat(C, 2)
    assert X.shape == (4, 6)
    assert np.array_equal(X.data, C[:, [0, 1, 2, 0, 1, 2]])
    assert X.dt == 1.0


def test_permute_repeat_equal_columns_is_stationary():
    c = np.linspace(0.1, 1.0, 10)
    X = permute_repeat(np.stack([c, c, c], axis=1), 5)
    d = exact_dmd(X)
    zero, _ = classify_modes(d)
    S = sparse_component(X, lowrank_reconstruction(X, d, zero))
    assert np.max(np.abs(S)) < 1e-10


def test_permute_repeat_spectrum_is_cube_roots(rng):
    X = permute_repeat(rng.random((200, 3)), 8)
    assert X.shape[1] == 24
    mu = exact_dmd(X).eigenvalues
    assert len(mu) == 3
    assert np.allclose(np.abs(mu), 1.0, atol=1e-6)
    args = np.sort(np.mod(np.angle(mu), 2 * np.pi))
    assert np.allclose(args, [0, 2 * np.pi / 3, 4 * np.pi / 3], atol=1e-6)


def test_grayscale_map_is_zero(rng):
    g = rng.integers(0, 256, size=(20, 20), dtype=np.uint8)
    m = color_saliency_map(np.stack([g] * 3, axis=-1))
    assert np.array_equal(m, np.zeros((20, 20)))


def test_uniform_color_map_is_zero():
    img = np.empty((12, 12, 3), dtype=np.uint8)
    img[...] = (200, 30, 90)
    assert np.array_equal(color_saliency_map(img), np.zeros((12, 12)))


def test_red_square_separates():
    img, mask = square_image()
    m = color_saliency_map(img)
    assert m[mask].min() > np.percentile(m[~mask], 95)


@pytest.mark.parametrize("color", [(255, 0, 0), (0, 200, 0), (30, 60, 220), (240, 240, 40)])
def test_disk_colors_separate(color):
    img, mask = disk_image(size=64, radius=10, color=color)
    m = color_saliency_map(img)
    assert m[mask].min() > m[~mask].max()


def test_map_range_and_extremes(rng):
    img = rng.integers(0, 256, size=(24, 24, 3), dtype=np.uint8)
    m = color_saliency_map(img)
    assert m.min() == 0.0 and m.max() == 1.0


def test_invariant_to_affine_channel_rescaling(rng):
    planes = {k: np.round(v) for k, v in all_planes(
        rng.integers(0, 256, size=(16, 16, 3), dtype=np.uint8)).items()}
    scaled = {k: 2.0 * v + 3.0 for k, v in planes.items()}
    a, _ = color_saliency(planes=planes)
    b, _ = color_saliency(planes=scaled)
    assert np.array_equal(a, b)


def test_spatial_permutation_equivariance(rng):
    img = rng.integers(0, 256, size=(10, 12, 3), dtype=np.uint8)
    perm = rng.permutation(120)
    shuffled = img.reshape(-1, 3)[perm].reshape(10, 12, 3)
    a = color_saliency_map(img).ravel()[perm]
    b = color_saliency_map(shuffled).ravel()
    assert np.allclose(a, b, atol=1e-9)


def test_deterministic(rng):
    img = rng.integers(0, 256, size=(30, 30, 3), dtype=np.uint8)
    assert np.array_equal(color_saliency_map(img), color_saliency_map(img.copy()))


@pytest.mark.parametrize("rule", ["max", "mean", "c1_only", "c2_only"])
def test_combine_rules(rule, rng):
    m1, m2 = rng.random((4, 4)), rng.random((4, 4))
    out = combine(m1, m2, rule)
    assert out.min() == 0.0 and out.max() == 1.0
    if rule == "c1_only":
        assert np.allclose(out, (m1 - m1.min()) / np.ptp(m1))


def test_summaries_report_dmd_spectra():
    img, _ = disk_image(size=48, radius=8)
    _, dumps = color_saliency(img)
    assert set(dumps) == {"C1", "C2"}
    assert dumps["C2"]["rank"] >= 1
