"""The compiled kernels must agree with the numpy reference."""
import numpy as np
import pytest

from dmdsal import kernels
from dmdsal.evaluation import THRESHOLDS
from dmdsal.kernels import _fallback

BACKENDS = kernels.available_backends()
compiled_only = pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@compiled_only
def test_rgb_planes_agree(rng):
    img = rng.integers(0, 256, size=(33, 17, 3), dtype=np.uint8)
    a = BACKENDS["compiled"].rgb_planes(img)
    b = _fallback.rgb_planes(img)
    assert a.shape == b.shape == (8, 33, 17)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_rgb_planes_gray_exact(name):
    g = np.arange(256, dtype=np.uint8).reshape(16, 16)
    p = BACKENDS[name].rgb_planes(np.stack([g] * 3, axis=-1))
    assert np.all(p[1] == 0) and np.all(p[2] == 0)
    assert np.all(p[3] == 128) and np.all(p[4] == 128)
    assert np.all(p[6] == 0) and np.all(p[7] == 0)


@compiled_only
@pytest.mark.parametrize("z", [0, 1, 3])
def test_mean_abs_sparse_agree(rng, z):
    X = rng.standard_normal((200, 9))
    coef = rng.standard_normal((200, z)) + 1j * rng.standard_normal((200, z))
    mu = rng.standard_normal(z) + 1j * rng.standard_normal(z)
    powers = mu[:, None] ** np.arange(9)[None, :]
    a = BACKENDS["compiled"].mean_abs_sparse(X, coef, powers)
    b = _fallback.mean_abs_sparse(X, coef, powers)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_threshold_counts_exact(name, rng):
    v = np.concatenate([rng.random(500), THRESHOLDS, [0.0, 1.0]])
    t = rng.random(len(v)) > 0.4
    tp, fp = BACKENDS[name].threshold_counts(v, t, THRESHOLDS)
    for k in (0, 1, 17, 128, 254, 255):
        pred = v > THRESHOLDS[k]
        assert tp[k] == np.count_nonzero(pred & t)
        assert fp[k] == np.count_nonzero(pred & ~t)


@compiled_only
@pytest.mark.parametrize("shape", [(7, 9), (40, 12), (3, 3)])
def test_resize_agree(rng, shape):
    p = rng.random((20, 15))
    a = BACKENDS["compiled"].resize_bilinear(p, *shape)
    b = _fallback.resize_bilinear(p, *shape)
    assert np.allclose(a, b, rtol=0, atol=1e-13)


def test_resize_properties(rng):
    p = rng.random((12, 10))
    assert np.allclose(_fallback.resize_bilinear(p, 12, 10), p)
    ramp = np.tile(np.arange(8.0), (4, 1))
    up = _fallback.resize_bilinear(ramp, 4, 16)
    assert np.all(np.diff(up, axis=1) >= 0)
    assert up.min() >= 0 and up.max() <= 7
