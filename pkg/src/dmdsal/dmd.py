"""Exact dynamic mode decomposition and zero-mode background separation.

A snapshot matrix holds one vectorized state per column. DMD fits a linear
map between consecutive columns; modes whose continuous frequency is close
to zero are stationary across the sequence and form the low-rank
(background) component, the residual is the sparse (foreground) part.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DegenerateInput, NonFinite, RankZero, ShapeMismatch
from . import kernels


@dataclass(frozen=True)
class DmdConfig:
    rank_tolerance: float = 1e-10
    zero_mode_epsilon: float = 1e-2

    def __post_init__(self):
        if not 0.0 < self.rank_tolerance < 1.0:
            raise ConfigError(f"rank_tolerance must lie in (0, 1), got {self.rank_tolerance}")
        if not self.zero_mode_epsilon > 0.0:
            raise ConfigError(f"zero_mode_epsilon must be > 0, got {self.zero_mode_epsilon}")


@dataclass(frozen=True)
class SnapshotMatrix:
    """Columns are snapshots x_1 ... x_m, spaced ``dt`` apart."""

    data: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise DegenerateInput(f"snapshot matrix must be 2-D, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 2:
            raise DegenerateInput(
                f"need at least 1 row and 2 snapshots, got shape {data.shape}"
            )
        if not np.all(np.isfinite(data)):
            raise NonFinite("snapshot matrix contains non-finite entries")
        if not self.dt > 0:
            raise DegenerateInput(f"dt must be > 0, got {self.dt}")
        object.__setattr__(self, "data", data)

    @property
    def shape(self):
        return self.data.shape


@dataclass(frozen=True)
class DmdDecomposition:
    eigenvalues: np.ndarray
    frequencies: np.ndarray
    modes: np.ndarray
    amplitudes: np.ndarray
    dt: float = 1.0
    singular_values: np.ndarray = field(default=None, repr=False)

    @property
    def rank(self):
        return len(self.eigenvalues)

    def summary(self, zero_modes=None):
        """JSON-friendly dict of the spectrum; non-finite parts become None."""

        def cplx(z):
            return [_finite_or_none(z.real), _finite_or_none(z.imag)]

        out = {
            "rank": self.rank,
            "dt": self.dt,
            "eigenvalues": [cplx(z) for z in self.eigenvalues],
            "frequencies": [cplx(z) for z in self.frequencies],
            "amplitude_magnitudes": [float(abs(b)) for b in self.amplitudes],
        }
        if zero_modes is not None:
            out["zero_modes"] = sorted(int(j) for j in zero_modes)
        return out


# sort keys are rounded so conjugate pairs tie exactly; then +imag first
_KEY_DECIMALS = 10


def _finite_or_none(x):
    x = float(x)
    return x if np.isfinite(x) else None


def as_snapshots(X, dt=1.0):
    if isinstance(X, SnapshotMatrix):
        return X
    return SnapshotMatrix(np.asarray(X, dtype=np.float64), dt)


def _log_frequencies(mu, dt):
    omega = np.empty_like(mu)
    nz = mu != 0
    omega[nz] = np.log(mu[nz]) / dt
    omega[~nz] = complex(-np.inf, 0.0)
    return omega


def exact_dmd(X, cfg=None):
    """Decompose a snapshot sequence.

    Uses the thin SVD of the leading snapshots truncated at
    ``rank_tolerance * sigma_1``, projected modes scaled to unit norm, and
    amplitudes fitted to the first snapshot by least squares. Modes are
    ordered by ``|omega|`` ascending, ties by ``|b|`` descending, then
    positive imaginary frequency first.

    Parameters
    ----------
    X : SnapshotMatrix or array_like, shape (n, m)
    cfg : DmdConfig, optional

    Returns
    -------
    DmdDecomposition
    """
    cfg = cfg or DmdConfig()
    X = as_snapshots(X)
    data = X.data
    X1, X2 = data[:, :-1], data[:, 1:]

    U, s, Vh = np.linalg.svd(X1, full_matrices=False)
    if s[0] == 0.0:
        raise RankZero("leading snapshots are all zero")
    r = int(np.count_nonzero(s >= cfg.rank_tolerance * s[0]))
    U, s, V = U[:, :r], s[:r], Vh[:r].T

    atilde = (U.T @ X2 @ V) / s
    mu, W = np.linalg.eig(atilde)
    mu = mu.astype(np.complex128)

    modes = U @ W.astype(np.complex128)
    modes /= np.linalg.norm(modes, axis=0)
    # canonical phase: largest-magnitude entry of each mode is real positive
    pivot = modes[np.argmax(np.abs(modes), axis=0), np.arange(r)]
    modes *= np.conj(pivot) / np.abs(pivot)

    b = np.linalg.lstsq(modes, data[:, 0].astype(np.complex128), rcond=None)[0]
    omega = _log_frequencies(mu, X.dt)

    mag = np.abs(b)
    if mag.size and mag.max() > 0:
        mag = mag / mag.max()  # scale-free so rescaled data sorts the same way
    order = np.lexsort((-omega.imag.round(_KEY_DECIMALS), -mag.round(_KEY_DECIMALS),
                        np.abs(omega).round(_KEY_DECIMALS)))
    return DmdDecomposition(
        eigenvalues=mu[order],
        frequencies=omega[order],
        modes=modes[:, order],
        amplitudes=b[order],
        dt=X.dt,
        singular_values=s,
    )


def classify_modes(d, cfg=None):
    """Split mode indices into (zero_modes, moving_modes) by ``|omega| < epsilon``."""
    cfg = cfg or DmdConfig()
    mag = np.abs(d.frequencies)
    zero = [j for j in range(d.rank) if mag[j] < cfg.zero_mode_epsilon]
    moving = [j for j in range(d.rank) if not mag[j] < cfg.zero_mode_epsilon]
    return zero, moving


def _zero_mode_terms(d, zero_modes, m):
    idx = np.asarray(sorted(zero_modes), dtype=np.intp)
    coef = d.modes[:, idx] * d.amplitudes[idx]
    powers = d.eigenvalues[idx, None] ** np.arange(m)[None, :]
    return coef, powers


def lowrank_reconstruction(X, d, zero_modes):
    """Modulus of the zero-mode part of the sequence, shape (n, m)."""
    X = as_snapshots(X)
    n, m = X.shape
    zero_modes = list(zero_modes)
    if any(j < 0 or j >= d.rank for j in zero_modes):
        raise ValueError(f"zero mode index out of range 0..{d.rank - 1}")
    if not zero_modes:
        return np.zeros((n, m))
    coef, powers = _zero_mode_terms(d, zero_modes, m)
    return np.abs(coef @ powers)


def sparse_component(X, L):
    X = as_snapshots(X)
    L = np.asarray(L, dtype=np.float64)
    if L.shape != X.shape:
        raise ShapeMismatch(f"low-rank part has shape {L.shape}, snapshots {X.shape}")
    return X.data - L


def sparse_score(X, d, zero_modes):
    """Per-row mean of |X - L| without forming L.

    Equivalent to ``np.abs(sparse_component(X, lowrank_reconstruction(...))).mean(1)``.
    """
    X = as_snapshots(X)
    m = X.shape[1]
    coef, powers = _zero_mode_terms(d, list(zero_modes), m)
    return kernels.mean_abs_sparse(X.data, coef, powers)


def separate(X, cfg=None):
    """Run decomposition, classification and the fused sparse score in one go.

    Returns ``(score, decomposition, zero_modes)``.
    """
    cfg = cfg or DmdConfig()
    X = as_snapshots(X)
    d = exact_dmd(X, cfg)
    zero, _ = classify_modes(d, cfg)
    return sparse_score(X, d, zero), d, zero
