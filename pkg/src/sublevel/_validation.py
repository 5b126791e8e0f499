"""Input coercion helpers shared by every module."""

import numpy as np

from .exceptions import DimensionError


def as_vector(y, dim=None, name="vector"):
    v = np.asarray(y, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"{name} must be a non-empty 1-d sequence, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite coordinates")
    if dim is not None and v.size != dim:
        raise DimensionError(f"{name} has dimension {v.size}, expected {dim}")
    return v


def as_cloud(F, dim=None, allow_empty=False, name="point cloud"):
    """Return ``F`` as a float array of shape (n_points, dim)."""
    X = np.asarray(F, dtype=float)
    if X.ndim == 1 and X.size == 0:
        X = X.reshape(0, dim or 0)
    if X.ndim != 2:
        raise DimensionError(f"{name} must be 2-d (n_points, dim), got shape {X.shape}")
    if X.shape[0] == 0 and not allow_empty:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} has non-finite coordinates")
    if dim is not None and X.shape[0] and X.shape[1] != dim:
        raise DimensionError(f"{name} has dimension {X.shape[1]}, expected {dim}")
    return X


def check_index(i, n):
    if not (0 <= int(i) < n):
        raise IndexError(f"index {i} out of range for {n} points")
    return int(i)


def distinct_from(F, i):
    """Boolean mask of the points of ``F`` that differ from ``F[i]`` (exact)."""
    return np.any(F != F[i], axis=1)
