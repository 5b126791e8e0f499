"""Random fixtures shared by the test modules."""

import numpy as np

from sublevel.sets import PolyhedralSet

F4 = np.array([[1.0, 3.0], [2.0, 2.0], [3.0, 1.0], [3.0, 3.0]])
F5 = np.array([[0.0, 2.0], [1.0, 1.0], [2.0, 0.0], [2.0, 1.0]])
ORTHANT2 = PolyhedralSet.orthant(2)


def random_pointed_cone(rng, dim, extra=0):
    """Simplicial cone ``{d : W d >= 0}`` with nonnegative normals, so it contains the orthant."""
    W = np.eye(dim) + rng.uniform(0.0, 0.4, (dim, dim)) * (rng.uniform(size=(dim, dim)) < 0.5)
    if extra:
        W = np.vstack([W, rng.uniform(0.1, 1.0, (extra, dim))])
    return PolyhedralSet.cone(W)


def random_direction(rng, dim):
    return rng.uniform(0.2, 2.0, dim)


def random_cloud(rng, n, dim, scale=10.0):
    return rng.uniform(0.0, scale, (n, dim))


def grid_cloud(rng, n, dim, levels=4):
    """Integer points, so ties and weak-but-not-strict dominance occur."""
    return rng.integers(0, levels, (n, dim)).astype(float)


def random_instance(rng, dim, m, p_zero=0.2):
    """Random polyhedral H with a direction k satisfying (H1).

    k has small integer entries so that rows meant to be orthogonal to it can
    be built from integers with ``<w, k> == 0`` exactly in floating point; a
    float round-off there would make the instance ill-posed for large t.
    Level rows (``<w, k> > 0``) are unit vectors with ``<w, k> >= 0.2 |k|``.
    """
    while True:
        k = rng.integers(-3, 4, dim).astype(float)
        if np.any(k):
            break
    kk = k @ k
    while True:
        rows = []
        while len(rows) < m:
            if rng.uniform() < p_zero:
                v = rng.integers(-3, 4, dim).astype(float)
                w = kk * v - (v @ k) * k
                if np.any(w):
                    rows.append(w / 2.0 ** np.floor(np.log2(np.abs(w).max())))  # exact rescale
                continue
            w = rng.standard_normal(dim)
            w /= np.linalg.norm(w)
            if w @ k < 0:
                w = -w
            if w @ k >= 0.2 * np.sqrt(kk):
                rows.append(w)
        W = np.array(rows)
        c = rng.uniform(-3.0, 3.0, m)
        try:
            return PolyhedralSet(W, c), k
        except ValueError:
            continue


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []
