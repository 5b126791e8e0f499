import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import F4, F5, ORTHANT2, grid_cloud, random_direction, random_pointed_cone
from sublevel.efficiency import eff, weff
from sublevel.exceptions import HypothesisError, PreconditionError
from sublevel.functional import PhiInstance, phi_values
from sublevel.norms import (
    OrderUnitNorm,
    norm,
    norm_phi_identity_check,
    norm_scalarize_argmin,
    norm_scalarize_bounded,
    norm_values,
)
from sublevel.scalarize import Classification, scalarize_bounded
from sublevel.sets import PolyhedralSet

UNIT = OrderUnitNorm(ORTHANT2, [1.0, 1.0])


def test_norm_examples():
    assert norm(UNIT, [3, -1]) == 3.0
    assert norm(UNIT, [0, 0]) == 0.0
    assert norm(UNIT, [1, 1]) == 1.0
    n = OrderUnitNorm(ORTHANT2, [3.0, 1.0])
    assert norm(n, [3, 1]) == 1.0
    np.testing.assert_array_equal(norm_values(UNIT, [[2, 1], [-4, 0]]), [2.0, 4.0])


def test_norm_rejects_bad_data():
    with pytest.raises(HypothesisError):
        OrderUnitNorm(ORTHANT2, [1.0, 0.0])
    with pytest.raises(PreconditionError):
        OrderUnitNorm(PolyhedralSet([[1.0, 0.0]], [0.0]), [1.0, 0.0])


def test_unit_ball_is_order_interval():
    rng = np.random.default_rng(0)
    D = random_pointed_cone(rng, 3)
    k = random_direction(rng, 3)
    n = OrderUnitNorm(D, k)
    Y = rng.normal(size=(500, 3)) * 3
    inside = np.all(D.normals @ (Y + k).T >= -1e-12, axis=0) & np.all(D.normals @ (k - Y).T >= -1e-12, axis=0)
    np.testing.assert_array_equal(n.values(Y) <= 1 + 1e-12, inside)


def test_identity_examples():
    assert phi_values(PhiInstance(ORTHANT2, [1, 1], [0, 0]), [[2.0, 1.0]])[0] == norm(UNIT, [2, 1])
    n = OrderUnitNorm(ORTHANT2, [3.0, 1.0])
    assert phi_values(PhiInstance(ORTHANT2, [3, 1], [0, 0]), [[3.0, 1.0]])[0] == 1.0 == norm(n, [3, 1])
    assert norm_phi_identity_check(UNIT, [0, 0]).ok


def test_identity_random():
    rng = np.random.default_rng(1)
    for _ in range(20):
        dim = int(rng.integers(2, 5))
        n = OrderUnitNorm(random_pointed_cone(rng, dim, extra=1), random_direction(rng, dim))
        r = norm_phi_identity_check(n, rng.normal(size=dim), seed=int(rng.integers(1000)))
        assert r.ok, r.max_deviation


vec = st.lists(st.floats(-100, 100), min_size=3, max_size=3).map(np.array)


@settings(max_examples=200, deadline=None)
@given(vec, vec, st.floats(-50, 50))
def test_norm_axioms(y, z, lam):
    rng = np.random.default_rng(2)
    n = OrderUnitNorm(random_pointed_cone(rng, 3), random_direction(rng, 3))
    ny = n(y)
    assert n(lam * y) == pytest.approx(abs(lam) * ny, rel=1e-12, abs=1e-300)
    assert n(y + z) <= ny + n(z) + 1e-9
    assert (ny == 0) == (not np.any(y))


def test_scaling_consistency():
    rng = np.random.default_rng(3)
    D, k = random_pointed_cone(rng, 3), random_direction(rng, 3)
    Y = rng.normal(size=(50, 3))
    for lam in (0.5, 2.0, 8.0):
        np.testing.assert_allclose(OrderUnitNorm(D, lam * k).values(Y), OrderUnitNorm(D, k).values(Y) / lam,
                                   rtol=1e-12)


def test_argmin_examples():
    out = norm_scalarize_argmin(F4, ORTHANT2, [1, 1], [0, 0], ORTHANT2)
    assert [float(v) for v in out.values] == [3.0, 2.0, 3.0, 3.0]
    assert out.psi == (1,) and out.classification is Classification.CERTIFIED_EFFICIENT
    out = norm_scalarize_argmin([[1.0, 1.0], [2.0, 2.0]], ORTHANT2, [1, 1], [0, 0], ORTHANT2)
    assert out.psi == (0,) and 0 in eff([[1.0, 1.0], [2.0, 2.0]], ORTHANT2).indices
    out = norm_scalarize_argmin([[4.0, 1.0]], ORTHANT2, [1, 1], [0, 0], ORTHANT2)
    assert out.psi == (0,) and out.unique
    with pytest.raises(PreconditionError):
        norm_scalarize_argmin([[-1.0, 1.0]], ORTHANT2, [1, 1], [0, 0], ORTHANT2)


def test_bounded_examples():
    r = norm_scalarize_bounded(F4, ORTHANT2, [0, 0])
    assert r.efficient == (0, 1, 2) and r.weakly_efficient == (0, 1, 2)
    c0 = r.certificates[0]
    assert c0.k_used == (1.0, 3.0) and float(c0.self_value) == 1.0
    assert [float(v) for _, v in c0.values] == [2.0, 3.0, 3.0]
    c3 = r.certificates[3]
    np.testing.assert_allclose([float(v) for _, v in c3.values], [1.0, 2 / 3, 1.0], rtol=1e-15)
    assert c3.witness == 1
    shifted = F5 + 1
    r = norm_scalarize_bounded(shifted, ORTHANT2, [0, 0])
    assert r.efficient == (0, 1, 2) and r.weakly_efficient == (0, 1, 2, 3)


def test_bounded_agrees_with_phi_route():
    rng = np.random.default_rng(4)
    for _ in range(20):
        dim = int(rng.integers(2, 4))
        D = random_pointed_cone(rng, dim)
        F = grid_cloud(rng, 20, dim)
        a = F.min(axis=0) - 1
        r = norm_scalarize_bounded(F, D, a)
        s = scalarize_bounded(F, D, a, "lower")
        assert r.efficient == s.efficient == eff(F, D).indices
        assert r.weakly_efficient == s.weakly_efficient == weff(F, D).indices
