"""Tests for nilpotent subspaces, G-monogamous states and W-class states."""
import numpy as np
import pytest

from src.charstates import (
    GMonoSpec,
    gerstenhaber_bound,
    gmono_decomposition,
    gmono_expected_average,
    gmono_state,
    is_nilpotent,
    nilpotent_subspace,
    product_split_check,
    random_gmono_spec,
    random_w_class,
    random_weights,
    sample_in_support,
    support_leakage,
    w_class_state,
)
from src.core import DensityMatrix, PureState, haar_pure, rank, reduce_pure
from src.errors import BadSpec, DimensionTooLarge, NotNormalized
from src.measures import MeasureId, wootters_analysis
from src.roof import invariance_scan

G_CONCURRENCE = MeasureId('g_concurrence')


def test_is_nilpotent():
    assert is_nilpotent(np.array([[0, 1, 2], [0, 0, 3], [0, 0, 0]]))
    assert not is_nilpotent(np.eye(3))
    assert not is_nilpotent(np.array([[0, 1], [1, 0]]))


def test_gerstenhaber_bound():
    assert [gerstenhaber_bound(d) for d in (1, 2, 3, 4)] == [0, 1, 3, 6]


def test_nilpotent_subspace_basis():
    space = nilpotent_subspace(3, 2, seed=4)
    assert space.dimension == 2
    gram = np.array([[np.vdot(a, b) for b in space.basis] for a in space.basis])
    np.testing.assert_allclose(gram, np.eye(2), atol=1e-10)
    assert all(is_nilpotent(z) for z in space.basis)
    assert np.linalg.cond(space.conjugator) <= 1e3


def test_nilpotent_subspace_elements():
    space = nilpotent_subspace(4, 6, seed=8)
    for k in range(5):
        z = space.random_element(seed=k)
        assert is_nilpotent(z)
        assert space.contains(z)
    assert not space.contains(np.eye(4))


def test_nilpotent_subspace_dimension_limit():
    with pytest.raises(DimensionTooLarge):
        nilpotent_subspace(2, 2, seed=1)
    assert nilpotent_subspace(2, 0, seed=1).dimension == 0


@pytest.mark.parametrize('d, r', [(2, 2), (3, 2), (3, 4)])
def test_gmono_state_average_is_decomposition_independent(d, r):
    spec = random_gmono_spec(d, r, seed=10 * d + r)
    weights = random_weights(r, seed=5)
    rho = gmono_state(spec, weights)
    rho.assert_valid()
    assert rho.dims == (d, d)
    assert rank(rho) == r
    scan = invariance_scan(rho, G_CONCURRENCE, samples=25, seed=3)
    assert scan.spread < 1e-7
    assert scan.min_avg == pytest.approx(gmono_expected_average(spec, weights), abs=1e-7)


def test_gmono_decomposition_reconstructs_state():
    spec = random_gmono_spec(3, 3, seed=2)
    weights = random_weights(3, seed=2)
    dec = gmono_decomposition(spec, weights)
    rho = gmono_state(spec, weights)
    assert dec.reconstruction_error(rho) < 1e-12
    for w in dec.vectors[1:]:
        assert abs(np.linalg.det(w.reshape(3, 3) / np.linalg.norm(w))) < 1e-10


def test_gmono_spec_validation():
    spec = random_gmono_spec(2, 2, seed=1)
    with pytest.raises(BadSpec):
        GMonoSpec(x=np.zeros((2, 2)), c=1.0, tail=spec.tail).validate()
    with pytest.raises(BadSpec):
        GMonoSpec(x=spec.x, c=0.0, tail=spec.tail).validate()
    with pytest.raises(BadSpec):
        GMonoSpec(x=spec.x, c=1.0, tail=spec.tail, z1=np.eye(2)).validate()
    with pytest.raises(BadSpec):
        gmono_state(spec, [1.0])
    with pytest.raises(BadSpec):
        gmono_state(spec, [1.0, -1.0])


def test_gmono_head_with_nilpotent_shift():
    spec = random_gmono_spec(3, 3, seed=6)
    shifted = GMonoSpec(x=spec.x, c=spec.c, tail=spec.tail, z1=spec.tail.random_element(seed=1))
    weights = random_weights(3, seed=7)
    rho = gmono_state(shifted, weights)
    scan = invariance_scan(rho, G_CONCURRENCE, samples=10, seed=1)
    assert scan.spread < 1e-7
    assert scan.min_avg == pytest.approx(gmono_expected_average(shifted, weights), abs=1e-7)


def test_w_class_state():
    psi = w_class_state(0.5, 0.5, 0.5, 0.5)
    assert psi.dims == (2, 2, 2)
    assert psi.amplitudes[4] == 0.5 and psi.amplitudes[7] == 0
    with pytest.raises(NotNormalized):
        w_class_state(1, 1, 0, 0)


def test_w_class_marginals_have_equal_roofs():
    for seed in range(10):
        record = wootters_analysis(reduce_pure(random_w_class(seed), [0, 1]))
        assert record.r_rank == 1
        assert record.c_formation == pytest.approx(record.c_assistance, abs=1e-10)


def test_product_split_detects_products():
    chi = haar_pure((2, 2), seed=3)
    phi = haar_pure((2,), seed=4)
    psi = PureState(np.kron(chi.amplitudes, phi.amplitudes), (2, 2, 2))
    split = product_split_check(psi)
    assert split.is_product
    rebuilt = np.kron(split.chi.amplitudes, split.phi.amplitudes)
    assert abs(np.vdot(rebuilt, psi.amplitudes)) == pytest.approx(1.0)


def test_product_split_rejects_w_state(w_state):
    split = product_split_check(w_state)
    assert not split.is_product
    assert split.chi is None
    assert split.purity == pytest.approx(5 / 9)


def test_sample_in_support():
    rho = reduce_pure(w_class_state(*([1 / np.sqrt(3)] * 3), 0.0), [0, 1])
    for seed in range(5):
        sigma = sample_in_support(rho, seed)
        sigma.assert_valid()
        assert support_leakage(rho, sigma) < 1e-12
        record = wootters_analysis(sigma)
        assert record.c_formation == pytest.approx(record.c_assistance, abs=1e-8)
    pure = DensityMatrix.from_pure(haar_pure((2, 2), seed=1))
    assert sample_in_support(pure, 0) is pure
