"""Tests for pure-state functionals, negativity and the Wootters quantities."""
import numpy as np
import pytest

from conftest import werner
from src.core import Cut, DensityMatrix, PureState, haar_pure, hs_density, random_unitary, reduce_pure
from src.errors import BadCut, OutOfRange, ShapeError
from src.measures import (
    MeasureId,
    binary_entropy,
    eof_from_concurrence,
    negativity,
    pure_measure,
    von_neumann_entropy,
    wootters_analysis,
    wootters_matrix,
)


@pytest.mark.parametrize('name, expected', [
    ('concurrence', 1.0),
    ('tangle', 1.0),
    ('entropy', 1.0),
    ('negativity', 0.5),
    ('g_concurrence', 0.5),
    ('renyi:2', 1.0),
    ('tsallis:2', 0.5),
])
def test_bell_state_values(bell, name, expected):
    assert pure_measure(MeasureId.parse(name), bell) == pytest.approx(expected)


@pytest.mark.parametrize('name', ['concurrence', 'tangle', 'entropy', 'negativity', 'g_concurrence', 'renyi:0.5'])
def test_product_state_is_unentangled(name):
    product = PureState(np.kron([0.6, 0.8], [1, 0]), (2, 2))
    assert pure_measure(MeasureId.parse(name), product) == pytest.approx(0.0, abs=1e-12)


def test_measures_are_homogeneous_of_degree_two(bell):
    half = PureState(0.5 * bell.amplitudes, (2, 2), normalized=False)
    for name in ('concurrence', 'entropy', 'g_concurrence'):
        m = MeasureId(name)
        assert pure_measure(m, half) == pytest.approx(0.25 * pure_measure(m, bell))


def test_measures_are_local_unitary_invariant():
    psi = haar_pure((2, 3), seed=21)
    local = np.kron(random_unitary(2, seed=1), random_unitary(3, seed=2))
    rotated = PureState(local @ psi.amplitudes, (2, 3))
    for name in ('concurrence', 'entropy', 'renyi:2', 'negativity', 'tsallis:2'):
        m = MeasureId.parse(name)
        assert pure_measure(m, rotated) == pytest.approx(pure_measure(m, psi), abs=1e-12)


def test_mixed_state_quantities_are_local_unitary_invariant():
    rho = hs_density((2, 2), 3, seed=23)
    local = np.kron(random_unitary(2, seed=3), random_unitary(2, seed=4))
    rotated = DensityMatrix(local @ rho.matrix @ local.conj().T, (2, 2))
    assert negativity(rotated) == pytest.approx(negativity(rho), abs=1e-12)
    before, after = wootters_analysis(rho), wootters_analysis(rotated)
    assert after.c_formation == pytest.approx(before.c_formation, abs=1e-10)
    assert after.c_assistance == pytest.approx(before.c_assistance, abs=1e-10)


def test_multipartite_state_needs_a_cut(ghz):
    with pytest.raises(BadCut):
        pure_measure(MeasureId('concurrence'), ghz)
    assert pure_measure(MeasureId('concurrence'), ghz, Cut((0,), (1, 2))) == pytest.approx(1.0)


def test_measure_parsing():
    assert MeasureId.parse('renyi:2') == MeasureId('renyi', 2.0)
    assert MeasureId.parse('tsallis(0.5)').parameter == 0.5
    assert str(MeasureId.parse('renyi=3')) == 'renyi:3'
    with pytest.raises(OutOfRange):
        MeasureId.parse('renyi')
    with pytest.raises(OutOfRange):
        MeasureId.parse('renyi:1')
    with pytest.raises(OutOfRange):
        MeasureId.parse('discord')
    with pytest.raises(OutOfRange):
        MeasureId('concurrence', 2.0)


def test_negativity_of_werner_state():
    assert negativity(werner(0.8)) == pytest.approx((3 * 0.8 - 1) / 4)
    assert negativity(werner(0.2)) == pytest.approx(0.0, abs=1e-12)


def test_entropies():
    assert von_neumann_entropy(DensityMatrix.maximally_mixed((2, 2))) == pytest.approx(2.0)
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0
    assert eof_from_concurrence(1.0) == pytest.approx(1.0)
    assert eof_from_concurrence(0.0) == pytest.approx(0.0)
    with pytest.raises(OutOfRange):
        eof_from_concurrence(1.5)


def test_wootters_on_werner_state():
    record = wootters_analysis(werner(0.8))
    assert record.c_formation == pytest.approx(0.7)
    assert record.c_formation <= record.c_assistance


def test_wootters_on_pure_state_matches_schmidt_concurrence():
    psi = haar_pure((2, 2), seed=5)
    record = wootters_analysis(DensityMatrix.from_pure(psi))
    expected = pure_measure(MeasureId('concurrence'), psi)
    assert record.c_formation == pytest.approx(expected, abs=1e-10)
    assert record.c_assistance == pytest.approx(expected, abs=1e-10)
    assert record.r_rank == 1
    assert record.equal


def test_wootters_svd_route_matches_literal_matrix():
    rho = hs_density((2, 2), 4, seed=13)
    record = wootters_analysis(rho)
    literal = np.sort(np.linalg.eigvalsh(wootters_matrix(rho)))[::-1]
    np.testing.assert_allclose(record.lambdas, literal, atol=1e-7)


def test_w_marginal_has_rank_one_r(w_state):
    record = wootters_analysis(reduce_pure(w_state, [0, 1]))
    assert record.c_formation == pytest.approx(2 / 3)
    assert record.c_assistance == pytest.approx(2 / 3)
    assert record.r_rank == 1


def test_wootters_needs_two_qubits():
    with pytest.raises(ShapeError):
        wootters_analysis(hs_density((2, 3), 2, seed=1))
