"""Tests for decompositions, the convex-roof optimizer and zero-G-tail ensembles."""
from dataclasses import replace

import numpy as np
import pytest

from conftest import werner
from src.core import Cut, DensityMatrix, PureState, derive_seed, haar_pure, hs_density, random_isometry
from src.errors import AllSingular, BadSpec, NotIsometry, OutOfRange, PivotSingular, ShapeError
from src.measures import MeasureId, pure_measure, wootters_analysis
from src.roof import (
    RoofConfig,
    apply_isometry,
    decomposition_average,
    invariance_scan,
    pad,
    pair_rotation,
    roof_optimize,
    scaled_det,
    spectral_decomposition,
    zero_g_tail,
)

CONCURRENCE = MeasureId('concurrence')


def _mixture(vectors, weights, dims) -> DensityMatrix:
    rho = sum(w * np.outer(v, np.conj(v)) for v, w in zip(vectors, weights))
    return DensityMatrix(rho, dims)


def test_spectral_decomposition_reconstructs_state():
    rho = hs_density((2, 3), 4, seed=1)
    dec = spectral_decomposition(rho)
    assert dec.size == 4
    assert dec.reconstruction_error(rho) < 1e-12
    assert np.all(np.diff(dec.weights()) <= 1e-15)


def test_apply_isometry_preserves_state():
    rho = hs_density((2, 2), 3, seed=2)
    root = spectral_decomposition(rho)
    mixed = apply_isometry(root, random_isometry(7, 3, seed=3))
    assert mixed.size == 7
    assert mixed.reconstruction_error(rho) < 1e-12


def test_apply_isometry_rejects_non_isometry():
    root = spectral_decomposition(hs_density((2, 2), 2, seed=2))
    with pytest.raises(NotIsometry):
        apply_isometry(root, np.ones((3, 2)))
    with pytest.raises(NotIsometry):
        apply_isometry(root, np.eye(3))


def test_padding_keeps_average():
    rho = hs_density((2, 2), 2, seed=4)
    dec = spectral_decomposition(rho)
    padded = pad(dec, 4)
    assert padded.size == 4
    assert decomposition_average(CONCURRENCE, padded) == pytest.approx(decomposition_average(CONCURRENCE, dec))


def test_average_of_pure_ensemble_is_pure_value():
    psi = haar_pure((2, 3), seed=6)
    dec = spectral_decomposition(DensityMatrix.from_pure(psi))
    assert decomposition_average(CONCURRENCE, dec) == pytest.approx(pure_measure(CONCURRENCE, psi))


def test_rank_one_state_uses_single_restart(quick_roof):
    psi = haar_pure((2, 2), seed=8)
    result = roof_optimize(DensityMatrix.from_pure(psi), CONCURRENCE, cfg=quick_roof)
    assert result.restarts_used == 1
    assert result.value == pytest.approx(pure_measure(CONCURRENCE, psi))


def test_separable_mixture_reaches_zero(quick_roof):
    # degenerate spectrum: the eigenbasis may come out as two Bell states
    rho = DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5]), (2, 2))
    result = roof_optimize(rho, CONCURRENCE, mode='min', cfg=quick_roof)
    assert result.value == pytest.approx(0.0, abs=1e-8)
    assert result.decomposition.reconstruction_error(rho) < 1e-9


def test_formation_below_spectral_below_assistance():
    rho = hs_density((2, 3), 3, seed=10)
    cfg = RoofConfig(restarts=2, max_iterations=100, seed=7)
    spectral = decomposition_average(CONCURRENCE, spectral_decomposition(rho))
    formation = roof_optimize(rho, CONCURRENCE, mode='min', cfg=cfg)
    assistance = roof_optimize(rho, CONCURRENCE, mode='max', cfg=cfg)
    assert formation.value <= spectral + 1e-12
    assert spectral <= assistance.value + 1e-12
    assert formation.decomposition.reconstruction_error(rho) < 1e-9
    assert assistance.decomposition.reconstruction_error(rho) < 1e-9


def test_optimal_spectral_start_is_kept(quick_roof):
    # p |phi+><phi+| + (1 - p) |01><01| has C_f = C_a = p
    p = 0.6
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = _mixture([phi, np.array([0, 1, 0, 0])], [p, 1 - p], (2, 2))
    formation = roof_optimize(rho, CONCURRENCE, mode='min', cfg=quick_roof)
    assistance = roof_optimize(rho, CONCURRENCE, mode='max', cfg=quick_roof)
    assert formation.value == pytest.approx(p, abs=1e-9)
    assert assistance.value == pytest.approx(p, abs=1e-9)


def test_rank_two_formation_matches_wootters():
    rho = hs_density((2, 2), 2, seed=12)
    cfg = RoofConfig(ensemble_size=2, restarts=4, seed=3)
    result = roof_optimize(rho, CONCURRENCE, mode='min', cfg=cfg)
    assert result.converged
    assert result.value == pytest.approx(wootters_analysis(rho).c_formation, abs=1e-5)


def test_werner_formation():
    # C_f = (3p - 1) / 2
    result = roof_optimize(werner(0.8), CONCURRENCE, mode='min', cfg=RoofConfig(restarts=4, seed=7))
    assert result.value == pytest.approx(0.7, abs=1e-6)
    assert result.decomposition.reconstruction_error(werner(0.8)) < 1e-9


def test_full_rank_state_reaches_closed_form():
    # rank-4 state whose roof has shallow local minima about 1e-3 above c_f
    rho = hs_density((2, 2), 4, derive_seed(derive_seed(20240101, 0), 7))
    record = wootters_analysis(rho)
    cfg = RoofConfig(restarts=8, seed=derive_seed(derive_seed(20240101, 1), 7))
    formation = roof_optimize(rho, CONCURRENCE, mode='min', cfg=cfg)
    assistance = roof_optimize(rho, CONCURRENCE, mode='max', cfg=cfg)
    assert formation.decomposition.size == 16
    assert formation.value == pytest.approx(record.c_formation, abs=1e-5)
    assert assistance.value == pytest.approx(record.c_assistance, abs=1e-5)


@pytest.mark.parametrize('index', range(6))
def test_roof_matches_wootters_on_seeded_population(index):
    rho = hs_density((2, 2), 2 + index % 3, derive_seed(99, index))
    record = wootters_analysis(rho)
    cfg = RoofConfig(restarts=8, seed=derive_seed(100, index))
    formation = roof_optimize(rho, CONCURRENCE, mode='min', cfg=cfg).value
    assistance = roof_optimize(rho, CONCURRENCE, mode='max', cfg=cfg).value
    assert formation == pytest.approx(record.c_formation, abs=1e-5)
    assert assistance == pytest.approx(record.c_assistance, abs=1e-5)
    assert formation <= assistance + 1e-9


def test_thread_count_does_not_change_result(quick_roof):
    # more than one block of starts
    cfg = replace(quick_roof, restarts=12)
    rho = hs_density((2, 2), 3, seed=14)
    single = roof_optimize(rho, CONCURRENCE, cfg=cfg)
    pooled = roof_optimize(rho, CONCURRENCE, cfg=replace(cfg, threads=3))
    assert single.value == pooled.value
    np.testing.assert_array_equal(single.decomposition.vectors, pooled.decomposition.vectors)


def test_roof_optimize_validates_settings():
    rho = hs_density((2, 2), 3, seed=1)
    with pytest.raises(BadSpec):
        roof_optimize(rho, CONCURRENCE, mode='median')
    with pytest.raises(BadSpec):
        roof_optimize(rho, CONCURRENCE, cfg=RoofConfig(ensemble_size=2))


def test_roof_across_a_cut(ghz):
    rho = DensityMatrix.from_pure(ghz)
    result = roof_optimize(rho, CONCURRENCE, cut=Cut((0,), (1, 2)), cfg=RoofConfig(restarts=1))
    assert result.value == pytest.approx(1.0)


def test_invariance_scan_spread_on_generic_state():
    rho = hs_density((2, 2), 2, seed=16)
    scan = invariance_scan(rho, CONCURRENCE, samples=20, seed=1)
    assert scan.min_avg <= scan.max_avg
    assert scan.spread == pytest.approx(scan.max_avg - scan.min_avg)
    assert scan.spread > 1e-6
    with pytest.raises(OutOfRange):
        invariance_scan(rho, CONCURRENCE, samples=0)


def test_pair_rotation_zeroes_determinant():
    x1 = PureState(np.eye(2).reshape(-1) / np.sqrt(7), (2, 2), normalized=False)
    x2 = PureState(np.diag([1.0, 2.0]).reshape(-1) / np.sqrt(7), (2, 2), normalized=False)
    w, y, lam = pair_rotation(x1, x2)
    assert lam == pytest.approx(-0.5)
    assert abs(np.linalg.det(w.amplitudes.reshape(2, 2))) < 1e-12
    np.testing.assert_allclose(w.projector() + y.projector(), x1.projector() + x2.projector(), atol=1e-12)


def test_pair_rotation_edge_cases():
    singular = PureState(np.array([1.0, 0, 0, 0]) / 2, (2, 2), normalized=False)
    regular = PureState(np.eye(2).reshape(-1) / 2, (2, 2), normalized=False)
    with pytest.raises(PivotSingular):
        pair_rotation(singular, regular)
    w, y, lam = pair_rotation(regular, singular)
    assert lam is None
    assert w is singular and y is regular
    with pytest.raises(ShapeError):
        pair_rotation(PureState(np.ones(6) / 3, (2, 3), normalized=False), regular)


@pytest.mark.parametrize('d, r', [(2, 2), (2, 4), (3, 5)])
def test_zero_g_tail(d, r):
    rho = hs_density((d, d), r, seed=100 + 10 * d + r)
    dec = zero_g_tail(rho)
    assert dec.size == r
    assert dec.reconstruction_error(rho) < 1e-9
    for v in dec.vectors[1:]:
        assert abs(np.linalg.det(v.reshape(d, d))) < 1e-9
    assert abs(scaled_det(dec.vectors[0], d)) > 1e-10


def test_zero_g_tail_needs_a_nonsingular_eigenvector():
    rho = DensityMatrix(np.diag([0.5, 0.5, 0.0, 0.0]), (2, 2))
    with pytest.raises(AllSingular):
        zero_g_tail(rho)
    with pytest.raises(ShapeError):
        zero_g_tail(hs_density((2, 3), 2, seed=1))
