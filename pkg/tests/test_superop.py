"""Superoperators: spectra, invariant states, closures, continuous families."""

import numpy as np
import pytest

from perispec import (
    BlockAlgebra,
    ContinuousFamily,
    NoPositiveFixedState,
    Superoperator,
    build_example1,
    build_example1_continuous,
    build_example2,
    build_example2_continuous,
    build_psi_swap,
    compose,
    continuous_eigen_check,
    element_norm,
    ergodicity_check,
    from_action,
    from_basis_action,
    group_closure_report,
    identity_superoperator,
    invariant_state,
    jordan_closure_check,
    max_norm,
    point_spectrum,
    power,
    semigroup_law_check,
    star_closure_check,
    unitality_check,
    vectorize,
)
from perispec.superop import PointSpectrum, SpectralPoint

from conftest import random_element, rng_for

GENERIC = np.exp(2j * np.pi / 5)


def _conjugation(algebra: BlockAlgebra, u: np.ndarray) -> Superoperator:
    return from_action(
        algebra,
        lambda x: algebra.element([u @ p @ u.conj().T for p in x.parts]),
    )


def test_identity_superoperator_fixes_everything(two_blocks):
    ident = identity_superoperator(two_blocks)
    x = random_element(two_blocks, rng_for(20))
    assert element_norm(ident(x) - x) == 0.0
    assert unitality_check(ident)


def test_from_action_matches_from_basis_action(mat2):
    u = np.array([[0.0, 1.0], [1.0, 0.0]])
    via_action = _conjugation(mat2, u)
    images = [via_action(b) for b in mat2.basis()]
    via_basis = from_basis_action(mat2, images)
    assert np.array_equal(via_action.matrix, via_basis.matrix)


def test_apply_is_linear_and_compose_matches_matrix_product(mat2):
    rng = rng_for(21)
    phi, _, _ = build_example1(GENERIC)
    psi = _conjugation(mat2, np.array([[0.0, 1.0], [1.0, 0.0]]))
    x = random_element(mat2, rng)
    y = random_element(mat2, rng)
    assert element_norm(phi(x + 2j * y) - (phi(x) + 2j * phi(y))) < 1e-12
    chained = compose(phi, psi)
    assert element_norm(chained(x) - phi(psi(x))) < 1e-12
    assert np.allclose(power(phi, 3).matrix, phi.matrix @ phi.matrix @ phi.matrix)


def test_unitality_check_rejects_scaled_identity(mat2):
    doubled = Superoperator(mat2, 2.0 * np.eye(mat2.dim))
    assert not unitality_check(doubled)


def test_point_spectrum_of_generic_single_block_map(tol):
    phi, _, _ = build_example1(GENERIC)
    spectrum = point_spectrum(phi, tol)
    assert spectrum.dimensions == (1, 1, 1)
    for expected in (1.0 + 0.0j, GENERIC, np.conj(GENERIC)):
        point = spectrum.find(expected)
        assert point is not None
        for x in point.basis:
            assert element_norm(phi(x) - complex(point.value) * x) < 1e-12


def test_point_spectrum_keeps_only_peripheral_values():
    algebra = BlockAlgebra((1, 1))
    phi = Superoperator(algebra, np.diag([1.0, 0.5]))
    spectrum = point_spectrum(phi)
    assert spectrum.values == (1.0 + 0.0j,)


def test_point_spectrum_merges_nearby_values():
    algebra = BlockAlgebra((1, 1))
    phi = Superoperator(algebra, np.diag([1.0, 1.0 + 5e-8]))
    spectrum = point_spectrum(phi)
    assert len(spectrum.points) == 1
    assert spectrum.points[0].dimension == 2


def test_ergodicity_distinguishes_examples(mat2, tol):
    phi, _, _ = build_example1(GENERIC)
    assert ergodicity_check(phi, tol)
    assert not ergodicity_check(identity_superoperator(mat2), tol)
    diagonal_fixer = _conjugation(mat2, np.diag([1.0, -1.0]))
    assert not ergodicity_check(diagonal_fixer, tol)


def test_invariant_state_of_single_block_family(tol):
    phi, expected, _ = build_example1(GENERIC)
    state = invariant_state(phi, tol)
    assert state.faithful
    assert element_norm(state.rho - expected.rho) < 1e-12
    assert np.allclose(state.rho.parts[0], 0.5 * np.eye(2))


def test_invariant_state_of_two_block_family(tol):
    phi, _ = build_example2(GENERIC)
    state = invariant_state(phi, tol)
    assert state.faithful
    for part in state.rho.parts:
        assert np.allclose(part, 0.25 * np.eye(2), atol=1e-12)


def test_invariant_state_of_coordinate_swap(tol):
    phi, _, expected = build_psi_swap()
    state = invariant_state(phi, tol)
    assert state.faithful
    assert element_norm(state.rho - expected.rho) < 1e-12


def test_invariant_state_requires_a_fixed_point(mat2):
    shrink = Superoperator(mat2, 0.5 * np.eye(mat2.dim))
    with pytest.raises(NoPositiveFixedState):
        invariant_state(shrink)


def test_star_and_jordan_closure_on_single_block_family(tol):
    phi, _, _ = build_example1(GENERIC)
    spectrum = point_spectrum(phi, tol)
    assert star_closure_check(phi, spectrum, tol).max_residual < 1e-12
    report = jordan_closure_check(phi, spectrum, tol)
    assert report.max_residual < 1e-12


def test_jordan_closure_counts_vanishing_products(tol):
    phi, _ = build_example2(GENERIC)
    report = jordan_closure_check(phi, point_spectrum(phi, tol), tol)
    assert report.max_residual < 1e-12
    assert report.vanished_count > 0


def _spectrum_of(*values: complex) -> PointSpectrum:
    return PointSpectrum(tuple(SpectralPoint(v, ()) for v in values))


@pytest.mark.parametrize(
    "values,expected",
    [
        ((1.0,), True),
        ((1.0, -1.0), True),
        ((1.0, 1j, -1.0, -1j), True),
        ((1.0, GENERIC, np.conj(GENERIC)), False),
        ((GENERIC, np.conj(GENERIC)), False),
    ],
)
def test_group_closure_frozen_sets(values, expected):
    report = group_closure_report(_spectrum_of(*values))
    assert report.is_group == expected


def test_group_closure_reports_structural_reasons():
    no_identity = group_closure_report(_spectrum_of(GENERIC, np.conj(GENERIC)))
    assert not no_identity.has_identity
    no_conjugates = group_closure_report(_spectrum_of(1.0, 1j))
    assert not no_conjugates.conjugation_closed
    missing = group_closure_report(
        _spectrum_of(1.0, GENERIC, np.conj(GENERIC))
    ).missing
    assert any(
        abs(l - GENERIC) < 1e-9 and abs(m - GENERIC) < 1e-9 for l, m, _ in missing
    )


def test_cyclic_phase_conjugation_spectrum_is_a_group(tol):
    n = 3
    omega = np.exp(2j * np.pi / n)
    algebra = BlockAlgebra((n,))
    phi = _conjugation(algebra, np.diag([omega**k for k in range(n)]))
    spectrum = point_spectrum(phi, tol)
    assert len(spectrum.values) == n
    assert sum(spectrum.dimensions) == n * n
    assert group_closure_report(spectrum).is_group


def test_semigroup_law_holds_for_continuous_families(tol):
    pairs = [(0.3, 1.7), (2.0, 2.0), (0.01, 4.99)]
    for family in (
        build_example1_continuous(GENERIC),
        build_example2_continuous(GENERIC),
    ):
        report = semigroup_law_check(family, pairs, tol)
        assert report.max_residual < 1e-12
        assert report.identity_residual_at_zero is None
        assert report.zero_time_note is not None


def test_semigroup_law_detects_violations(mat2, tol):
    phi, _, _ = build_example1(GENERIC)
    broken = ContinuousFamily(
        mat2, lambda t: Superoperator(mat2, (1.0 + t) * phi.matrix)
    )
    report = semigroup_law_check(broken, [(1.0, 1.0)], tol)
    assert report.max_residual > 0.1


def test_continuous_eigen_check_uses_principal_phase_by_default(tol):
    family = build_example1_continuous(GENERIC)
    _, _, manifest = build_example1(GENERIC)
    index = next(
        k
        for k, v in enumerate(manifest.expected_spectrum)
        if abs(v - GENERIC) < 1e-9
    )
    x = manifest.canonical_eigenvectors[index][0]
    ts = [0.25, 0.5, 1.0, 2.5, 4.0]
    assert continuous_eigen_check(family, GENERIC, x, ts, tol) < 1e-12


def test_continuous_eigen_check_needs_winding_phase_beyond_principal_branch(tol):
    family = build_example2_continuous(GENERIC)
    _, manifest = build_example2(GENERIC)
    index = next(
        k
        for k, v in enumerate(manifest.expected_spectrum)
        if abs(v - (-GENERIC)) < 1e-9
    )
    x = manifest.canonical_eigenvectors[index][0]
    winding = manifest.continuous_phases[index][0]
    ts = [0.25, 0.75, 1.5, 3.0]
    # the sector winds faster than the principal argument of its eigenvalue
    assert continuous_eigen_check(family, -GENERIC, x, ts, tol) > 0.1
    assert (
        continuous_eigen_check(family, -GENERIC, x, ts, tol, phase=winding) < 1e-12
    )
