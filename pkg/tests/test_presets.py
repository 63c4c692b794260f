"""Built-in map families: manifests, regimes, continuous extensions."""

import cmath

import numpy as np
import pytest

from perispec import (
    BadLambda0,
    BlockAlgebra,
    build_example1,
    build_example1_continuous,
    build_example2,
    build_example2_continuous,
    build_psi_swap,
    element_norm,
    ergodicity_check,
    group_closure_report,
    invariant_state,
    max_norm,
    point_spectrum,
    semigroup_law_check,
    unit_phase_power,
    unitality_check,
)

GENERIC = cmath.exp(2j * cmath.pi / 5)


def _values_match(computed, expected, tol=1e-9):
    return len(computed) == len(expected) and all(
        abs(a - b) <= tol for a, b in zip(computed, expected)
    )


def test_unit_phase_power_is_exact_at_integer_times():
    lam = cmath.exp(1.234j)
    assert unit_phase_power(lam, 1.0) == lam
    assert unit_phase_power(lam, 3.0) == lam**3
    assert unit_phase_power(lam, 0.0) == 1.0 + 0.0j


def test_unit_phase_power_uses_principal_branch_between_integers():
    lam = 1j
    assert unit_phase_power(lam, 0.5) == pytest.approx(
        cmath.exp(1j * cmath.pi / 4), abs=1e-15
    )
    assert unit_phase_power(-1.0 + 0.0j, 0.5) == pytest.approx(1j, abs=1e-15)


@pytest.mark.parametrize(
    "build,bad",
    [
        (build_example1, 1.0 + 0.0j),
        (build_example1, 0.5 + 0.0j),
        (build_example1, 1.1j),
        (build_example2, 1.0 + 0.0j),
        (build_example2, -1.0 + 0.0j),
        (build_example2, 0.3 + 0.4j),
    ],
)
def test_builders_reject_invalid_rotation_parameters(build, bad):
    with pytest.raises(BadLambda0):
        build(bad)


def test_example1_matrix_is_frozen_literal():
    phi, _, _ = build_example1(1j)
    expected = np.array(
        [
            [0.5, 0, 0, 0.5],
            [0, 1j, 0, 0],
            [0, 0, -1j, 0],
            [0.5, 0, 0, 0.5],
        ]
    )
    assert np.array_equal(phi.matrix, expected)
    assert unitality_check(phi)


@pytest.mark.parametrize(
    "lam,expected_points,is_group",
    [
        (GENERIC, 3, False),
        (cmath.exp(2j * cmath.pi / 3), 3, True),
        (-1.0 + 0.0j, 2, True),
    ],
)
def test_example1_regimes(lam, expected_points, is_group, tol):
    phi, state, manifest = build_example1(lam)
    spectrum = point_spectrum(phi, tol)
    assert len(spectrum.points) == expected_points
    assert _values_match(spectrum.values, manifest.expected_spectrum)
    assert spectrum.dimensions == manifest.expected_dims
    assert group_closure_report(spectrum).is_group == is_group
    assert manifest.notes["group"] == is_group
    assert ergodicity_check(phi, tol)
    assert element_norm(invariant_state(phi, tol).rho - state.rho) < 1e-12


@pytest.mark.parametrize(
    "build",
    [
        lambda: build_example1(GENERIC)[::2],
        lambda: build_example1(-1.0 + 0.0j)[::2],
        lambda: build_example2(GENERIC),
        lambda: build_example2(1j),
        lambda: build_example2(cmath.exp(1j * cmath.pi / 3)),
    ],
)
def test_manifest_vectors_are_eigenvectors(build, tol):
    phi, manifest = build()
    for value, basis in zip(
        manifest.expected_spectrum, manifest.canonical_eigenvectors
    ):
        for x in basis:
            assert element_norm(phi(x) - complex(value) * x) < 1e-12


@pytest.mark.parametrize(
    "lam,expected_points,expected_dims,is_group",
    [
        (GENERIC, 6, (1,) * 6, False),
        (cmath.exp(1j * cmath.pi / 3), 6, (1,) * 6, True),
        (1j, 4, None, True),
    ],
)
def test_example2_regimes(lam, expected_points, expected_dims, is_group, tol):
    phi, manifest = build_example2(lam)
    spectrum = point_spectrum(phi, tol)
    assert len(spectrum.points) == expected_points
    assert _values_match(spectrum.values, manifest.expected_spectrum)
    assert spectrum.dimensions == manifest.expected_dims
    if expected_dims is not None:
        assert spectrum.dimensions == expected_dims
    assert group_closure_report(spectrum).is_group == is_group
    assert manifest.notes["group"] == is_group
    assert ergodicity_check(phi, tol)


def test_example2_merged_regime_has_two_dimensional_eigenspaces(tol):
    phi, manifest = build_example2(1j)
    spectrum = point_spectrum(phi, tol)
    by_value = {
        complex(round(v.real, 9), round(v.imag, 9)): d
        for v, d in zip(spectrum.values, spectrum.dimensions)
    }
    assert by_value == {1 + 0j: 1, -1 + 0j: 1, 1j: 2, -1j: 2}
    assert manifest.algebra.blocks == (2, 2)


def test_psi_swap_exchanges_coordinates(tol):
    phi, u, state = build_psi_swap()
    assert np.array_equal(phi.matrix, [[0.0, 1.0], [1.0, 0.0]])
    assert element_norm(phi(u) + u) < 1e-15  # eigenvector at -1
    assert element_norm(invariant_state(phi, tol).rho - state.rho) < 1e-12


@pytest.mark.parametrize(
    "make_family,make_discrete",
    [
        (build_example1_continuous, lambda lam: build_example1(lam)[0]),
        (build_example2_continuous, lambda lam: build_example2(lam)[0]),
    ],
)
def test_continuous_families_interpolate_the_discrete_maps(
    make_family, make_discrete, tol
):
    family = make_family(GENERIC)
    assert max_norm(family.builder(1.0).matrix - make_discrete(GENERIC).matrix) == 0.0
    report = semigroup_law_check(family, [(0.4, 0.6), (1.5, 2.5)], tol)
    assert report.max_residual < 1e-12
    # time zero projects onto the diagonal instead of starting at the identity
    assert not family.identity_at_zero
    assert family.zero_time_note is not None
    ident = np.eye(family.algebra.dim)
    assert max_norm(family.builder(0.0).matrix - ident) > 0.4


def test_continuous_phase_table_matches_eigenvalues():
    for built in (build_example1(GENERIC)[::2], build_example2(GENERIC)):
        _, manifest = built
        for value, basis, phases in zip(
            manifest.expected_spectrum,
            manifest.canonical_eigenvectors,
            manifest.continuous_phases,
        ):
            assert len(phases) == len(basis)
            for phase in phases:
                # each winding rate reproduces its eigenvalue at t = 1
                assert cmath.exp(1j * phase) == pytest.approx(
                    complex(value), abs=1e-12
                )


def test_manifest_notes_record_the_regime():
    _, _, merged = build_example1(-1.0 + 0.0j)
    _, _, generic = build_example1(GENERIC)
    assert merged.notes["regime"] != generic.notes["regime"]
