"""Superoperators on block algebras and their peripheral point spectra.

A linear map on a block algebra is stored as its matrix with respect to the
row-major vectorization of the blocks. The peripheral point spectrum collects
the eigenvalues of unit modulus together with orthonormal eigenspace bases;
closure checks probe the algebraic structure of those eigenspaces under the
adjoint, the symmetrized product, and products of eigenvalues.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    BlockAlgebra,
    Tolerances,
    adjoint,
    devectorize,
    element_norm,
    general_eigenvalues,
    hermitian_eig,
    jordan_product,
    max_norm,
    null_space,
    scalar_multiple_of_identity,
    vectorize,
)
from .errors import (
    AlgebraMismatch,
    ConvergenceFailure,
    DimensionMismatch,
    NoPositiveFixedState,
)

__all__ = [
    "PERIPHERAL_TOL",
    "MERGE_TOL",
    "Superoperator",
    "SpectralPoint",
    "PointSpectrum",
    "InvariantState",
    "StarClosureReport",
    "JordanClosureReport",
    "GroupClosureReport",
    "ContinuousFamily",
    "SemigroupLawReport",
    "identity_superoperator",
    "from_basis_action",
    "from_action",
    "apply",
    "compose",
    "power",
    "unitality_check",
    "point_spectrum",
    "ergodicity_check",
    "invariant_state",
    "star_closure_check",
    "jordan_closure_check",
    "group_closure_report",
    "semigroup_law_check",
    "continuous_eigen_check",
]

# Default radius for treating an eigenvalue as peripheral and for merging
# numerically split copies of one eigenvalue.
PERIPHERAL_TOL = 1e-7
MERGE_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class Superoperator:
    """A linear map on a block algebra, as a matrix acting on vectorizations."""

    algebra: BlockAlgebra
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128, order="C")
        d = self.algebra.dim
        if m.shape != (d, d):
            raise DimensionMismatch(
                f"superoperator matrix of shape {m.shape} does not fit dim {d}"
            )
        if not np.all(np.isfinite(m)):
            raise ValueError("superoperator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return apply(self, x)


@dataclass(frozen=True)
class SpectralPoint:
    """One peripheral eigenvalue with an orthonormal eigenspace basis."""

    value: complex
    basis: tuple[AlgebraElement, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class PointSpectrum:
    """Peripheral spectral points sorted by (real, imaginary) part."""

    points: tuple[SpectralPoint, ...]

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(p.value for p in self.points)

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(p.dimension for p in self.points)

    def find(self, value: complex, radius: float = MERGE_TOL) -> SpectralPoint | None:
        for point in self.points:
            if abs(point.value - value) <= radius:
                return point
        return None


@dataclass(frozen=True)
class InvariantState:
    """Positive trace-one fixed point of the dual map."""

    rho: AlgebraElement
    faithful: bool


@dataclass(frozen=True)
class StarClosureReport:
    """Residuals of the adjoint of each eigenvector against the conjugate
    eigenvalue."""

    max_residual: float
    entries: tuple[tuple[complex, int, float], ...]


@dataclass(frozen=True)
class JordanClosureReport:
    """Residuals of symmetrized products of eigenvectors against the product
    eigenvalue. Entries record (value1, index1, value2, index2, residual,
    vanished); products below tolerance are closed vacuously."""

    max_residual: float
    entries: tuple[tuple[complex, int, complex, int, float, bool], ...]

    @property
    def vanished_count(self) -> int:
        return sum(1 for e in self.entries if e[5])


@dataclass(frozen=True)
class GroupClosureReport:
    """Whether the peripheral eigenvalues form a group under multiplication.

    ``missing`` lists triples (lam, mu, lam * mu) whose product is not among
    the spectral values within the closure radius.
    """

    is_group: bool
    has_identity: bool
    conjugation_closed: bool
    missing: tuple[tuple[complex, complex, complex], ...]


@dataclass(frozen=True)
class ContinuousFamily:
    """One-parameter family t -> superoperator on a fixed algebra.

    ``identity_at_zero`` records whether the family starts at the identity
    map; families that average part of the input independently of t do not,
    and carry an explanatory note instead of being repaired.
    """

    algebra: BlockAlgebra
    builder: Callable[[float], Superoperator]
    identity_at_zero: bool = True
    zero_time_note: str | None = None


@dataclass(frozen=True)
class SemigroupLawReport:
    """Largest residual of builder(s + t) against builder(s) builder(t)."""

    max_residual: float
    pairs: tuple[tuple[float, float, float], ...]
    identity_residual_at_zero: float | None
    zero_time_note: str | None


def identity_superoperator(algebra: BlockAlgebra) -> Superoperator:
    return Superoperator(algebra, np.eye(algebra.dim))


def from_basis_action(
    algebra: BlockAlgebra, images: Sequence[AlgebraElement]
) -> Superoperator:
    """Build the matrix from the images of the matrix-unit basis, in
    vectorization order."""
    if len(images) != algebra.dim:
        raise DimensionMismatch(
            f"expected {algebra.dim} basis images, got {len(images)}"
        )
    columns = []
    for image in images:
        if image.algebra != algebra:
            raise AlgebraMismatch("basis image lives in a different algebra")
        columns.append(vectorize(image))
    return Superoperator(algebra, np.column_stack(columns))


def from_action(
    algebra: BlockAlgebra, action: Callable[[AlgebraElement], AlgebraElement]
) -> Superoperator:
    """Build the matrix by applying a linear action to the matrix-unit basis."""
    return from_basis_action(algebra, [action(b) for b in algebra.basis()])


def apply(phi: Superoperator, x: AlgebraElement) -> AlgebraElement:
    if x.algebra != phi.algebra:
        raise AlgebraMismatch("element does not live in the superoperator's algebra")
    return devectorize(phi.algebra, phi.matrix @ vectorize(x))


def compose(phi: Superoperator, psi: Superoperator) -> Superoperator:
    """The map x -> phi(psi(x))."""
    if phi.algebra != psi.algebra:
        raise AlgebraMismatch("cannot compose maps on different algebras")
    return Superoperator(phi.algebra, phi.matrix @ psi.matrix)


def power(phi: Superoperator, n: int) -> Superoperator:
    if n < 0:
        raise ValueError("only nonnegative powers are defined")
    return Superoperator(phi.algebra, np.linalg.matrix_power(phi.matrix, n))


def unitality_check(phi: Superoperator, tol: Tolerances = DEFAULT_TOL) -> bool:
    one = phi.algebra.identity()
    return element_norm(apply(phi, one) - one) <= tol.eq_tol


def _sort_key(z: complex) -> tuple[float, float]:
    # Rounding keeps the (real, imaginary) order stable when eigenvalue noise
    # perturbs values that agree in their real part.
    return (round(z.real, 12), round(z.imag, 12))


def _cluster_values(
    values: Sequence[complex], radius: float
) -> list[tuple[complex, float]]:
    """Greedy merge of complex values within ``radius``; returns (mean, spread)
    per cluster sorted by the (real, imaginary) part of the mean."""
    clusters: list[list[complex]] = []
    for v in sorted(values, key=_sort_key):
        for cluster in clusters:
            mean = sum(cluster) / len(cluster)
            if abs(v - mean) <= radius:
                cluster.append(v)
                break
        else:
            clusters.append([v])
    merged = [
        (mean, max(abs(v - mean) for v in c))
        for c in clusters
        for mean in (sum(c) / len(c),)
    ]
    return sorted(merged, key=lambda pair: _sort_key(pair[0]))


def point_spectrum(
    phi: Superoperator,
    tol: Tolerances = DEFAULT_TOL,
    peripheral_tol: float = PERIPHERAL_TOL,
    merge_tol: float = MERGE_TOL,
) -> PointSpectrum:
    """Peripheral eigenvalues of the map with orthonormal eigenspace bases.

    Eigenvalues within ``peripheral_tol`` of the unit circle are kept,
    numerically split copies within ``merge_tol`` of each other are merged,
    and each eigenspace is the kernel of (matrix - lambda id). Every returned
    basis element is re-verified as an eigenvector.
    """
    eigenvalues = general_eigenvalues(phi.matrix)
    peripheral = [complex(v) for v in eigenvalues if abs(abs(v) - 1.0) <= peripheral_tol]
    points = []
    eye = np.eye(phi.algebra.dim)
    for value, spread in _cluster_values(peripheral, merge_tol):
        # merged clusters need an absolute singular-value floor: each member
        # direction sits at distance |v - mean| <= spread from the kernel
        floor = spread + tol.rank_tol * max(1.0, spread)
        kernel = null_space(phi.matrix - value * eye, tol, atol=floor)
        if not kernel:
            raise ConvergenceFailure(
                f"eigenvalue {value!r} reported but its eigenspace came back empty"
            )
        basis = []
        for vec in kernel:
            x = devectorize(phi.algebra, vec)
            residual = element_norm(apply(phi, x) - value * x)
            if residual > max(tol.eq_tol, 10.0 * tol.rank_tol):
                raise ConvergenceFailure(
                    f"eigenvector drift {residual:.3e} at eigenvalue {value!r}"
                )
            basis.append(x)
        points.append(SpectralPoint(value, tuple(basis)))
    return PointSpectrum(tuple(points))


def ergodicity_check(
    phi: Superoperator,
    tol: Tolerances = DEFAULT_TOL,
    spectrum: PointSpectrum | None = None,
) -> bool:
    """True when the fixed space is exactly the scalar multiples of the
    identity."""
    if spectrum is None:
        spectrum = point_spectrum(phi, tol)
    fixed = spectrum.find(1.0 + 0.0j)
    if fixed is None or fixed.dimension != 1:
        return False
    return scalar_multiple_of_identity(fixed.basis[0], tol) is not None


def invariant_state(
    phi: Superoperator, tol: Tolerances = DEFAULT_TOL
) -> InvariantState:
    """Positive trace-one fixed point of the dual map.

    The dual acts by the conjugate transpose of the matrix. The candidate is
    the orthogonal projection of the maximally mixed state onto the dual
    fixed space, which is again a fixed point; it is then verified to be
    Hermitian, positive semidefinite, and of unit trace.
    """
    d = phi.algebra.dim
    kernel = null_space(phi.matrix.conj().T - np.eye(d), tol)
    if not kernel:
        raise NoPositiveFixedState("the dual map has no fixed point")
    mixed = vectorize(phi.algebra.scalar(1.0 / phi.algebra.total_size))
    projected = np.zeros(d, dtype=np.complex128)
    for vec in kernel:
        projected += np.vdot(vec, mixed) * vec
    candidate = devectorize(phi.algebra, projected)
    herm_defect = element_norm(candidate - adjoint(candidate))
    if herm_defect > tol.eq_tol:
        raise NoPositiveFixedState(
            f"projected fixed point is not Hermitian (defect {herm_defect:.3e})"
        )
    candidate = 0.5 * (candidate + adjoint(candidate))
    trace = candidate.trace()
    if abs(trace) <= tol.eq_tol:
        raise NoPositiveFixedState("projected fixed point has vanishing trace")
    rho = (1.0 / trace) * candidate
    fixed_residual = element_norm(
        devectorize(phi.algebra, phi.matrix.conj().T @ vectorize(rho)) - rho
    )
    if fixed_residual > max(tol.eq_tol, 10.0 * tol.rank_tol):
        raise NoPositiveFixedState(
            f"candidate drifts under the dual map by {fixed_residual:.3e}"
        )
    least = min(float(hermitian_eig(p, tol)[0][0]) for p in rho.parts)
    if least < -tol.psd_tol:
        raise NoPositiveFixedState(
            f"fixed point of the dual map is not PSD (least eigenvalue {least:.3e})"
        )
    return InvariantState(rho=rho, faithful=least > tol.rank_tol)


def star_closure_check(
    phi: Superoperator,
    spectrum: PointSpectrum | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> StarClosureReport:
    """Check that adjoints of eigenvectors are eigenvectors at the conjugate
    eigenvalue."""
    if spectrum is None:
        spectrum = point_spectrum(phi, tol)
    entries = []
    worst = 0.0
    for point in spectrum.points:
        for index, x in enumerate(point.basis):
            xs = adjoint(x)
            residual = element_norm(
                apply(phi, xs) - complex(point.value).conjugate() * xs
            )
            worst = max(worst, residual)
            entries.append((point.value, index, residual))
    return StarClosureReport(max_residual=worst, entries=tuple(entries))


def jordan_closure_check(
    phi: Superoperator,
    spectrum: PointSpectrum | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> JordanClosureReport:
    """Check that symmetrized products of eigenvectors are eigenvectors at the
    product eigenvalue; vanishing products close vacuously."""
    if spectrum is None:
        spectrum = point_spectrum(phi, tol)
    entries = []
    worst = 0.0
    for p1 in spectrum.points:
        for i, x in enumerate(p1.basis):
            for p2 in spectrum.points:
                for j, y in enumerate(p2.basis):
                    product = jordan_product(x, y)
                    vanished = element_norm(product) <= tol.eq_tol
                    residual = element_norm(
                        apply(phi, product) - p1.value * p2.value * product
                    )
                    worst = max(worst, residual)
                    entries.append(
                        (p1.value, i, p2.value, j, residual, vanished)
                    )
    return JordanClosureReport(max_residual=worst, entries=tuple(entries))


def group_closure_report(
    spectrum: PointSpectrum, closure_tol: float = MERGE_TOL
) -> GroupClosureReport:
    """Decide whether the spectral values form a multiplicative group.

    Unit-modulus values form a group exactly when they contain 1, are closed
    under conjugation, and are closed under pairwise products; each product
    failure is listed.
    """
    values = list(spectrum.values)

    def present(z: complex) -> bool:
        return any(abs(z - v) <= closure_tol for v in values)

    has_identity = present(1.0 + 0.0j)
    conjugation_closed = all(present(v.conjugate()) for v in values)
    missing = []
    for lam in values:
        for mu in values:
            if not present(lam * mu):
                missing.append((lam, mu, lam * mu))
    is_group = has_identity and conjugation_closed and not missing
    return GroupClosureReport(
        is_group=is_group,
        has_identity=has_identity,
        conjugation_closed=conjugation_closed,
        missing=tuple(missing),
    )


def semigroup_law_check(
    family: ContinuousFamily,
    pairs: Sequence[tuple[float, float]],
    tol: Tolerances = DEFAULT_TOL,
) -> SemigroupLawReport:
    """Residuals of the semigroup law over the given (s, t) pairs.

    When the family claims to start at the identity, the residual of
    builder(0) against the identity matrix is included; otherwise the
    family's own note on its time-zero behavior is passed through.
    """
    entries = []
    worst = 0.0
    for s, t in pairs:
        lhs = family.builder(s + t).matrix
        rhs = family.builder(s).matrix @ family.builder(t).matrix
        residual = max_norm(lhs - rhs)
        worst = max(worst, residual)
        entries.append((float(s), float(t), residual))
    identity_residual = None
    if family.identity_at_zero:
        identity_residual = max_norm(
            family.builder(0.0).matrix - np.eye(family.algebra.dim)
        )
        worst = max(worst, identity_residual)
    return SemigroupLawReport(
        max_residual=worst,
        pairs=tuple(entries),
        identity_residual_at_zero=identity_residual,
        zero_time_note=family.zero_time_note,
    )


def continuous_eigen_check(
    family: ContinuousFamily,
    value: complex,
    x: AlgebraElement,
    ts: Sequence[float],
    tol: Tolerances = DEFAULT_TOL,
    phase: float | None = None,
) -> float:
    """Largest residual of builder(t) applied to x against lambda^t x.

    For unit-modulus lambda, lambda^t is exp(i t arg lambda) with the
    principal argument in (-pi, pi]. Eigenvectors whose phase winds outside
    the principal branch can pass the winding rate explicitly via ``phase``.
    """
    if phase is None:
        phase = cmath.phase(complex(value))
    worst = 0.0
    for t in ts:
        expected = cmath.exp(1j * phase * t)
        residual = element_norm(apply(family.builder(t), x) - expected * x)
        worst = max(worst, residual)
    return worst
