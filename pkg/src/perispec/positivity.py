"""Positivity certificates for block 2x2 matrices and for linear maps.

The Schur-complement criteria decide positive semidefiniteness of
[[a, b], [c, d]] by reducing to the blocks, regularized by a decreasing
epsilon schedule so that singular corners stay invertible. They are kept
deliberately independent of :func:`oracle_psd`, the direct eigenvalue check,
so the two routes can cross-validate each other.

Complete positivity of a map on a single full matrix block is decided through
its Choi matrix, assembled with row-major tensor ordering: the (i, j) outer
block of the Choi matrix is the image of the matrix unit E_ij.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    BlockAlgebra,
    Tolerances,
    devectorize,
    hermitian_eig,
    max_norm,
    vectorize,
)
from .errors import (
    CommutationViolated,
    DimensionMismatch,
    HypothesesViolated,
    MultiBlockUnsupported,
    NotHermitian,
    NotPSDInput,
)
from .superop import Superoperator, apply

__all__ = [
    "Block2Matrix",
    "EpsilonSchedule",
    "PositivityVerdict",
    "PositivityWitness",
    "FalsifierResult",
    "assemble",
    "oracle_psd",
    "criterion_epsilon",
    "criterion_epsilon_prime",
    "criterion_commuting",
    "corner_swap",
    "congruence",
    "offdiag_swap_under_hypotheses",
    "choi_matrix",
    "randomized_positivity_falsifier",
]

_FALSIFIER_CHUNK = 512


def _square(m) -> np.ndarray:
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square block, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class Block2Matrix:
    """Four equally sized square blocks a, b, c, d of [[a, b], [c, d]]."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _square(getattr(self, name)))
        side = self.a.shape[0]
        for name in ("b", "c", "d"):
            if getattr(self, name).shape[0] != side:
                raise DimensionMismatch("all four blocks must share one side length")

    @property
    def side(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class EpsilonSchedule:
    """Strictly decreasing positive regularization values."""

    values: tuple[float, ...] = (1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("the epsilon schedule must be nonempty")
        if any(v <= 0.0 for v in values):
            raise ValueError("epsilon values must be strictly positive")
        if any(u <= v for u, v in zip(values, values[1:])):
            raise ValueError("epsilon values must be strictly decreasing")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class PositivityWitness:
    """Evidence attached to a negative verdict.

    ``vector`` achieves ``quadratic_form`` below the tolerance on the matrix
    the check was run against; for Schur-based failures that matrix is the
    defect recorded here together with the epsilon that produced it.
    """

    reason: str
    vector: np.ndarray | None = None
    quadratic_form: float | None = None
    epsilon: float | None = None
    defect: np.ndarray | None = None


@dataclass(frozen=True)
class PositivityVerdict:
    is_psd: bool
    witness: PositivityWitness | None = None


@dataclass(frozen=True)
class FalsifierResult:
    """Outcome of randomized positivity probing.

    ``min_output_eig`` is the smallest output eigenvalue seen over all
    sampled positive trace-one inputs; ``worst_input`` is the sample that
    achieved it. A clean sweep is evidence, not proof, of positivity.
    """

    min_output_eig: float
    worst_input: AlgebraElement
    samples: int
    seed: int
    passed: bool
    max_hermiticity_defect: float


def assemble(m: Block2Matrix) -> np.ndarray:
    """Dense 2n x 2n matrix [[a, b], [c, d]]."""
    return np.block([[m.a, m.b], [m.c, m.d]])


def oracle_psd(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> PositivityVerdict:
    """Direct eigenvalue test: PSD iff the least eigenvalue is >= -psd_tol."""
    w, v = hermitian_eig(m, tol)
    if w.size == 0 or w[0] >= -tol.psd_tol:
        return PositivityVerdict(True)
    witness = PositivityWitness(
        reason=f"least eigenvalue {w[0]:.6e} below -psd_tol",
        vector=v[:, 0],
        quadratic_form=float(w[0]),
    )
    return PositivityVerdict(False, witness)


def _psd_part_check(name: str, m: np.ndarray, tol: Tolerances) -> PositivityVerdict | None:
    verdict = oracle_psd(m, tol)
    if verdict.is_psd:
        return None
    assert verdict.witness is not None
    witness = PositivityWitness(
        reason=f"diagonal block {name} not PSD: {verdict.witness.reason}",
        vector=verdict.witness.vector,
        quadratic_form=verdict.witness.quadratic_form,
    )
    return PositivityVerdict(False, witness)


def _offdiag_mismatch(m: Block2Matrix, tol: Tolerances) -> PositivityVerdict | None:
    defect = max_norm(m.c - m.b.conj().T)
    if defect <= tol.eq_tol * max(1.0, max_norm(m.b)):
        return None
    witness = PositivityWitness(reason=f"c differs from b* by {defect:.3e}")
    return PositivityVerdict(False, witness)


def _regularized_inverse(h: np.ndarray, eps: float, tol: Tolerances) -> np.ndarray:
    """Hermitian inverse of h + eps 1, built from the eigendecomposition."""
    w, v = hermitian_eig(h, tol)
    return (v * (1.0 / (w + eps))) @ v.conj().T


def _schur_family(
    m: Block2Matrix,
    schedule: EpsilonSchedule,
    tol: Tolerances,
    mirrored: bool,
) -> PositivityVerdict:
    """Shared body of the two epsilon criteria.

    In the plain orientation the defect is d - b*(a + eps)^(-1) b; mirrored
    swaps the roles of the corners: a - b (d + eps)^(-1) b*.
    """
    for check in (
        _psd_part_check("a", m.a, tol),
        _psd_part_check("d", m.d, tol),
        _offdiag_mismatch(m, tol),
    ):
        if check is not None:
            return check
    for eps in schedule.values:
        if mirrored:
            inv = _regularized_inverse(m.d, eps, tol)
            defect = m.a - m.b @ inv @ m.b.conj().T
        else:
            inv = _regularized_inverse(m.a, eps, tol)
            defect = m.d - m.b.conj().T @ inv @ m.b
        defect = 0.5 * (defect + defect.conj().T)
        verdict = oracle_psd(defect, tol)
        if not verdict.is_psd:
            assert verdict.witness is not None
            witness = PositivityWitness(
                reason=f"Schur defect not PSD at epsilon={eps:g}",
                vector=verdict.witness.vector,
                quadratic_form=verdict.witness.quadratic_form,
                epsilon=eps,
                defect=defect,
            )
            return PositivityVerdict(False, witness)
    return PositivityVerdict(True)


def criterion_epsilon(
    m: Block2Matrix,
    schedule: EpsilonSchedule = EpsilonSchedule(),
    tol: Tolerances = DEFAULT_TOL,
) -> PositivityVerdict:
    """Schur criterion: PSD iff a, d are PSD, c = b*, and every epsilon in the
    schedule leaves d - b*(a + eps)^(-1) b positive semidefinite."""
    return _schur_family(m, schedule, tol, mirrored=False)


def criterion_epsilon_prime(
    m: Block2Matrix,
    schedule: EpsilonSchedule = EpsilonSchedule(),
    tol: Tolerances = DEFAULT_TOL,
) -> PositivityVerdict:
    """Mirrored Schur criterion, regularizing d: a - b (d + eps)^(-1) b*."""
    return _schur_family(m, schedule, tol, mirrored=True)


def criterion_commuting(
    m: Block2Matrix, tol: Tolerances = DEFAULT_TOL
) -> PositivityVerdict:
    """Commuting-corner criterion: with a d = d a, PSD iff a, d PSD, c = b*,
    and a d - b* b is PSD. Raises when the corners do not commute."""
    defect = max_norm(m.a @ m.d - m.d @ m.a)
    scale = max(1.0, max_norm(m.a) * max_norm(m.d))
    if defect > tol.eq_tol * scale:
        raise CommutationViolated(f"a and d do not commute, defect {defect:.3e}")
    for check in (
        _psd_part_check("a", m.a, tol),
        _psd_part_check("d", m.d, tol),
        _offdiag_mismatch(m, tol),
    ):
        if check is not None:
            return check
    product = m.a @ m.d - m.b.conj().T @ m.b
    product = 0.5 * (product + product.conj().T)
    verdict = oracle_psd(product, tol)
    if not verdict.is_psd:
        assert verdict.witness is not None
        witness = PositivityWitness(
            reason="a d - b* b not PSD",
            vector=verdict.witness.vector,
            quadratic_form=verdict.witness.quadratic_form,
            defect=product,
        )
        return PositivityVerdict(False, witness)
    return PositivityVerdict(True)


def corner_swap(m: Block2Matrix) -> Block2Matrix:
    """Conjugation by [[0, 1], [1, 0]]: [[a, b], [c, d]] -> [[d, c], [b, a]]."""
    return Block2Matrix(m.d, m.c, m.b, m.a)


def congruence(m: Block2Matrix, x: np.ndarray, y: np.ndarray) -> Block2Matrix:
    """Congruence by diag(x, y): [[x a x*, x b y*], [y c x*, y d y*]]."""
    x = _square(x)
    y = _square(y)
    if x.shape[0] != m.side or y.shape[0] != m.side:
        raise DimensionMismatch("congruence factors must match the block side")
    return Block2Matrix(
        x @ m.a @ x.conj().T,
        x @ m.b @ y.conj().T,
        y @ m.c @ x.conj().T,
        y @ m.d @ y.conj().T,
    )


def offdiag_swap_under_hypotheses(
    m: Block2Matrix, tol: Tolerances = DEFAULT_TOL
) -> Block2Matrix:
    """Swap the off-diagonal corners of a PSD input: [[a, b], [b*, d]] becomes
    [[a, b*], [b, d]].

    Positivity survives the swap when a commutes with b and b is normal or
    commutes with d; both hypotheses are verified, as is positivity of the
    input and of the result.
    """
    scale = max(1.0, max_norm(m.a), max_norm(m.b), max_norm(m.d)) ** 2
    if max_norm(m.a @ m.b - m.b @ m.a) > tol.eq_tol * scale:
        raise HypothesesViolated("a and b do not commute")
    b_normal = max_norm(m.b @ m.b.conj().T - m.b.conj().T @ m.b) <= tol.eq_tol * scale
    bd_commute = max_norm(m.b @ m.d - m.d @ m.b) <= tol.eq_tol * scale
    if not (b_normal or bd_commute):
        raise HypothesesViolated("b is neither normal nor commuting with d")
    mismatch = _offdiag_mismatch(m, tol)
    if mismatch is not None:
        raise NotPSDInput("input is not of the form [[a, b], [b*, d]]")
    if not oracle_psd(assemble(m), tol).is_psd:
        raise NotPSDInput("input block matrix is not PSD")
    swapped = Block2Matrix(m.a, m.b.conj().T, m.b, m.d)
    verdict = oracle_psd(assemble(swapped), tol)
    if not verdict.is_psd:
        raise HypothesesViolated(
            "swapped matrix failed the PSD check; hypotheses too weak numerically"
        )
    return swapped


def choi_matrix(phi: Superoperator) -> np.ndarray:
    """Choi matrix of a map on a single full matrix block.

    Assembled as the sum over matrix units of kron(E_ij, phi(E_ij)); the map
    is completely positive exactly when this matrix is PSD.
    """
    if len(phi.algebra.blocks) != 1:
        raise MultiBlockUnsupported("the Choi matrix is defined per full matrix block")
    n = phi.algebra.blocks[0]
    choi = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n))
            unit[i, j] = 1.0
            image = apply(phi, phi.algebra.element([unit])).parts[0]
            choi[i * n : (i + 1) * n, j * n : (j + 1) * n] = image
    return choi


def _chunk_min_eigs(
    phi: Superoperator, vecs: np.ndarray
) -> tuple[np.ndarray, float]:
    """Least output eigenvalue per sampled input row, plus the largest
    deviation of any output from being Hermitian."""
    out = vecs @ phi.matrix.T
    count = vecs.shape[0]
    mins = np.full(count, np.inf)
    herm_defect = 0.0
    offset = 0
    for n in phi.algebra.blocks:
        block = out[:, offset : offset + n * n].reshape(count, n, n)
        offset += n * n
        dag = block.conj().transpose(0, 2, 1)
        herm_defect = max(herm_defect, float(np.max(np.abs(block - dag))))
        w = np.linalg.eigvalsh(0.5 * (block + dag))
        mins = np.minimum(mins, w[:, 0])
    return mins, herm_defect


def randomized_positivity_falsifier(
    phi: Superoperator,
    samples: int = 10000,
    seed: int = 42,
    tol: Tolerances = DEFAULT_TOL,
) -> FalsifierResult:
    """Probe positivity of a map with random positive trace-one inputs.

    Inputs are blockwise Wishart matrices g g* normalized to unit total
    trace. The sample index range is split into fixed chunks whose generators
    are derived from (seed, chunk index), so results do not depend on how the
    chunks are scheduled. Non-Hermitian outputs are symmetrized before the
    eigenvalue check and the worst deviation is reported.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    algebra = phi.algebra
    best_min = np.inf
    best_vec: np.ndarray | None = None
    worst_defect = 0.0
    for chunk_index, start in enumerate(range(0, samples, _FALSIFIER_CHUNK)):
        count = min(_FALSIFIER_CHUNK, samples - start)
        rng = np.random.default_rng([seed, chunk_index])
        parts = []
        for n in algebra.blocks:
            g = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal(
                (count, n, n)
            )
            parts.append(g @ g.conj().transpose(0, 2, 1))
        traces = sum(
            np.trace(p, axis1=1, axis2=2).real for p in parts
        )
        vecs = np.concatenate(
            [(p / traces[:, None, None]).reshape(count, -1) for p in parts], axis=1
        )
        mins, defect = _chunk_min_eigs(phi, vecs)
        worst_defect = max(worst_defect, defect)
        k = int(np.argmin(mins))
        if mins[k] < best_min:
            best_min = float(mins[k])
            best_vec = vecs[k]
    assert best_vec is not None
    return FalsifierResult(
        min_output_eig=best_min,
        worst_input=devectorize(algebra, best_vec),
        samples=samples,
        seed=seed,
        passed=best_min >= -tol.psd_tol,
        max_hermiticity_defect=worst_defect,
    )
