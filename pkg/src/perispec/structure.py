"""Structure of peripheral eigenvectors of ergodic unital positive maps.

After normalizing an eigenvector x so that x x* + x* x = 1, exactly one of
three shapes applies:

  I.   x is a partial isometry with x^2 = 0 whose initial and final
       projections sum to the identity.
  II.  x = alpha1 v1 + alpha2 v2 with 0 < alpha1 < alpha2, where v1, v2 are
       partial isometries that swap a projection e with its complement.
  III. x is a unitary divided by sqrt(2).

The branch is decided by the scalar theta = x^2 (x*)^2: absent (case I),
strictly inside (0, 1/4) (case II), or equal to 1/4 (case III). In case II
the coefficients are alpha = sqrt((1 -+ sqrt(1 - 4 theta)) / 2) and e is the
spectral projection of x* x for the smaller eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    Tolerances,
    adjoint,
    element_norm,
    hermitian_eig,
    polar_decomposition,
    scalar_multiple_of_identity,
)
from .errors import (
    InvariantViolated,
    NotEigenvector,
    NotScalarCombination,
    ProjectionMismatch,
    SingularModulus,
    SplitNotEigen,
    ThetaOutOfRange,
)
from .superop import Superoperator, apply

__all__ = [
    "CASE_III_THETA_TOL",
    "CaseI",
    "CaseII",
    "CaseIII",
    "Classification",
    "case_tag",
    "normalize_eigenvector",
    "classify_eigenvector",
    "reconstruct",
    "partial_isometry_check",
]

# Width of the theta window around 1/4 inside which an eigenvector is treated
# as a scaled unitary rather than a genuine two-coefficient split.
CASE_III_THETA_TOL = 1e-6


@dataclass(frozen=True)
class CaseI:
    """Partial isometry v with v^2 = 0, initial projection e, final 1 - e."""

    v: AlgebraElement
    e: AlgebraElement


@dataclass(frozen=True)
class CaseII:
    """x = alpha1 v1 + alpha2 v2 with v1, v2 partial isometries exchanging
    e and its complement; theta = (alpha1 alpha2)^2."""

    alpha1: float
    alpha2: float
    v1: AlgebraElement
    v2: AlgebraElement
    e: AlgebraElement
    theta: float


@dataclass(frozen=True)
class CaseIII:
    """x = scale * u for a unitary u; the normalized form is u / sqrt(2)."""

    u: AlgebraElement
    scale: complex


Classification = CaseI | CaseII | CaseIII


def case_tag(classification: Classification) -> str:
    return {CaseI: "I", CaseII: "II", CaseIII: "III"}[type(classification)]


def _eigen_residual(
    phi: Superoperator, value: complex, x: AlgebraElement
) -> float:
    return element_norm(apply(phi, x) - value * x)


def _normalization_scalar(x: AlgebraElement, tol: Tolerances) -> float:
    combo = x @ adjoint(x) + adjoint(x) @ x
    c = scalar_multiple_of_identity(combo, tol)
    if c is None:
        raise NotScalarCombination(
            "x x* + x* x is not a scalar multiple of the identity"
        )
    if abs(c.imag) > tol.eq_tol * max(1.0, abs(c)) or c.real <= tol.eq_tol:
        raise NotScalarCombination(
            f"x x* + x* x equals {c!r} times the identity, which is not positive"
        )
    return float(c.real)


def normalize_eigenvector(
    phi: Superoperator,
    value: complex,
    x: AlgebraElement,
    tol: Tolerances = DEFAULT_TOL,
) -> AlgebraElement:
    """Scale an eigenvector so that x x* + x* x = 1.

    Requires x to be an eigenvector of phi at ``value`` and x x* + x* x to be
    a positive scalar multiple of the identity (automatic for ergodic maps).
    """
    scale = element_norm(x)
    if scale <= tol.eq_tol:
        raise NotEigenvector("the zero element cannot be normalized")
    residual = _eigen_residual(phi, value, x)
    if residual > tol.eq_tol * max(1.0, scale):
        raise NotEigenvector(
            f"residual {residual:.3e} at eigenvalue {value!r} exceeds tolerance"
        )
    c = _normalization_scalar(x, tol)
    return (1.0 / math.sqrt(c)) * x


def _theta_scalar(xhat: AlgebraElement, tol: Tolerances) -> float:
    square = xhat @ xhat
    combo = square @ adjoint(square)
    theta = scalar_multiple_of_identity(combo, tol)
    if theta is None:
        raise NotScalarCombination(
            "x^2 (x*)^2 is not a scalar multiple of the identity"
        )
    if abs(theta.imag) > max(tol.eq_tol, 1e-12 * max(1.0, abs(theta))):
        raise ThetaOutOfRange(f"theta = {theta!r} is not real")
    value = float(theta.real)
    if value <= tol.eq_tol:
        raise ThetaOutOfRange(f"theta = {value:.3e} is not strictly positive")
    if value > 0.25 + CASE_III_THETA_TOL:
        raise ThetaOutOfRange(f"theta = {value!r} exceeds 1/4")
    return value


def _blockwise_polar(
    x: AlgebraElement, tol: Tolerances
) -> tuple[AlgebraElement, AlgebraElement]:
    factors = [polar_decomposition(p, tol) for p in x.parts]
    unitary = x.algebra.element([u for u, _ in factors])
    modulus = x.algebra.element([p for _, p in factors])
    return unitary, modulus


def _split_projection(
    z: AlgebraElement, low: float, high: float, tol: Tolerances
) -> AlgebraElement:
    """Spectral projection of the Hermitian element z onto its eigenvalues
    near ``low``, verifying that every eigenvalue sits near ``low`` or
    ``high`` and that both groups are populated."""
    gap = high - low
    window = max(1e-7 * max(1.0, high), 10.0 * tol.eq_tol)
    parts = []
    seen_low = 0
    seen_high = 0
    for block in z.parts:
        w, v = hermitian_eig(block, tol)
        proj = np.zeros_like(block)
        for k, eigenvalue in enumerate(w):
            near_low = abs(eigenvalue - low) <= window
            near_high = abs(eigenvalue - high) <= window
            if not (near_low or near_high):
                raise ProjectionMismatch(
                    f"eigenvalue {eigenvalue:.12f} of x* x is near neither "
                    f"{low:.12f} nor {high:.12f}"
                )
            if near_low and near_high:  # only possible when the gap collapses
                raise ProjectionMismatch(
                    f"cannot separate eigenvalue {eigenvalue:.12f} across gap {gap:.3e}"
                )
            if near_low:
                seen_low += 1
                column = v[:, k : k + 1]
                proj = proj + column @ column.conj().T
            else:
                seen_high += 1
        parts.append(proj)
    if seen_low == 0 or seen_high == 0:
        raise ProjectionMismatch(
            "the spectrum of x* x does not split into two nonempty groups"
        )
    return z.algebra.element(parts)


def _check_case1(xhat: AlgebraElement, tol: Tolerances) -> CaseI:
    e = adjoint(xhat) @ xhat
    one = xhat.algebra.identity()
    idem = element_norm(e @ e - e)
    if idem > 10.0 * tol.eq_tol:
        raise ProjectionMismatch(f"x* x is not idempotent (defect {idem:.3e})")
    complement = element_norm(xhat @ adjoint(xhat) - (one - e))
    if complement > 10.0 * tol.eq_tol:
        raise ProjectionMismatch(
            f"x x* deviates from 1 - x* x by {complement:.3e}"
        )
    if element_norm(e) <= tol.eq_tol or element_norm(one - e) <= tol.eq_tol:
        raise ProjectionMismatch("the initial projection is trivial")
    return CaseI(v=xhat, e=e)


def classify_eigenvector(
    phi: Superoperator,
    value: complex,
    x: AlgebraElement,
    tol: Tolerances = DEFAULT_TOL,
) -> Classification:
    """Classify a peripheral eigenvector of an ergodic unital positive map.

    The element is normalized first; the original scale survives only in the
    ``scale`` field of case III. Raises the usual suspects when the input is
    not an eigenvector, the invariant scalars fail to be scalars, or the
    derived projections and partial isometries do not satisfy their defining
    relations.
    """
    xhat = normalize_eigenvector(phi, value, x, tol)
    square = xhat @ xhat
    if element_norm(square) <= tol.eq_tol:
        return _check_case1(xhat, tol)
    theta = _theta_scalar(xhat, tol)
    norm_scale = math.sqrt(_normalization_scalar(x, tol))
    if abs(theta - 0.25) <= CASE_III_THETA_TOL:
        u = math.sqrt(2.0) * xhat
        one = xhat.algebra.identity()
        defect = element_norm(adjoint(u) @ u - one)
        if defect > 10.0 * tol.eq_tol:
            raise InvariantViolated(
                f"sqrt(2) x is not unitary (defect {defect:.3e})"
            )
        return CaseIII(u=u, scale=complex(norm_scale / math.sqrt(2.0)))
    spread = math.sqrt(1.0 - 4.0 * theta)
    low = (1.0 - spread) / 2.0
    high = (1.0 + spread) / 2.0
    z = adjoint(xhat) @ xhat
    e = _split_projection(z, low, high, tol)
    one = xhat.algebra.identity()
    e_perp = one - e
    try:
        u, _ = _blockwise_polar(xhat, tol)
    except SingularModulus as exc:
        raise ProjectionMismatch(
            f"polar decomposition failed on a two-coefficient split: {exc}"
        ) from exc
    swap = element_norm(u @ e @ adjoint(u) - e_perp)
    if swap > 1e-7:
        raise ProjectionMismatch(
            f"the polar unitary does not exchange e with its complement "
            f"(defect {swap:.3e})"
        )
    v1 = u @ e
    v2 = u @ e_perp
    for name, part in (("v1", v1), ("v2", v2)):
        residual = _eigen_residual(phi, value, part)
        if residual > max(1e-7, tol.eq_tol * max(1.0, element_norm(part))):
            raise SplitNotEigen(
                f"{name} drifts from the eigenspace by {residual:.3e}"
            )
    return CaseII(
        alpha1=math.sqrt(low),
        alpha2=math.sqrt(high),
        v1=v1,
        v2=v2,
        e=e,
        theta=theta,
    )


def reconstruct(classification: Classification) -> AlgebraElement:
    """Rebuild the normalized eigenvector from its classification."""
    if isinstance(classification, CaseI):
        return classification.v
    if isinstance(classification, CaseII):
        if not 0.0 < classification.alpha1 < classification.alpha2:
            raise InvariantViolated(
                f"coefficients ({classification.alpha1}, {classification.alpha2}) "
                "are not ordered in (0, 1)"
            )
        return (
            classification.alpha1 * classification.v1
            + classification.alpha2 * classification.v2
        )
    if isinstance(classification, CaseIII):
        return (1.0 / math.sqrt(2.0)) * classification.u
    raise TypeError(f"not a classification: {classification!r}")


def partial_isometry_check(
    v: AlgebraElement, tol: Tolerances = DEFAULT_TOL
) -> tuple[AlgebraElement, AlgebraElement] | None:
    """The pair (initial, final) projection when v is a partial isometry,
    None otherwise."""
    initial = adjoint(v) @ v
    final = v @ adjoint(v)
    for candidate in (initial, final):
        if element_norm(candidate - adjoint(candidate)) > tol.eq_tol:
            return None
        if element_norm(candidate @ candidate - candidate) > 10.0 * tol.eq_tol:
            return None
    return initial, final
