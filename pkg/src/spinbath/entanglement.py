"""Negativity of the two-spin state, by closed form and by partial transpose.

Negativity is the absolute sum of the negative eigenvalues of the partially
transposed density matrix (Peres-Horodecki, necessary and sufficient for a
pair of qubits); with this convention the two-qubit maximum is 1/2.

Three routes are provided and cross-check each other:

* ``negativity_closed_form``: for the x-projected initial state the partial
  transpose diagonalizes analytically and only one eigenvalue can dip below
  zero, giving

      N = | (1 - e^{-16 gamma})/8
          - sqrt((1 - e^{-16 gamma})^2 + 16 e^{-8 gamma} sin^2(4 Delta)) / 8 |.

* ``appendix_b_eigenvalues``: all four analytic eigenvalues of that partial
  transpose.
* ``negativity_numeric``: the general route for any state, needed for tilted
  initial Bloch angles.  The 4x4 Hermitian partial transpose is embedded as
  a real symmetric 8x8 matrix and diagonalized by cyclic Jacobi rotations.

Eigenvalues within 1e-13 of zero are treated as zero so that separable
states report exactly N = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import TwoSpinState
from .errors import EigenNonConvergence, InvalidState

__all__ = [
    "NegativityMethod",
    "NegativityResult",
    "appendix_b_eigenvalues",
    "ideal_negativity",
    "negativity_closed_form",
    "negativity_numeric",
    "partial_transpose",
    "pt_spectra",
]

#: eigenvalues closer to zero than this count as zero, not negative
ZERO_EIGENVALUE_TOL = 1e-13
#: exponent beyond which e^-x underflows to an exact 0.0
_EXP_UNDERFLOW = 750.0


class NegativityMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    APPENDIX_B = "appendix_b"
    NUMERIC_PT = "numeric_pt"


@dataclass(frozen=True)
class NegativityResult:
    """Negativity plus the full partial-transpose spectrum (ascending)."""

    value: float
    eigenvalues: tuple
    method: NegativityMethod


def _damped_exponentials(gamma: float):
    """(1 - e^{-16g}, e^{-16g}, e^{-8g}) with hard underflow clamps."""
    if gamma < 0 and not math.isinf(gamma):
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    e16 = 0.0 if 16.0 * gamma > _EXP_UNDERFLOW else math.exp(-16.0 * gamma)
    e8 = 0.0 if 8.0 * gamma > _EXP_UNDERFLOW else math.exp(-8.0 * gamma)
    # -expm1 keeps 1 - e^{-16g} accurate for tiny gamma
    u = 1.0 if e16 == 0.0 else -math.expm1(-16.0 * gamma)
    return u, e16, e8


def appendix_b_eigenvalues(gamma: float, delta: float) -> tuple:
    """The four analytic partial-transpose eigenvalues (Lambda_1..Lambda_4).

    Only Lambda_2 can be negative; Lambda_1 >= 0 and Lambda_3 >= Lambda_4.
    The Lambda_3/4 discriminant (3 + e)^2 + 16 e' cos^2 - 8(1 + e) is
    evaluated as (1 - e)^2 + 16 e' cos^2, the same polynomial without the
    catastrophic cancellation near gamma = 0.
    """
    u, e16, e8 = _damped_exponentials(gamma)
    s2 = math.sin(4.0 * delta) ** 2
    c2 = math.cos(4.0 * delta) ** 2
    r12 = math.sqrt(u * u + 16.0 * e8 * s2)
    r34 = math.sqrt(u * u + 16.0 * e8 * c2)
    lam1 = (u + r12) / 8.0
    lam2 = (u - r12) / 8.0
    lam3 = (3.0 + e16 + r34) / 8.0
    lam4 = (3.0 + e16 - r34) / 8.0
    return (lam1, lam2, lam3, lam4)


def negativity_closed_form(gamma: float, delta: float) -> NegativityResult:
    """Closed-form negativity for the x-projected state; gamma may be +inf."""
    lams = appendix_b_eigenvalues(gamma, delta)
    return NegativityResult(abs(lams[1]), tuple(sorted(lams)),
                            NegativityMethod.CLOSED_FORM)


def ideal_negativity(delta: float) -> float:
    """Zero-dephasing negativity of the x-projected state, |sin(4 Delta)|/2."""
    return 0.5 * abs(math.sin(4.0 * delta))


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose the second-spin indices of a 4x4 two-spin matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 matrix, got {rho.shape}")
    return np.ascontiguousarray(
        rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4))


# pivot schedule of one cyclic Jacobi sweep over an 8x8 symmetric matrix
_PIVOTS = [(p, q) for p in range(8) for q in range(p + 1, 8)]


def _embed_real(h: np.ndarray) -> np.ndarray:
    """Hermitian (B,4,4) -> real symmetric (B,8,8) [[X, -Y], [Y, X]].

    Every eigenvalue of the input appears twice in the embedding.
    """
    x, y = h.real, h.imag
    top = np.concatenate([x, -y], axis=2)
    bot = np.concatenate([y, x], axis=2)
    return np.concatenate([top, bot], axis=1)


def _jacobi_sweeps(A: np.ndarray, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi diagonalization of a batch of real symmetric matrices.

    Runs sweeps until the off-diagonal Frobenius norm of every matrix in the
    batch falls below 1e-13 (absolute, the inputs being trace-1 scaled).
    """
    A = A.copy()
    b = A.shape[0]
    idx = np.arange(b)
    off_tol = 1e-13
    for _ in range(max_sweeps):
        off = np.sqrt(np.maximum(
            np.sum(A ** 2, axis=(1, 2)) - np.sum(np.diagonal(A, axis1=1, axis2=2) ** 2,
                                                 axis=1), 0.0))
        if np.all(off <= off_tol):
            return A
        for p, q in _PIVOTS:
            apq = A[idx, p, q]
            app = A[idx, p, p]
            aqq = A[idx, q, q]
            nonzero = np.abs(apq) > 1e-300
            tau = np.where(nonzero, (aqq - app) / np.where(nonzero, 2.0 * apq, 1.0), 0.0)
            tsgn = np.where(tau >= 0.0, 1.0, -1.0)
            tt = np.where(nonzero, tsgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
            c = 1.0 / np.sqrt(1.0 + tt * tt)
            s = tt * c
            rp = A[:, p, :].copy()
            rq = A[:, q, :].copy()
            A[:, p, :] = c[:, None] * rp - s[:, None] * rq
            A[:, q, :] = s[:, None] * rp + c[:, None] * rq
            cp = A[:, :, p].copy()
            cq = A[:, :, q].copy()
            A[:, :, p] = c[:, None] * cp - s[:, None] * cq
            A[:, :, q] = s[:, None] * cp + c[:, None] * cq
    off = np.sqrt(np.maximum(
        np.sum(A ** 2, axis=(1, 2)) - np.sum(np.diagonal(A, axis1=1, axis2=2) ** 2,
                                             axis=1), 0.0))
    raise EigenNonConvergence(
        f"off-diagonal norm stalled at {float(np.max(off)):.3e} "
        f"after {max_sweeps} sweeps")


def pt_spectra(rhos: np.ndarray) -> np.ndarray:
    """Partial-transpose spectra for a batch of 4x4 density matrices.

    Input (B, 4, 4) complex Hermitian; output (B, 4) real ascending.
    """
    rhos = np.asarray(rhos, dtype=complex)
    squeeze = rhos.ndim == 2
    if squeeze:
        rhos = rhos[None]
    pt = rhos.reshape(-1, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(-1, 4, 4)
    herm_defect = np.max(np.abs(pt - pt.conj().transpose(0, 2, 1)))
    if herm_defect > 1e-10:
        raise InvalidState(f"partial transpose not Hermitian (defect {herm_defect:.3e})")
    diag = _jacobi_sweeps(_embed_real(pt))
    eigs8 = np.sort(np.diagonal(diag, axis1=1, axis2=2), axis=1)
    # the embedding doubles each eigenvalue; average the pairs
    eigs4 = 0.5 * (eigs8[:, 0::2] + eigs8[:, 1::2])
    return eigs4[0] if squeeze else eigs4


def negativity_from_spectrum(eigs) -> float:
    """Sum of |negative eigenvalues|, ignoring ones within the zero band."""
    eigs = np.asarray(eigs, dtype=float)
    neg = eigs[eigs < -ZERO_EIGENVALUE_TOL]
    return float(-np.sum(neg)) if neg.size else 0.0


def negativity_numeric(state: TwoSpinState) -> NegativityResult:
    """Negativity of an arbitrary two-spin state via its partial transpose."""
    eigs = pt_spectra(state.rho)
    return NegativityResult(negativity_from_spectrum(eigs),
                            tuple(float(x) for x in eigs),
                            NegativityMethod.NUMERIC_PT)
