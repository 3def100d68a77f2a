"""Wootters concurrence and entanglement of formation for two-qubit states.

The spin-flipped matrix is (sy x sy) conj(rho) (sy x sy).  The complex
conjugate is required: without it the concurrence of a complex pure state
no longer equals 2|a1 a4 - a2 a3|.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, EigensolverFailure, OutOfRange
from .state import PSD_TOL, DensityMatrix, as_density

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)


def _two_qubit(rho) -> DensityMatrix:
    rho = as_density(rho)
    if rho.num_qubits != 2:
        raise BadDimension(f"expected a two-qubit density matrix, got {rho.num_qubits} qubits")
    return rho


def spin_flip(rho) -> DensityMatrix:
    rho = _two_qubit(rho)
    return DensityMatrix._trusted(YY @ rho.entries.conj() @ YY)


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    if w[0] < -PSD_TOL:
        raise EigensolverFailure(f"negative eigenvalue {w[0]:.3e} in a density matrix")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def r_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of R = (sqrt(rho) rho~ sqrt(rho))^(1/2), descending.

    R^2 = A A^dag with A = sqrt(rho) sqrt(rho~), so the eigenvalues of R are
    the singular values of A.  Going through the SVD keeps the small
    eigenvalues at round-off size, where square roots of the eigenvalues
    of rho rho~ would inflate 1e-16 noise to 1e-8.
    """
    rho = _two_qubit(rho)
    flipped = spin_flip(rho)
    a = _psd_sqrt(rho.entries) @ _psd_sqrt(flipped.entries)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    return np.sort(s)[::-1]


def r_eigenvalues_product(rho) -> np.ndarray:
    """Same lambdas via square roots of the eigenvalues of rho rho~.

    Mathematically identical to :func:`r_eigenvalues` but only accurate to
    about sqrt(machine epsilon) near rank-deficient states.  Kept as an
    independent cross-check.
    """
    rho = _two_qubit(rho)
    prod = rho.entries @ spin_flip(rho).entries
    try:
        ev = np.linalg.eigvals(prod)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    ev = ev.real
    if ev.min() < -PSD_TOL:
        raise EigensolverFailure(f"rho rho~ has negative eigenvalue {ev.min():.3e}")
    return np.sort(np.sqrt(np.clip(ev, 0.0, None)))[::-1]


@dataclass(frozen=True)
class WoottersResult:
    lambdas: tuple[float, float, float, float]
    c_w: float
    c_w_unclamped: float
    eof: float


def wootters_concurrence(rho) -> WoottersResult:
    lam = r_eigenvalues(rho)
    raw = float(lam[0] - lam[1] - lam[2] - lam[3])
    c = min(1.0, max(0.0, raw))
    return WoottersResult(tuple(float(x) for x in lam), c, raw, eof(c))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def eof(c: float) -> float:
    """Entanglement of formation as a function of the concurrence."""
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise OutOfRange(f"concurrence {c} outside [0, 1]")
    return binary_entropy((1 + np.sqrt(1 - c * c)) / 2)
