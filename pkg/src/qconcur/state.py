"""Dense N-qubit pure states and density matrices.

Basis convention used everywhere in the package: amplitude index ``i`` runs
over ``[0, 2**N)``; qubit 1 is the most significant bit of ``i`` and a set
bit means spin up (m = +1/2).  A basis string such as ``"101"`` therefore maps
to index ``int("101", 2)`` and reads qubit 1 first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadDimension,
    BadPermutation,
    BadSubset,
    CapacityExceeded,
    DimensionMismatch,
    NotDensityMatrix,
    NotNormalized,
    ZeroState,
)

DEFAULT_MAX_QUBITS = 16

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# construction renormalizes anything this close to unit norm
_CONSTRUCT_NORM_TOL = 1e-8


def _num_qubits_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or (1 << n) != dim:
        raise BadDimension(f"dimension {dim} is not 2**N with N >= 1")
    return n


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm amplitude vector of an N-qubit pure state.

    The constructor accepts anything within 1e-8 of unit norm and rescales it
    exactly; use :func:`normalize` for arbitrary nonzero vectors.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        _num_qubits_for(amps.size)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _CONSTRUCT_NORM_TOL:
            if not norm >= 1e-300:
                raise ZeroState("amplitude vector is zero")
            raise NotNormalized(f"amplitudes have norm {norm:.12g}; normalize() them first")
        object.__setattr__(self, "amplitudes", _frozen(amps / norm))

    @property
    def num_qubits(self) -> int:
        return _num_qubits_for(self.amplitudes.size)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density_matrix(self) -> "DensityMatrix":
        a = self.amplitudes
        return DensityMatrix._trusted(np.outer(a, a.conj()))

    def __len__(self):
        return self.amplitudes.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"PureState(num_qubits={self.num_qubits})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 2**N x 2**N matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotDensityMatrix(f"expected a square matrix, got shape {m.shape}")
        try:
            _num_qubits_for(m.shape[0])
        except BadDimension as exc:
            raise NotDensityMatrix(str(exc)) from None
        if not np.all(np.isfinite(m)):
            raise NotDensityMatrix("matrix has non-finite entries")
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > HERMITIAN_TOL:
            raise NotDensityMatrix(f"not Hermitian (max |rho - rho^dag| = {herm_err:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotDensityMatrix(f"trace is {tr:.15g}, expected 1")
        m = 0.5 * (m + m.conj().T)
        lowest = np.linalg.eigvalsh(m)[0]
        if lowest < -PSD_TOL:
            raise NotDensityMatrix(f"not positive semidefinite (eigenvalue {lowest:.3e})")
        object.__setattr__(self, "entries", _frozen(m))

    @classmethod
    def _trusted(cls, m: np.ndarray) -> "DensityMatrix":
        # skips validation; callers guarantee the invariants by construction
        obj = object.__new__(cls)
        m = np.asarray(m, dtype=np.complex128)
        object.__setattr__(obj, "entries", _frozen(0.5 * (m + m.conj().T)))
        return obj

    @property
    def num_qubits(self) -> int:
        return _num_qubits_for(self.entries.shape[0])

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues, with numerical noise in [-1e-10, 0) clamped to 0."""
        w = np.linalg.eigvalsh(self.entries)
        return np.where((w < 0) & (w >= -PSD_TOL), 0.0, w)

    def purity(self) -> float:
        m = self.entries
        return float(np.real(np.sum(m * m.T)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(num_qubits={self.num_qubits})"


def as_state(obj) -> PureState:
    return obj if isinstance(obj, PureState) else PureState(obj)


def as_density(obj) -> DensityMatrix:
    if isinstance(obj, DensityMatrix):
        return obj
    if isinstance(obj, PureState):
        return obj.density_matrix()
    return DensityMatrix(obj)


def qubit_subset(indices: Iterable[int] | str, num_qubits: int) -> tuple[int, ...]:
    """Validate 1-based qubit labels and return them sorted.

    A string like ``"1247"`` is read one digit per qubit (only for N <= 9);
    ``"1,2,10"`` and ``"1-2-10"`` work for any N.
    """
    if isinstance(indices, str):
        text = indices.strip().strip("()")
        if "," in text or "-" in text:
            raw = [int(t) for t in re.split(r"[,-]", text) if t.strip()]
        elif text.isdigit():
            raw = [int(ch) for ch in text]
        else:
            raise BadSubset(f"cannot read a qubit subset from {indices!r}")
    else:
        raw = [int(i) for i in indices]
    if len(set(raw)) != len(raw):
        raise BadSubset(f"duplicate qubit labels in {raw}")
    bad = [i for i in raw if not 1 <= i <= num_qubits]
    if bad:
        raise BadSubset(f"qubit labels {bad} outside [1, {num_qubits}]")
    return tuple(sorted(raw))


def qubit_mask(subset: Sequence[int], num_qubits: int) -> int:
    """Bit mask of ``subset`` in the amplitude index."""
    mask = 0
    for q in subset:
        mask |= 1 << (num_qubits - q)
    return mask


def normalize(amplitudes) -> PureState:
    amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(amps)
    if not norm >= 1e-300:
        raise ZeroState("cannot normalize a zero vector")
    return PureState(amps / norm)


def inner_product(a, b) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    a, b = as_state(a), as_state(b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"{a.num_qubits}-qubit vs {b.num_qubits}-qubit state")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(a, b, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> PureState:
    a, b = as_state(a), as_state(b)
    n = a.num_qubits + b.num_qubits
    if n > max_qubits:
        raise CapacityExceeded(f"{n} qubits exceeds the configured maximum of {max_qubits}")
    return PureState(np.kron(a.amplitudes, b.amplitudes))


def partial_trace(rho, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the qubits in ``keep`` (1-based, output in ascending order).

    Accepts a :class:`DensityMatrix` or, as a faster route, a :class:`PureState`.
    """
    if isinstance(rho, PureState):
        n = rho.num_qubits
        keep = qubit_subset(keep, n)
        if not keep:
            raise BadSubset("keep must be nonempty")
        traced = [q for q in range(1, n + 1) if q not in keep]
        psi = rho.amplitudes.reshape([2] * n)
        psi = np.transpose(psi, [q - 1 for q in keep + tuple(traced)])
        psi = psi.reshape(2 ** len(keep), -1)
        return DensityMatrix._trusted(psi @ psi.conj().T)

    rho = as_density(rho)
    n = rho.num_qubits
    keep = qubit_subset(keep, n)
    if not keep:
        raise BadSubset("keep must be nonempty")
    traced = [q for q in range(1, n + 1) if q not in keep]
    order = [q - 1 for q in keep + tuple(traced)]
    t = rho.entries.reshape([2] * (2 * n))
    t = np.transpose(t, order + [n + i for i in order])
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    t = t.reshape(dk, dt, dk, dt)
    return DensityMatrix._trusted(np.einsum("ajbj->ab", t))


def permute_qubits(state, perm: Sequence[int]) -> PureState:
    """Relabel qubits: old qubit ``q`` becomes qubit ``perm[q-1]`` (all labels 1-based)."""
    state = as_state(state)
    n = state.num_qubits
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, n + 1)):
        raise BadPermutation(f"{perm} is not a permutation of 1..{n}")
    axes = [0] * n
    for old, new in enumerate(perm):
        axes[new - 1] = old
    t = np.transpose(state.amplitudes.reshape([2] * n), axes)
    return PureState(t.reshape(-1))


def random_pure(num_qubits: int, seed=None, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> PureState:
    """Haar-random pure state from normalized i.i.d. complex Gaussians.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts, including a
    ``Generator`` to draw successive states from one stream.
    """
    if not 1 <= num_qubits <= max_qubits:
        raise CapacityExceeded(f"num_qubits={num_qubits} outside [1, {max_qubits}]")
    rng = np.random.default_rng(seed)
    d = 2 ** num_qubits
    re = rng.standard_normal(d)
    im = rng.standard_normal(d)
    return normalize(re + 1j * im)


def _xlogx(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = p[nz] * np.log2(p[nz])
    return out


def von_neumann_entropy(rho) -> float:
    w = as_density(rho).eigenvalues()
    return float(max(0.0, -np.sum(_xlogx(w))))


def measures_2q(rho_reduced) -> tuple[float, float, float]:
    """(E_N, E_tr, E_d) of a one-qubit reduced density matrix.

    E_N is the base-2 von Neumann entropy, E_tr = 1 - Tr rho^2 and
    E_d = det rho.  For a two-qubit pure state all three vanish together.
    """
    m = np.asarray(rho_reduced.entries if isinstance(rho_reduced, DensityMatrix) else rho_reduced)
    if m.shape != (2, 2):
        raise BadDimension(f"expected a 2x2 one-qubit density matrix, got shape {m.shape}")
    rho = as_density(m)
    w = rho.eigenvalues()
    e_n = float(max(0.0, -np.sum(_xlogx(w))))
    e_tr = float(max(0.0, 1.0 - rho.purity()))
    e_d = float(max(0.0, np.prod(np.clip(w, 0.0, None))))
    return e_n, e_tr, e_d


# -- fixtures used in tests, demos and code constructors ----------------------

def basis_state(bits: str) -> PureState:
    """Computational basis state, e.g. ``basis_state("101")`` = |up down up>."""
    if not bits or set(bits) - {"0", "1"}:
        raise BadDimension(f"invalid basis string {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return PureState(amps)


def ghz(num_qubits: int, sign: int = 1) -> PureState:
    amps = np.zeros(2 ** num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    amps[-1] = sign
    return normalize(amps)


def w_state(num_qubits: int) -> PureState:
    """Equal superposition of the single-up basis strings."""
    amps = np.zeros(2 ** num_qubits, dtype=np.complex128)
    for q in range(num_qubits):
        amps[1 << q] = 1.0
    return normalize(amps)


def bell(kind: str = "phi+") -> PureState:
    s = 1 / np.sqrt(2)
    table = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    return PureState(table[kind])
