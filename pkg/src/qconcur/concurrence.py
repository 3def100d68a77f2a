"""Partial-conjugation concurrence of pure N-qubit states.

For a sector S of qubits the conjugate state flips every spin in S,
complex-conjugates the amplitude and weights it by exp(i*pi*sum_{j in S} m_j),
with m_j = +-1/2.  The concurrence C_R(S) is the modulus of the overlap of
the state with that conjugate.  Even-size sectors give values in [0, 1];
odd-size sectors are always exactly orthogonal to their conjugates.

Mixed two-qubit states are handled through a canonical purification: the
concurrence of the pure parent on the system pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BadDimension, BadSubset, NotDensityMatrix, NotReal, OddSubset
from .state import (
    PureState,
    as_density,
    as_state,
    permute_qubits,
    qubit_mask,
    qubit_subset,
)

# eigenvalues of rho below this are treated as absent branches of the parent
RANK_TOL = 1e-12
# eigenvalues closer than this are treated as degenerate when ordering branches
DEGENERACY_TOL = 1e-10


def _sector(state: PureState, subset) -> tuple[int, ...]:
    sector = qubit_subset(subset, state.num_qubits)
    if not sector:
        raise BadSubset("sector must contain at least one qubit")
    return sector


def _sector_phases(num_qubits: int, mask: int, k: int) -> np.ndarray:
    # exp(i*pi*sum m_j) with sum m_j = (#up in sector) - k/2
    idx = np.arange(2 ** num_qubits)
    ups = np.bitwise_count(idx & mask).astype(np.float64)
    return np.exp(1j * np.pi * (ups - k / 2))


def conjugate_in_subset(state, subset) -> PureState:
    """Partially conjugated partner of ``state`` on the qubits in ``subset``."""
    state = as_state(state)
    sector = _sector(state, subset)
    n = state.num_qubits
    mask = qubit_mask(sector, n)
    a = state.amplitudes
    out = np.empty_like(a)
    idx = np.arange(a.size)
    out[idx ^ mask] = _sector_phases(n, mask, len(sector)) * a.conj()
    return PureState(out)


def conjugate_overlap(state, subset) -> complex:
    """Raw overlap <conj_S(psi)|psi>; any sector size, no parity check."""
    state = as_state(state)
    sector = _sector(state, subset)
    n = state.num_qubits
    mask = qubit_mask(sector, n)
    a = state.amplitudes
    idx = np.arange(a.size)
    # <conj|psi> = sum_m conj(phase_m) a_m a_{m xor mask}
    phases = _sector_phases(n, mask, len(sector))
    return complex(np.sum(phases.conj() * a * a[idx ^ mask]))


def concurrence_R(state, subset, *, allow_odd: bool = False) -> float:
    """C_R of ``state`` on the qubit sector ``subset`` (1-based labels).

    Odd sectors raise :class:`OddSubset` unless ``allow_odd`` is set, in which
    case 0.0 is returned.
    """
    state = as_state(state)
    sector = _sector(state, subset)
    if len(sector) % 2:
        if allow_odd:
            return 0.0
        raise OddSubset(f"sector {sector} has odd size {len(sector)}; its concurrence vanishes identically")
    return abs(conjugate_overlap(state, sector))


def concurrence_2q_closed_form(state) -> float:
    """2|a_uu a_dd - a_ud a_du| for a two-qubit pure state."""
    state = as_state(state)
    if state.num_qubits != 2:
        raise BadDimension(f"expected 2 qubits, got {state.num_qubits}")
    # index 3 = up-up, 0 = down-down
    dd, du, ud, uu = state.amplitudes
    return float(2 * abs(uu * dd - ud * du))


def symplectic_quadruplet(state, pair) -> tuple[np.ndarray, ...]:
    """The vectors (V1, V2, V3, V4) of amplitudes with the pair in up-up, up-down,
    down-up, down-down.

    Each vector runs over the remaining qubits in descending basis order
    (all-up first), so for three qubits V1 = (a1, a2) in the up-first labelling.
    """
    state = as_state(state)
    pair = _sector(state, pair)
    if len(pair) != 2:
        raise BadSubset(f"expected a qubit pair, got {pair}")
    n = state.num_qubits
    i, j = pair
    t = state.amplitudes.reshape([2] * n)
    t = np.moveaxis(t, (i - 1, j - 1), (0, 1)).reshape(2, 2, -1)[:, :, ::-1]
    return t[1, 1], t[1, 0], t[0, 1], t[0, 0]


def concurrence_symplectic(state, pair) -> float:
    """C_R of a pair via 2|V4.V1 - V3.V2| with unconjugated dot products."""
    v1, v2, v3, v4 = symplectic_quadruplet(state, pair)
    return float(2 * abs(v4 @ v1 - v3 @ v2))


@dataclass(frozen=True)
class ConcurrenceReport:
    """All C_R values of one sector size, keyed by sector in lexicographic order."""

    num_qubits: int
    k: int
    entries: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.entries) != comb(self.num_qubits, self.k):
            raise ValueError(f"expected {comb(self.num_qubits, self.k)} sectors, got {len(self.entries)}")

    def __getitem__(self, sector) -> float:
        return self.entries[qubit_subset(sector, self.num_qubits)]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def values(self) -> np.ndarray:
        return np.fromiter(self.entries.values(), dtype=np.float64, count=len(self.entries))

    def sectors_where(self, predicate) -> list[tuple[int, ...]]:
        return [s for s, v in self.entries.items() if predicate(v)]


def front_permutation(sector: Sequence[int], num_qubits: int) -> list[int]:
    """Permutation (old label -> new label) that moves ``sector`` to qubits 1..k in order."""
    rest = [q for q in range(1, num_qubits + 1) if q not in sector]
    perm = [0] * num_qubits
    for new, old in enumerate(list(sector) + rest, start=1):
        perm[old - 1] = new
    return perm


def concurrence_front(state, sector) -> float:
    """C_R on ``sector`` computed by permuting the sector to the leading qubits."""
    state = as_state(state)
    sector = _sector(state, sector)
    moved = permute_qubits(state, front_permutation(sector, state.num_qubits))
    return concurrence_R(moved, range(1, len(sector) + 1))


def all_concurrences(state, k: int) -> ConcurrenceReport:
    """C_R for every k-qubit sector, k even."""
    state = as_state(state)
    n = state.num_qubits
    if k % 2:
        raise OddSubset(f"sector size k={k} is odd")
    if not 2 <= k <= n:
        raise BadDimension(f"sector size k={k} must lie in [2, {n}]")
    entries = {s: concurrence_front(state, s) for s in combinations(range(1, n + 1), k)}
    return ConcurrenceReport(n, k, entries)


def concurrence_table(state, ks: Iterable[int]) -> dict[int, ConcurrenceReport]:
    return {k: all_concurrences(state, k) for k in ks}


# -- mixed two-qubit states --------------------------------------------------

def _is_real(m: np.ndarray, tol: float = 1e-12) -> bool:
    return float(np.max(np.abs(m.imag))) < tol


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    j = int(np.argmax(np.abs(v)))
    return v * (abs(v[j]) / v[j])


def _branch_key(v: np.ndarray) -> tuple:
    # degenerate branches: lowest index of the dominant component first, then components
    j = int(np.argmax(np.round(np.abs(v), 12)))
    return (j,) + tuple(x for c in v for x in (-round(c.real, 12), -round(c.imag, 12)))


def purification_branches(rho) -> tuple[np.ndarray, np.ndarray]:
    """Canonical eigen-branches of a density matrix.

    Returns ``(weights, vectors)``: nonzero eigenvalues in descending order and
    the matching eigenvectors as rows, each with its largest-magnitude
    component made real and positive.  Real matrices get real eigenvectors.
    """
    m = as_density(rho).entries
    if _is_real(m):
        w, v = np.linalg.eigh(m.real)
        v = v.astype(np.complex128)
    else:
        w, v = np.linalg.eigh(m)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order].T
    keep = w > RANK_TOL
    w, v = w[keep], np.array([_canonical_phase(x) for x in v[keep]])

    # reorder runs of degenerate eigenvalues deterministically
    out_w, out_v, start = [], [], 0
    while start < len(w):
        stop = start + 1
        while stop < len(w) and w[start] - w[stop] < DEGENERACY_TOL:
            stop += 1
        group = sorted(range(start, stop), key=lambda i: _branch_key(v[i]))
        out_w.extend(w[i] for i in group)
        out_v.extend(v[i] for i in group)
        start = stop
    return np.array(out_w), np.array(out_v).reshape(len(out_w), m.shape[0])


def canonical_purification(rho) -> PureState:
    """Pure parent of a two-qubit density matrix on 2 + ceil(log2(rank)) qubits.

    The parent is sum_i sqrt(p_i) |psi_i>|i>, with the system pair as qubits 1
    and 2 and the ancilla register after them.
    """
    rho = as_density(rho)
    if rho.num_qubits != 2:
        raise NotDensityMatrix(f"expected a two-qubit density matrix, got {rho.num_qubits} qubits")
    w, v = purification_branches(rho)
    rank = len(w)
    n_anc = int(np.ceil(np.log2(rank))) if rank > 1 else 0
    d_anc = 2 ** n_anc
    parent = np.zeros((4, d_anc), dtype=np.complex128)
    for i, (p, vec) in enumerate(zip(w, v)):
        parent[:, i] = np.sqrt(p) * vec
    # system index is the high part of the amplitude index
    return PureState(parent.reshape(-1))


def concurrence_R_mixed(rho) -> float:
    """C_R of a two-qubit mixed state, from its canonical pure parent."""
    parent = canonical_purification(rho)
    return concurrence_R(parent, (1, 2))


def real_rho_shortcut(rho) -> float:
    """2|rho_14 - rho_23| for a real two-qubit density matrix.

    Slot 1 is up-up and slot 4 is down-down, i.e. array indices 3 and 0.
    """
    m = as_density(rho).entries
    if m.shape != (4, 4):
        raise BadDimension(f"expected a 4x4 matrix, got {m.shape}")
    if not _is_real(m):
        raise NotReal(f"rho has imaginary parts up to {np.max(np.abs(m.imag)):.3e}")
    m = m.real
    return float(2 * abs(m[3, 0] - m[2, 1]))
