"""Partial-conjugation concurrence for N-qubit states, with Wootters benchmarks."""
from .codes import CodeReport, shor_code, steane_zero, verify_code
from .concurrence import (
    ConcurrenceReport,
    all_concurrences,
    canonical_purification,
    concurrence_2q_closed_form,
    concurrence_R,
    concurrence_R_mixed,
    concurrence_symplectic,
    conjugate_in_subset,
    real_rho_shortcut,
)
from .errors import *  # noqa: F401,F403
from .ketparse import format_ket, load_state, parse_amplitudes, parse_ket
from .state import (
    DensityMatrix,
    PureState,
    basis_state,
    bell,
    ghz,
    inner_product,
    measures_2q,
    normalize,
    partial_trace,
    permute_qubits,
    random_pure,
    tensor,
    w_state,
)
from .wootters import WoottersResult, eof, r_eigenvalues, spin_flip, wootters_concurrence

__version__ = "0.1.0"
