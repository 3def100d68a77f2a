"""Shor and Steane logical states and their concurrence spectra."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .concurrence import ConcurrenceReport, all_concurrences
from .errors import BadDimension, OddSubset, UnknownCode
from .state import PureState, ghz, tensor

ZERO_TOL = 1e-10
UNIT_TOL = 1e-10

# leftmost symbol is qubit 1; 0 -> down, 1 -> up
STEANE_ZERO_WORDS = (
    "0000000", "1010101", "1100110", "0001111",
    "0110011", "1011010", "0111100", "1101001",
)


def shor_code(logical: int) -> PureState:
    """Nine-qubit Shor code word: three copies of (|000> +- |111>)/sqrt(2)."""
    if logical not in (0, 1):
        raise ValueError(f"logical must be 0 or 1, got {logical!r}")
    block = ghz(3, sign=1 if logical == 0 else -1)
    return tensor(tensor(block, block), block)


def steane_zero() -> PureState:
    amps = np.zeros(2 ** 7, dtype=np.complex128)
    for word in STEANE_ZERO_WORDS:
        amps[int(word, 2)] = 1 / np.sqrt(8)
    return PureState(amps)


CODES = {
    "shor0": lambda: shor_code(0),
    "shor1": lambda: shor_code(1),
    "steane0": steane_zero,
}


@dataclass(frozen=True)
class SummaryRow:
    k: int
    num_zero_sectors: int
    num_unit_sectors: int
    max_other_value: float


@dataclass(frozen=True)
class CodeReport:
    code_name: str
    state: PureState
    per_k: dict[int, ConcurrenceReport]
    summary: list[SummaryRow]

    def to_dict(self) -> dict:
        """JSON-ready form: {code, n_qubits, reports: [{k, sectors}], summary}."""
        return {
            "code": self.code_name,
            "n_qubits": self.state.num_qubits,
            "reports": [
                {
                    "k": k,
                    "sectors": [
                        {"indices": list(s), "value": float(v)} for s, v in rep.entries.items()
                    ],
                }
                for k, rep in self.per_k.items()
            ],
            "summary": [
                {
                    "k": row.k,
                    "num_zero_sectors": row.num_zero_sectors,
                    "num_unit_sectors": row.num_unit_sectors,
                    "max_other_value": row.max_other_value,
                }
                for row in self.summary
            ],
        }


def summarize(report: ConcurrenceReport) -> SummaryRow:
    vals = report.values()
    zero = np.abs(vals) < ZERO_TOL
    unit = np.abs(vals - 1) < UNIT_TOL
    other = vals[~zero & ~unit]
    return SummaryRow(report.k, int(zero.sum()), int(unit.sum()), float(other.max()) if other.size else 0.0)


def code_state(code_name: str) -> PureState:
    try:
        return CODES[code_name]()
    except KeyError:
        raise UnknownCode(f"unknown code {code_name!r}; choose from {sorted(CODES)}") from None


def verify_code(code_name: str, ks: Iterable[int]) -> CodeReport:
    state = code_state(code_name)
    ks = [int(k) for k in ks]
    for k in ks:
        if k % 2:
            raise OddSubset(f"sector size k={k} is odd")
        if not 2 <= k <= state.num_qubits:
            raise BadDimension(f"sector size k={k} must lie in [2, {state.num_qubits}]")
    per_k = {k: all_concurrences(state, k) for k in ks}
    return CodeReport(code_name, state, per_k, [summarize(r) for r in per_k.values()])
