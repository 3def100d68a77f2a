"""Random-state experiments: C_R against C_W, parameter sweeps, k-sector spectra.

Every sample draws its state from a seed derived from ``(seed, sample_id)``
alone, so results do not depend on how samples are split across workers.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .concurrence import concurrence_R
from .errors import BadSubset, DegenerateInterpolant, DimensionMismatch, OddSubset
from .state import (
    DEFAULT_MAX_QUBITS,
    PureState,
    as_state,
    measures_2q,
    partial_trace,
    qubit_subset,
    random_pure,
)
from .wootters import wootters_concurrence

CW_RANK_THRESHOLD = 0.05
HISTOGRAM_BINS = 20


def derive_seed(seed: int, sample_id: int) -> int:
    """64-bit per-sample seed from the run seed and the sample index."""
    ss = np.random.SeedSequence([int(seed), int(sample_id)])
    return int(ss.generate_state(1, np.uint64)[0])


def sample_state(num_qubits: int, seed: int, sample_id: int, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> PureState:
    return random_pure(num_qubits, derive_seed(seed, sample_id), max_qubits=max_qubits)


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def sector_label(sector: Sequence[int]) -> str:
    return "-".join(str(q) for q in sector)


def _map_samples(func, args: list, workers: int) -> list:
    if workers <= 1 or len(args) < 2:
        return [func(a) for a in args]
    chunk = max(1, len(args) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, args, chunksize=chunk))


# -- C_R versus C_W ---------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    sample_id: int
    sector: tuple[int, int]
    c_r: float
    c_w_clamped: float
    c_w_unclamped: float
    e_n: float
    e_tr: float
    e_d: float


COMPARISON_COLUMNS = [f.name for f in fields(ComparisonRow)]


def compare_pair(state: PureState, pair: Sequence[int], sample_id: int = 0) -> ComparisonRow:
    """One row: C_R from the pure parent, C_W from the reduced pair.

    The E_* measures are those of the one-qubit marginal of the pair's
    first qubit.
    """
    pair = qubit_subset(pair, state.num_qubits)
    wr = wootters_concurrence(partial_trace(state, pair))
    e_n, e_tr, e_d = measures_2q(partial_trace(state, pair[:1]))
    return ComparisonRow(sample_id, pair, concurrence_R(state, pair), wr.c_w, wr.c_w_unclamped, e_n, e_tr, e_d)


def _compare_sample(args) -> list[ComparisonRow]:
    n, seed, sample_id, max_qubits = args
    psi = sample_state(n, seed, sample_id, max_qubits=max_qubits)
    return [compare_pair(psi, p, sample_id) for p in combinations(range(1, n + 1), 2)]


def run_compare(n_qubits: int = 4, samples: int = 1000, seed: int = 0, *, workers: int = 1,
                max_qubits: int = DEFAULT_MAX_QUBITS) -> list[ComparisonRow]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if n_qubits < 2:
        raise ValueError("need at least two qubits")
    args = [(n_qubits, seed, i, max_qubits) for i in range(samples)]
    return [row for rows in _map_samples(_compare_sample, args, workers) for row in rows]


def comparison_csv(rows: Iterable[ComparisonRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COMPARISON_COLUMNS)
    for row in rows:
        vals = astuple(row)
        w.writerow([fmt(vals[0]), sector_label(vals[1])] + [fmt(v) for v in vals[2:]])
    return buf.getvalue()


def read_comparison_csv(text: str) -> list[dict]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rec = dict(rec)
        rec["sample_id"] = int(rec["sample_id"])
        rec["sector"] = tuple(int(q) for q in rec["sector"].split("-"))
        for key in COMPARISON_COLUMNS[2:]:
            rec[key] = float(rec[key])
        rows.append(rec)
    return rows


@dataclass(frozen=True)
class CompareSummary:
    rows: int
    mean_c_r: float
    mean_c_w: float
    fraction_c_w_zero: float
    rank_rows: int
    spearman: float
    clamp_consistent: bool

    def lines(self) -> list[str]:
        return [
            f"rows: {self.rows}",
            f"mean C_R: {fmt(self.mean_c_r)}",
            f"mean C_W: {fmt(self.mean_c_w)}",
            f"fraction C_W = 0: {fmt(self.fraction_c_w_zero)}",
            f"rank correlation (C_W > {CW_RANK_THRESHOLD}, {self.rank_rows} rows): {fmt(self.spearman)}",
            f"clamp consistent: {self.clamp_consistent}",
        ]


def summarize_comparison(rows: Sequence[ComparisonRow], threshold: float = CW_RANK_THRESHOLD) -> CompareSummary:
    c_r = np.array([r.c_r for r in rows])
    c_w = np.array([r.c_w_clamped for r in rows])
    raw = np.array([r.c_w_unclamped for r in rows])
    sel = c_w > threshold
    rho = float(stats.spearmanr(c_r[sel], c_w[sel]).statistic) if sel.sum() > 2 else float("nan")
    # the clamped value is min(1, max(0, raw)); raw never exceeds 1 beyond round-off
    consistent = bool(np.all(c_w == np.minimum(1.0, np.maximum(0.0, raw))))
    return CompareSummary(len(rows), float(c_r.mean()), float(c_w.mean()), float(np.mean(c_w == 0)),
                          int(sel.sum()), rho, consistent)


# -- parameter sweeps --------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    t: float
    c_r: float
    c_w_clamped: float | None
    c_w_unclamped: float | None


SWEEP_COLUMNS = [f.name for f in fields(SweepRow)]


def run_sweep(state_a, state_b, steps: int, sector) -> list[SweepRow]:
    """Evaluate the normalized interpolant (1-t)A + tB on a uniform grid of ``steps`` points.

    C_W columns are filled only for two-qubit sectors.
    """
    a, b = as_state(state_a), as_state(state_b)
    if a.num_qubits != b.num_qubits:
        raise DimensionMismatch(f"{a.num_qubits}-qubit vs {b.num_qubits}-qubit endpoint")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    sector = qubit_subset(sector, a.num_qubits)
    if len(sector) % 2:
        raise OddSubset(f"sector {sector} has odd size")
    if not sector:
        raise BadSubset("empty sector")
    rows = []
    for t in np.linspace(0.0, 1.0, steps):
        v = (1 - t) * a.amplitudes + t * b.amplitudes
        norm = np.linalg.norm(v)
        if norm < 1e-10:
            raise DegenerateInterpolant(f"interpolant vanishes at t={t:.6g}")
        psi = PureState(v / norm)
        c_w = raw = None
        if len(sector) == 2:
            wr = wootters_concurrence(partial_trace(psi, sector))
            c_w, raw = wr.c_w, wr.c_w_unclamped
        rows.append(SweepRow(float(t), concurrence_R(psi, sector), c_w, raw))
    return rows


def sweep_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in rows:
        w.writerow([fmt(v) for v in astuple(row)])
    return buf.getvalue()


# -- k-sector spectra --------------------------------------------------------

def _spectrum_sample(args) -> list[float]:
    n, k, seed, sample_id, max_qubits = args
    psi = sample_state(n, seed, sample_id, max_qubits=max_qubits)
    return [concurrence_R(psi, s) for s in combinations(range(1, n + 1), k)]


def run_spectrum(n_qubits: int = 6, k: int = 4, samples: int = 1000, seed: int = 0, *, workers: int = 1,
                 max_qubits: int = DEFAULT_MAX_QUBITS) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """All k-sector C_R values for each random sample: (sectors, array of shape (samples, C(n, k)))."""
    if k % 2:
        raise OddSubset(f"sector size k={k} is odd")
    if not 2 <= k <= n_qubits:
        raise BadSubset(f"sector size k={k} must lie in [2, {n_qubits}]")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sectors = list(combinations(range(1, n_qubits + 1), k))
    args = [(n_qubits, k, seed, i, max_qubits) for i in range(samples)]
    values = np.array(_map_samples(_spectrum_sample, args, workers)).reshape(samples, len(sectors))
    return sectors, values


def spectrum_csv(sectors, values: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample_id"] + [sector_label(s) for s in sectors])
    for i, row in enumerate(values):
        w.writerow([str(i)] + [fmt(v) for v in row])
    return buf.getvalue()


def histogram(values, bins: int = HISTOGRAM_BINS) -> tuple[np.ndarray, np.ndarray]:
    """Counts over ``bins`` uniform bins on [0, 1]; values a hair above 1 land in the last bin."""
    v = np.clip(np.asarray(values, dtype=np.float64).ravel(), 0.0, 1.0)
    return np.histogram(v, bins=bins, range=(0.0, 1.0))


def histogram_lines(values, bins: int = HISTOGRAM_BINS) -> list[str]:
    counts, edges = histogram(values, bins)
    width = max(1, counts.max())
    return [
        f"[{edges[i]:.2f}, {edges[i + 1]:.2f}{']' if i == bins - 1 else ')'} {counts[i]:8d} "
        + "#" * int(round(40 * counts[i] / width))
        for i in range(bins)
    ]
