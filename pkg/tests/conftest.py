import numpy as np
import pytest

ACCEPTANCE_LINES = []


def record_acceptance(number, name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_amplitudes(rng, n):
    v = rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n)
    return v / np.linalg.norm(v)


def random_density(rng, dim=4, rank=None, real=False):
    rank = rank or dim
    g = rng.standard_normal((dim, rank))
    if not real:
        g = g + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def spin_values(index, n):
    """m_j = +1/2 for a set bit (qubit 1 = most significant), else -1/2."""
    return [0.5 if (index >> (n - 1 - j)) & 1 else -0.5 for j in range(n)]


def index_of(spins):
    out = 0
    for m in spins:
        out = (out << 1) | (1 if m > 0 else 0)
    return out
