import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qconcur.errors import (
    BadDimension,
    BadPermutation,
    BadSubset,
    CapacityExceeded,
    DimensionMismatch,
    NotDensityMatrix,
    ZeroState,
)
from qconcur.state import (
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
    qubit_subset,
    random_pure,
    tensor,
)

from conftest import random_amplitudes


def brute_partial_trace(rho, n, keep):
    """Sum matrix elements over every assignment of the traced-out bits."""
    keep = [q - 1 for q in keep]
    traced = [q for q in range(n) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def index(kbits, tbits):
        bits = [0] * n
        for pos, b in zip(keep, kbits):
            bits[pos] = b
        for pos, b in zip(traced, tbits):
            bits[pos] = b
        return int("".join(map(str, bits)), 2)

    for a, b in itertools.product(itertools.product((0, 1), repeat=len(keep)), repeat=2):
        ia, ib = int("".join(map(str, a)), 2), int("".join(map(str, b)), 2)
        for t in itertools.product((0, 1), repeat=len(traced)):
            out[ia, ib] += rho[index(a, t), index(b, t)]
    return out


def test_normalize_examples():
    assert np.allclose(normalize([2, 0, 0, 0]).amplitudes, [1, 0, 0, 0], atol=0)
    s = 1 / np.sqrt(2)
    assert np.allclose(normalize([1, 0, 0, 1]).amplitudes, [s, 0, 0, s], atol=1e-15)
    with pytest.raises(ZeroState):
        normalize([0, 0])


def test_normalize_preserves_direction(rng):
    v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    out = normalize(3.7 * v).amplitudes
    assert abs(np.linalg.norm(out) - 1) < 1e-12
    assert np.allclose(out, v / np.linalg.norm(v), atol=1e-15)


def test_pure_state_rejects_bad_length():
    with pytest.raises(BadDimension):
        PureState([1, 0, 0])


def test_pure_state_is_immutable():
    s = basis_state("01")
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1


def test_inner_product_examples():
    s = 1 / np.sqrt(2)
    assert inner_product([1, 0], [1, 0]) == 1
    assert inner_product([1, 0], [0, 1]) == 0
    assert abs(inner_product([s, s], [s, -s])) < 1e-16
    with pytest.raises(DimensionMismatch):
        inner_product([1, 0], [1, 0, 0, 0])


def test_inner_product_conjugate_linear_in_first(rng):
    a, b = random_amplitudes(rng, 2), random_amplitudes(rng, 2)
    phase = np.exp(0.3j)
    assert np.isclose(inner_product(phase * a, b), np.conj(phase) * inner_product(a, b), atol=1e-15)
    assert np.isclose(inner_product(a, phase * b), phase * inner_product(a, b), atol=1e-15)


def test_tensor_examples():
    up, down = basis_state("1"), basis_state("0")
    assert np.array_equal(tensor(up, down).amplitudes, basis_state("10").amplitudes)
    t = tensor(bell(), up)
    assert t.num_qubits == 3 and abs(np.linalg.norm(t.amplitudes) - 1) < 1e-15
    shor = tensor(tensor(ghz(3), ghz(3)), ghz(3))
    assert shor.num_qubits == 9
    assert np.count_nonzero(np.abs(shor.amplitudes) > 1e-12) == 8


def test_tensor_capacity():
    with pytest.raises(CapacityExceeded):
        tensor(ghz(9), ghz(8))
    with pytest.raises(CapacityExceeded):
        tensor(ghz(2), ghz(2), max_qubits=3)


def test_partial_trace_examples():
    assert np.allclose(partial_trace(bell().density_matrix(), [1]).entries, np.eye(2) / 2, atol=1e-15)
    out = partial_trace(basis_state("10").density_matrix(), [2]).entries
    assert np.allclose(out, [[1, 0], [0, 0]], atol=0)  # |down><down| is index 0
    g = partial_trace(ghz(3).density_matrix(), [1, 2]).entries
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    assert np.allclose(g, expected, atol=1e-15)


@pytest.mark.parametrize("keep", [[1], [2], [3], [1, 3], [2, 4], [1, 2, 4], [4], [1, 2, 3, 4]])
def test_partial_trace_matches_brute_force(rng, keep):
    n = 4
    psi = PureState(random_amplitudes(rng, n))
    rho = psi.density_matrix().entries
    expected = brute_partial_trace(rho, n, keep)
    assert np.allclose(partial_trace(psi.density_matrix(), keep).entries, expected, atol=1e-14)
    assert np.allclose(partial_trace(psi, keep).entries, expected, atol=1e-14)


def test_partial_trace_of_mixed_matches_brute_force(rng):
    from conftest import random_density

    rho = random_density(rng, 8)
    for keep in ([1], [2, 3], [1, 3]):
        assert np.allclose(partial_trace(DensityMatrix(rho), keep).entries, brute_partial_trace(rho, 3, keep),
                           atol=1e-14)


def test_partial_trace_rejects_bad_subsets():
    with pytest.raises(BadSubset):
        partial_trace(ghz(3), [4])
    with pytest.raises(BadSubset):
        partial_trace(ghz(3), [])
    with pytest.raises(BadSubset):
        partial_trace(ghz(3), [1, 1])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(2, 6), data=st.data())
def test_schmidt_symmetry_and_unit_trace(seed, n, data):
    psi = random_pure(n, seed)
    keep = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1))
    comp = [q for q in range(1, n + 1) if q not in keep]
    a = partial_trace(psi, keep)
    b = partial_trace(psi, comp)
    assert abs(np.trace(a.entries).real - 1) < 1e-12
    assert abs(np.trace(b.entries).real - 1) < 1e-12
    wa = np.sort(np.linalg.eigvalsh(a.entries))[::-1]
    wb = np.sort(np.linalg.eigvalsh(b.entries))[::-1]
    m = min(len(wa), len(wb))
    assert np.allclose(wa[:m], wb[:m], atol=1e-10)
    assert np.all(np.abs(wa[m:]) < 1e-10) and np.all(np.abs(wb[m:]) < 1e-10)


def brute_permute(amps, n, perm):
    out = np.zeros_like(amps)
    for idx in range(2 ** n):
        bits = format(idx, f"0{n}b")
        new = ["0"] * n
        for old, b in enumerate(bits):
            new[perm[old] - 1] = b
        out[int("".join(new), 2)] = amps[idx]
    return out


def test_permute_examples(rng):
    s = random_pure(3, 5)
    assert np.array_equal(permute_qubits(s, [1, 2, 3]).amplitudes, s.amplitudes)
    assert np.array_equal(permute_qubits(basis_state("10"), [2, 1]).amplitudes, basis_state("01").amplitudes)
    psi = random_pure(4, 11)
    perm = [3, 1, 4, 2]
    inv = [0] * 4
    for old, new in enumerate(perm, start=1):
        inv[new - 1] = old
    back = permute_qubits(permute_qubits(psi, perm), inv)
    assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-15


@pytest.mark.parametrize("perm", [[2, 3, 1, 4], [4, 3, 2, 1], [1, 4, 2, 3]])
def test_permute_matches_brute_force(perm):
    psi = random_pure(4, 3)
    out = permute_qubits(psi, perm)
    assert np.allclose(out.amplitudes, brute_permute(psi.amplitudes, 4, perm), atol=0)
    assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-15


def test_permute_rejects_non_bijections():
    with pytest.raises(BadPermutation):
        permute_qubits(ghz(3), [1, 1, 2])
    with pytest.raises(BadPermutation):
        permute_qubits(ghz(3), [1, 2])


def test_random_pure_is_deterministic_and_normalized():
    a, b = random_pure(4, 7), random_pure(4, 7)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert abs(np.linalg.norm(random_pure(2, 123).amplitudes) - 1) < 1e-12
    assert not np.array_equal(random_pure(4, 8).amplitudes, a.amplitudes)
    with pytest.raises(CapacityExceeded):
        random_pure(17, 0)
    with pytest.raises(CapacityExceeded):
        random_pure(0, 0)


def test_random_pure_bloch_vectors_are_isotropic():
    gen = np.random.default_rng(99)
    x = np.array([random_pure(1, gen).amplitudes for _ in range(100_000)])
    a, b = x[:, 0], x[:, 1]
    bloch = np.stack([2 * (a.conj() * b).real, 2 * (a.conj() * b).imag, np.abs(b) ** 2 - np.abs(a) ** 2], axis=1)
    assert np.linalg.norm(bloch.mean(axis=0)) < 0.02


def test_measures_2q_examples():
    assert np.allclose(measures_2q(np.eye(2) / 2), (1, 0.5, 0.25), atol=1e-15)
    assert np.allclose(measures_2q(np.diag([1.0, 0.0])), (0, 0, 0), atol=0)
    e_n, e_tr, e_d = measures_2q(np.diag([0.75, 0.25]))
    # direct evaluation of -sum p log2 p, 1 - sum p^2 and the product of eigenvalues
    assert abs(e_n - (-(0.75 * np.log2(0.75) + 0.25 * np.log2(0.25)))) < 1e-15
    assert abs(e_n - 0.8113) < 1e-4
    assert abs(e_tr - 0.375) < 1e-15 and abs(e_d - 0.1875) < 1e-15
    with pytest.raises(BadDimension):
        measures_2q(np.eye(4) / 4)


def test_measures_vanish_together_on_two_qubit_pure_states():
    gen = np.random.default_rng(4)
    for i in range(10_000):
        if i % 2:
            psi = random_pure(2, gen)
        else:  # mix in exact product states so the zero branch is exercised
            psi = tensor(random_pure(1, gen), random_pure(1, gen))
        signs = {m > 1e-10 for m in measures_2q(partial_trace(psi, [1]))}
        assert len(signs) == 1


def test_density_matrix_validation():
    with pytest.raises(NotDensityMatrix):
        DensityMatrix([[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(NotDensityMatrix):
        DensityMatrix(np.eye(2))
    with pytest.raises(NotDensityMatrix):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(NotDensityMatrix):
        DensityMatrix(np.eye(3) / 3)


def test_qubit_subset_parsing():
    assert qubit_subset("1247", 7) == (1, 2, 4, 7)
    assert qubit_subset("(1,2,10)", 10) == (1, 2, 10)
    assert qubit_subset("3-1", 3) == (1, 3)
    assert qubit_subset([4, 2], 4) == (2, 4)
    with pytest.raises(BadSubset):
        qubit_subset([0], 3)
    with pytest.raises(BadSubset):
        qubit_subset("ab", 3)
