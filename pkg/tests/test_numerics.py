import numpy as np
import pytest
from hypothesis import given, strategies as st

from lowsnr.exceptions import NotPowerOfTwo
from lowsnr.numerics import (DFT, HADAMARD, Permutation, UnitaryFamily, apply_row_permutation,
                             dft_matrix, fwht, hadamard_matrix, is_power_of_two,
                             logdet_eye_plus_gram, rank_one_check)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_dft_unitary_with_unit_modulus_entries(n):
    f = dft_matrix(n)
    assert np.allclose(f.conj().T @ f, np.eye(n), atol=1e-12)
    assert np.allclose(np.abs(f), 1 / np.sqrt(n))


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
def test_hadamard_orthogonal(n):
    h = hadamard_matrix(n)
    assert np.allclose(h.T @ h, np.eye(n), atol=1e-12)
    assert np.allclose(np.abs(h), 1 / np.sqrt(n))


@pytest.mark.parametrize("n", [0, 3, 6, 12])
def test_hadamard_rejects_non_powers_of_two(n):
    with pytest.raises(NotPowerOfTwo):
        hadamard_matrix(n)


def test_power_of_two_predicate():
    assert [k for k in range(1, 20) if is_power_of_two(k)] == [1, 2, 4, 8, 16]


@given(st.integers(0, 5), st.integers(0, 2**31 - 1))
def test_fwht_matches_dense_hadamard(k, seed):
    n = 2 ** k
    r = np.random.default_rng(seed)
    a = r.standard_normal((n, 3)) + 1j * r.standard_normal((n, 3))
    # oracle: the unnormalized Sylvester matrix applied densely
    dense = np.sqrt(n) * hadamard_matrix(n) @ a
    assert np.allclose(fwht(a, axis=0), dense, atol=1e-10)


def test_fwht_along_other_axis(rng):
    a = rng.standard_normal((5, 8))
    assert np.allclose(fwht(a, axis=1), fwht(a.T, axis=0).T)


def test_unitary_family_dispatch():
    assert np.allclose(UnitaryFamily(DFT, 4).matrix(), dft_matrix(4))
    assert np.allclose(UnitaryFamily(HADAMARD, 4).matrix(), hadamard_matrix(4))
    with pytest.raises(NotPowerOfTwo):
        UnitaryFamily(HADAMARD, 6)


@given(st.permutations(list(range(7))))
def test_permutation_inverse_roundtrip(mapping):
    p = Permutation(mapping)
    m = np.arange(49.0).reshape(7, 7)
    back = apply_row_permutation(p.inverse(), apply_row_permutation(p, m))
    assert np.array_equal(back, m)


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_permutation_random_is_seeded():
    a = Permutation.random(8, np.random.default_rng(5))
    b = Permutation.random(8, np.random.default_rng(5))
    assert a == b and sorted(a.as_array()) == list(range(8))


def test_rank_one_check(rng):
    u = rng.standard_normal((4, 1)) + 1j * rng.standard_normal((4, 1))
    w = rng.standard_normal((1, 3)) + 1j * rng.standard_normal((1, 3))
    assert rank_one_check(u @ w)
    assert rank_one_check(np.zeros((4, 3)))
    assert not rank_one_check(rng.standard_normal((4, 3)))


def test_logdet_against_slogdet(rng):
    x = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    ref = np.linalg.slogdet(np.eye(5) + x @ x.conj().T)[1]
    assert logdet_eye_plus_gram(x) == pytest.approx(ref, rel=1e-12)
