"""
Small dense complex-matrix helpers and structured unitary constructors.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The unitary
constructors return matrices with unit-norm columns, i.e. every entry of an
order-``n`` matrix has magnitude ``1/sqrt(n)``.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DimensionMismatch, NotPowerOfTwo

__all__ = [
    "DFT",
    "HADAMARD",
    "Permutation",
    "UnitaryFamily",
    "apply_row_permutation",
    "as_matrix",
    "dft_matrix",
    "fwht",
    "hadamard_matrix",
    "is_power_of_two",
    "logdet_eye_plus_gram",
    "rank_one_check",
]

DFT = "dft"
HADAMARD = "hadamard"


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def dft_matrix(n: int) -> np.ndarray:
    """
    Unitary DFT matrix of order `n`.

    ``U[j, k] = exp(-2j*pi*j*k/n) / sqrt(n)``.

    Examples
    --------
    >>> np.allclose(dft_matrix(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    True
    """
    if n < 1:
        raise ValueError("order must be positive")
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(-2j * np.pi * jk / n) / np.sqrt(n)


def hadamard_matrix(n: int) -> np.ndarray:
    """
    Sylvester-Hadamard matrix of order `n`, scaled to be unitary.

    Raises
    ------
    NotPowerOfTwo
        If `n` is not ``2**k``. Other Hadamard orders are not constructed.
    """
    if not is_power_of_two(n):
        raise NotPowerOfTwo(f"Sylvester construction needs a power of two, got {n}")
    h = np.ones((1, 1))
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return (h / np.sqrt(n)).astype(np.complex128)


def fwht(a: np.ndarray, axis: int = 0) -> np.ndarray:
    """
    Unnormalized fast Walsh-Hadamard transform along `axis`.

    Equivalent to ``sqrt(n) * hadamard_matrix(n) @ a`` for ``axis=0`` but
    costs ``O(n log n)`` per column.
    """
    a = np.moveaxis(np.array(a, dtype=np.result_type(a, np.float64)), axis, 0)
    n = a.shape[0]
    if not is_power_of_two(n):
        raise NotPowerOfTwo(f"transform length must be a power of two, got {n}")
    h = 1
    while h < n:
        a = a.reshape((n // (2 * h), 2, h) + a.shape[1:])
        top = a[:, 0] + a[:, 1]
        bot = a[:, 0] - a[:, 1]
        a = np.stack((top, bot), axis=1).reshape((n,) + a.shape[3:])
        h *= 2
    return np.moveaxis(a, 0, axis)


@dataclass(frozen=True)
class UnitaryFamily:
    """A DFT or Sylvester-Hadamard unitary of a given order."""

    kind: str
    order: int

    def __post_init__(self):
        if self.kind not in (DFT, HADAMARD):
            raise ValueError(f"unknown unitary family {self.kind!r}")
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.kind == HADAMARD and not is_power_of_two(self.order):
            raise NotPowerOfTwo(
                f"Sylvester construction needs a power of two, got {self.order}")

    def matrix(self) -> np.ndarray:
        if self.kind == DFT:
            return dft_matrix(self.order)
        return hadamard_matrix(self.order)


@dataclass(frozen=True)
class Permutation:
    """
    Bijection on ``{0, ..., order-1}`` used to permute matrix rows.

    ``mapping[j]`` is the source row placed at output row ``j``.
    """

    mapping: tuple

    def __init__(self, mapping: Sequence[int]):
        m = tuple(int(k) for k in mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a bijection on 0..{len(m) - 1}: {m}")
        object.__setattr__(self, "mapping", m)

    @property
    def order(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Permutation":
        return cls(rng.permutation(n))

    def inverse(self) -> "Permutation":
        inv = np.empty(self.order, dtype=int)
        inv[list(self.mapping)] = np.arange(self.order)
        return Permutation(inv)

    def is_identity(self) -> bool:
        return self.mapping == tuple(range(self.order))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.mapping, dtype=int)


def apply_row_permutation(perm: Permutation, m) -> np.ndarray:
    """Return the matrix whose row ``j`` is row ``perm.mapping[j]`` of `m`."""
    m = np.asarray(m)
    if m.ndim < 1 or perm.order != m.shape[0]:
        raise DimensionMismatch(
            f"permutation of order {perm.order} applied to {m.shape[0]} rows")
    return m[perm.as_array()]


def rank_one_check(m, tol: float = 1e-9) -> bool:
    """
    True if `m` has numerical rank at most one.

    The second singular value is compared against ``tol`` times the first;
    the all-zero matrix counts as rank one.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    s = np.linalg.svd(as_matrix(m), compute_uv=False)
    if s.size < 2 or s[0] == 0.0:
        return True
    return bool(s[1] <= tol * s[0])


def logdet_eye_plus_gram(x: np.ndarray) -> float:
    """``log det(I_T + X X^*)`` evaluated through the smaller Gram matrix."""
    x = np.asarray(x)
    g = x.conj().T @ x if x.shape[1] <= x.shape[0] else x @ x.conj().T
    sign, val = np.linalg.slogdet(np.eye(g.shape[0]) + g)
    return float(val)
