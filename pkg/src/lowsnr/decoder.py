"""
MAP block decoding of STORM.

`map_decode` evaluates the posterior of every constellation point directly.
`fast_decode` exploits the STORM structure: after undoing the row
permutation, the best nonzero point is the column ``v_i`` maximizing
``||Y^* v_i||^2``, which for DFT/Hadamard bases is one FFT/FHT per receive
antenna; a single threshold then decides against the zero symbol.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import LikelihoodModel, make_rng, seed_sequence, simulate_blocks
from .constellation import Constellation
from .exceptions import NotStorm
from .numerics import DFT, HADAMARD, fwht, is_power_of_two

__all__ = [
    "DecodeResult",
    "FastStormDecoder",
    "SerEstimate",
    "fast_decode",
    "map_decode",
    "map_decode_batch",
    "simulate_ser",
]


@dataclass(frozen=True)
class DecodeResult:
    """Decoded point index and the threshold statistic of the best ON point."""

    index: int
    omega: float = math.nan


def _first_argmax(a: np.ndarray) -> np.ndarray:
    # np.argmax already returns the first maximal index along the axis
    return np.argmax(a, axis=-1)


def map_decode_batch(y: np.ndarray, c: Constellation, Nr: Optional[int] = None,
                     model: Optional[LikelihoodModel] = None) -> np.ndarray:
    """Brute-force MAP indices for a batch ``(n, T, Nr)`` of received blocks."""
    y = np.asarray(y, dtype=np.complex128)
    nr = y.shape[-1] if Nr is None else Nr
    model = model or LikelihoodModel(c, nr)
    return _first_argmax(model.log_posterior_unnorm(y))


def map_decode(y, c: Constellation, Nr: Optional[int] = None) -> DecodeResult:
    """
    ``argmax_j log P_j + log p(Y | X_j)`` with ties going to the lowest index.
    """
    y = np.asarray(y, dtype=np.complex128)
    return DecodeResult(int(map_decode_batch(y[np.newaxis], c, Nr)[0]))


class FastStormDecoder:
    """
    Transform-domain MAP decoder for a constellation built by `build_storm`.

    The data-independent part of the threshold,
    ``log(P_on / P_zero) - Nr log(1 + K Nt T)``, is computed once.
    """

    def __init__(self, c: Constellation, Nr: Optional[int] = None):
        if c.storm is None:
            raise NotStorm("constellation does not carry a STORM spec")
        spec = c.storm
        p = c.params
        self.c = c
        self.Nr = p.Nr if Nr is None else int(Nr)
        self.T = p.T
        self.kind = spec.family.kind
        self.inverse_perm = spec.row_perm.inverse().as_array()
        self.identity_perm = spec.row_perm.is_identity()
        self.peak = p.peak_energy
        self.gain = self.peak / (1.0 + self.peak)
        self.zero_index = c.zero_index
        on = np.flatnonzero(~c.zero_mask)
        if on.size != self.T:
            raise NotStorm(f"expected {self.T} nonzero points, found {on.size}")
        self.on_prob = float(c.probs[on[0]])
        if self.zero_index is not None:
            self.const = (math.log(self.on_prob) - math.log(c.probs[self.zero_index])
                          - self.Nr * math.log1p(self.peak))
        else:
            self.const = math.nan
        self._dense_basis = None
        if self.kind == HADAMARD and not is_power_of_two(self.T):
            raise NotStorm("Hadamard family requires a power-of-two T")

    def column_energies(self, y: np.ndarray) -> np.ndarray:
        """
        ``||Y^* v_i||^2`` for every basis column, shape ``(n, T)``.

        ``y`` is the received batch before de-permutation.
        """
        y = np.asarray(y, dtype=np.complex128)
        if not self.identity_perm:
            # Y = P^* R: row t of the de-permuted block is row perm^{-1}(t) of R
            y = y[:, self.inverse_perm]
        if self.kind == DFT:
            # v_i^* y = sqrt(T) * ifft(y)[i] for the e^{-2 pi i jk/T}/sqrt(T) basis
            z = np.fft.ifft(y, axis=1) * math.sqrt(self.T)
        else:
            z = fwht(y, axis=1) / math.sqrt(self.T)
        return np.sum(np.abs(z) ** 2, axis=2)

    def decode_batch(self, y: np.ndarray):
        """Return ``(indices, omegas)`` for a batch of received blocks."""
        energy = self.column_energies(y)
        best = _first_argmax(energy)
        stat = energy[np.arange(energy.shape[0]), best]
        if self.zero_index is None:
            return best, np.full(best.shape, math.nan)
        omega = self.const + self.gain * stat
        idx = np.where(omega >= 0, best, self.zero_index)
        return idx, omega

    def decode(self, y) -> DecodeResult:
        y = np.asarray(y, dtype=np.complex128)
        idx, omega = self.decode_batch(y[np.newaxis])
        return DecodeResult(int(idx[0]), float(omega[0]))


def fast_decode(y, storm: Constellation, Nr: Optional[int] = None) -> DecodeResult:
    """
    Decode one received block of a STORM constellation by FFT/FHT.

    The nonzero points of `storm` are ordered like the basis columns and the
    zero symbol, when present, is last, so the returned index is directly
    comparable with `map_decode`.
    """
    return FastStormDecoder(storm, Nr).decode(y)


@dataclass(frozen=True)
class SerEstimate:
    """Symbol error rate with its binomial standard error."""

    ser: float
    std_error: float
    trials: int
    errors: int

    CSV_FIELDS = ("T", "Nt", "Nr", "P", "K", "trials", "ser", "std_error", "seed")

    def csv_row(self, c: Constellation, Nr: int, seed) -> list:
        p = c.params
        return [p.T, p.Nt, Nr, repr(p.P), repr(p.K), self.trials, repr(self.ser),
                repr(self.std_error), seed]


def simulate_ser(storm: Constellation, Nr: Optional[int] = None, trials: int = 10_000,
                 seed=0, batch: int = 50_000) -> SerEstimate:
    """
    Hard-decision symbol error rate of `fast_decode` over random blocks.

    Symbols are drawn from the constellation probabilities; each batch uses
    its own child seed so the error count does not depend on batch order.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    nr = storm.params.Nr if Nr is None else int(Nr)
    dec = FastStormDecoder(storm, nr)
    nbatches = -(-trials // batch)
    errors = 0
    for k, sub in enumerate(seed_sequence(seed).spawn(nbatches)):
        n = min(batch, trials - k * batch)
        rng = make_rng(sub)
        sent = rng.choice(storm.L, size=n, p=storm.probs)
        y = simulate_blocks(storm.points[sent], nr, rng)
        got, _ = dec.decode_batch(y)
        errors += int(np.count_nonzero(got != sent))
    ser = errors / trials
    return SerEstimate(ser, math.sqrt(ser * (1 - ser) / trials), trials, errors)
