"""
Finite matrix-valued constellations for the block Rayleigh fading channel.

A constellation is a list of ``T x Nt`` complex signal matrices together
with a probability vector. The two structured families built here are

* STORM: ``T`` rank-one, mutually column-orthogonal matrices
  ``sqrt(K) v_i w_i^*`` (``v_i`` a column of a row-permuted DFT/Hadamard
  unitary) plus the all-zero matrix, and
* MIMO-OOK: one rank-one full-peak matrix plus the all-zero matrix.

When a zero point is present it is always stored last.
"""

import json
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .exceptions import DegenerateSlot, Infeasible
from .numerics import (DFT, Permutation, UnitaryFamily, apply_row_permutation,
                       as_matrix)

__all__ = [
    "ChannelParams",
    "Constellation",
    "StormSpec",
    "Violation",
    "build_mimo_ook",
    "build_storm",
    "constellation_from_json",
    "constellation_to_json",
    "from_points",
    "papr",
    "validate",
]

PROB_TOL = 1e-12
POWER_TOL = 1e-9
PEAK_TOL = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """
    Block Rayleigh channel dimensions and input constraints.

    Parameters
    ----------
    T : int
        Coherence blocklength in symbols.
    Nt, Nr : int
        Numbers of transmit and receive antennas.
    P : float
        Average SNR per receive antenna.
    K : float
        Peak power allowed in every space-time slot.
    """

    T: int
    Nt: int
    Nr: int
    P: float
    K: float

    def __post_init__(self):
        for name in ("T", "Nt", "Nr"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not (self.P > 0 and self.K > 0):
            raise ValueError("P and K must be positive")

    @property
    def E(self) -> float:
        """Average energy per block, ``P*T``."""
        return self.P * self.T

    @property
    def zeta(self) -> float:
        """Peak-to-average power ratio ``K/P``."""
        return self.K / self.P

    @property
    def peak_energy(self) -> float:
        """Energy ``K*Nt*T`` of a full-peak signal matrix."""
        return self.K * self.Nt * self.T

    @classmethod
    def from_zeta(cls, T, Nt, Nr, P, zeta) -> "ChannelParams":
        return cls(T, Nt, Nr, P, zeta * P)

    def is_feasible(self) -> bool:
        return self.E <= self.peak_energy * (1 + PROB_TOL)

    def check_feasible(self):
        if not self.is_feasible():
            raise Infeasible(
                f"E = P*T = {self.E:g} exceeds K*Nt*T = {self.peak_energy:g}")


@dataclass(frozen=True)
class StormSpec:
    """
    Selects one member of the STORM family.

    `w_phases` holds unit-magnitude complex numbers, either one ``Nt``-vector
    shared by every nonzero point or a ``(T, Nt)`` array with one row per
    point. The default is all ones (repetition across antennas).
    """

    params: ChannelParams
    family: UnitaryFamily = None
    row_perm: Permutation = None
    w_phases: Optional[np.ndarray] = None

    def __post_init__(self):
        T, Nt = self.params.T, self.params.Nt
        if self.family is None:
            object.__setattr__(self, "family", UnitaryFamily(DFT, T))
        if self.row_perm is None:
            object.__setattr__(self, "row_perm", Permutation.identity(T))
        w = np.ones(Nt, dtype=complex) if self.w_phases is None else self.w_phases
        w = np.asarray(w, dtype=np.complex128)
        if w.ndim == 1:
            w = np.broadcast_to(w, (T, Nt))
        if w.shape != (T, Nt):
            raise ValueError(f"w_phases must have shape ({Nt},) or ({T}, {Nt})")
        if np.max(np.abs(np.abs(w) - 1.0)) > PEAK_TOL:
            raise ValueError("w_phases entries must have unit magnitude")
        w = np.array(w)
        w.setflags(write=False)
        object.__setattr__(self, "w_phases", w)
        if self.family.order != T:
            raise ValueError(f"unitary order {self.family.order} != T = {T}")
        if self.row_perm.order != T:
            raise ValueError(f"permutation order {self.row_perm.order} != T = {T}")

    @classmethod
    def canonical(cls, params: ChannelParams, kind: str = DFT) -> "StormSpec":
        return cls(params, UnitaryFamily(kind, params.T))

    def basis(self) -> np.ndarray:
        """Row-permuted unitary whose columns are the ``v_i``."""
        return apply_row_permutation(self.row_perm, self.family.matrix())


@dataclass(frozen=True, eq=False)
class Constellation:
    """
    Signal matrices with their transmission probabilities.

    `points` is an ``(L, T, Nt)`` complex array and `probs` an ``(L,)`` array.
    `storm` keeps the generating spec for constellations made by
    `build_storm`, which the fast decoder needs.
    """

    params: ChannelParams
    points: np.ndarray
    probs: np.ndarray
    storm: Optional[StormSpec] = field(default=None, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128)
        if pts.ndim == 2:
            pts = pts[np.newaxis]
        probs = np.asarray(self.probs, dtype=float).reshape(-1)
        if pts.ndim != 3 or pts.shape[1:] != (self.params.T, self.params.Nt):
            raise ValueError(
                f"points must be (L, {self.params.T}, {self.params.Nt}), got {pts.shape}")
        if pts.shape[0] != probs.size:
            raise ValueError("one probability per point required")
        if not np.all(np.isfinite(pts)):
            raise ValueError("signal matrices must be finite")
        for a in (pts, probs):
            a.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "probs", probs)

    def __len__(self):
        return self.probs.size

    @property
    def L(self) -> int:
        return self.probs.size

    @property
    def energies(self) -> np.ndarray:
        """``tr(X_i X_i^*)`` for every point."""
        return np.sum(np.abs(self.points) ** 2, axis=(1, 2))

    @property
    def zero_mask(self) -> np.ndarray:
        return self.energies == 0.0

    @property
    def zero_index(self) -> Optional[int]:
        idx = np.flatnonzero(self.zero_mask)
        return int(idx[0]) if idx.size else None

    def outer_products(self) -> np.ndarray:
        """``X_i X_i^*`` stacked as an ``(L, T, T)`` array."""
        return self.points @ np.conj(np.swapaxes(self.points, 1, 2))

    def average_energy(self) -> float:
        return float(np.dot(self.probs, self.energies))

    def left_multiply(self, u) -> "Constellation":
        """Apply a common ``T x T`` matrix to every point (drops `storm`)."""
        return Constellation(self.params, np.asarray(u) @ self.points, self.probs)

    def with_params(self, params: ChannelParams) -> "Constellation":
        return Constellation(params, self.points, self.probs, self.storm)


def _prune(points, probs):
    keep = np.asarray(probs) > 0
    return np.asarray(points)[keep], np.asarray(probs)[keep]


def build_storm(spec: StormSpec) -> Constellation:
    """
    Construct the ``T+1`` point STORM constellation for `spec`.

    The nonzero points ``sqrt(K) v_i w_i^*`` each carry probability
    ``E / (T*K*Nt*T)``; the zero matrix takes the remaining mass
    ``1 - E/(K*Nt*T)``. When ``E == K*Nt*T`` only the ``T`` equiprobable
    nonzero points remain.

    Raises
    ------
    Infeasible
        If ``E > K*Nt*T``.
    """
    p = spec.params
    p.check_feasible()
    T, Nt = p.T, p.Nt
    v = spec.basis()
    # |v_mn| = 1/sqrt(T), so w needs entries of magnitude sqrt(T)
    w = np.sqrt(T) * spec.w_phases
    nonzero = np.sqrt(p.K) * np.einsum("ti,in->itn", v, np.conj(w))
    on_prob = min(p.E / p.peak_energy, 1.0)
    if math.isclose(on_prob, 1.0, rel_tol=PROB_TOL, abs_tol=0.0):
        on_prob = 1.0
    points = np.concatenate([nonzero, np.zeros((1, T, Nt), dtype=complex)])
    probs = np.concatenate([np.full(T, on_prob / T), [1.0 - on_prob]])
    points, probs = _prune(points, probs)
    return Constellation(p, points, probs, storm=spec)


def build_mimo_ook(params: ChannelParams, v=None, w=None) -> Constellation:
    """
    Two-point on-off constellation achieving the capacity per unit energy.

    The ON matrix is ``sqrt(K) v w^*`` with unit-magnitude entries pattern
    (defaults: first DFT column and ``w = sqrt(T) * 1``) sent with
    probability ``P/(K*Nt)``.
    """
    T, Nt = params.T, params.Nt
    on_prob = params.P / (params.K * Nt)
    if on_prob > 1 + PROB_TOL:
        raise Infeasible(f"P = {params.P:g} exceeds K*Nt = {params.K * Nt:g}")
    on_prob = min(on_prob, 1.0)
    v = np.full(T, 1 / np.sqrt(T), dtype=complex) if v is None else np.asarray(v)
    w = np.full(Nt, np.sqrt(T), dtype=complex) if w is None else np.asarray(w)
    x1 = np.sqrt(params.K) * np.outer(v, np.conj(w))
    points = np.stack([x1, np.zeros((T, Nt), dtype=complex)])
    points, probs = _prune(points, [on_prob, 1.0 - on_prob])
    return Constellation(params, points, probs)


@dataclass(frozen=True)
class Violation:
    """A broken constellation constraint and the magnitude that broke it."""

    constraint: str
    value: float
    limit: float
    point: Optional[int] = None

    def __str__(self):
        where = "" if self.point is None else f" (point {self.point})"
        return f"{self.constraint}{where}: {self.value:.12g} > {self.limit:.12g}"


def validate(c: Constellation) -> List[Violation]:
    """
    Check probability, peak and average-power constraints.

    Returns an empty list when all constraints hold.
    """
    out = []
    p = c.params
    probs = c.probs
    if np.any(probs < 0):
        i = int(np.argmin(probs))
        out.append(Violation("probability-nonnegative", float(-probs[i]), 0.0, i))
    total = float(np.sum(probs))
    if abs(total - 1.0) > PROB_TOL:
        out.append(Violation("probability-sum", abs(total - 1.0), PROB_TOL))
    peak_limit = math.sqrt(p.K) + PEAK_TOL
    peaks = np.max(np.abs(c.points), axis=(1, 2))
    for i in np.flatnonzero(peaks > peak_limit):
        out.append(Violation("peak-amplitude", float(peaks[i]), peak_limit, int(i)))
    avg = c.average_energy()
    if avg > p.E + POWER_TOL:
        out.append(Violation("average-power", avg, p.E + POWER_TOL))
    return out


def papr(c: Constellation) -> float:
    """
    Peak-to-average power ratio over all slots and points.

    Raises
    ------
    DegenerateSlot
        If some slot has zero average power.
    """
    inst = np.abs(c.points) ** 2
    avg = np.tensordot(c.probs, inst, axes=1)
    if np.any(avg <= 0):
        m, n = np.argwhere(avg <= 0)[0]
        raise DegenerateSlot(f"slot ({m}, {n}) has zero average power")
    return float(np.max(inst / avg))


# -- serialization -----------------------------------------------------------

def constellation_to_json(c: Constellation) -> str:
    """
    Serialize to a JSON document with one record per point.

    Each record holds the probability and the ``T*Nt`` entries as
    ``[re, im]`` pairs in row-major order.
    """
    p = c.params
    doc = {
        "params": {"T": p.T, "Nt": p.Nt, "Nr": p.Nr, "P": p.P, "K": p.K},
        "points": [
            {"prob": float(pr),
             "entries": [[float(z.real), float(z.imag)] for z in x.reshape(-1)]}
            for x, pr in zip(c.points, c.probs)
        ],
    }
    if c.storm is not None:
        s = c.storm
        doc["storm"] = {
            "family": s.family.kind,
            "row_perm": list(s.row_perm.mapping),
            "w_phases": [[[float(z.real), float(z.imag)] for z in row]
                         for row in s.w_phases],
        }
    return json.dumps(doc, indent=1)


def constellation_from_json(text: str) -> Constellation:
    doc = json.loads(text)
    p = ChannelParams(**doc["params"])
    pts, probs = [], []
    for rec in doc["points"]:
        ent = np.array(rec["entries"], dtype=float)
        pts.append((ent[:, 0] + 1j * ent[:, 1]).reshape(p.T, p.Nt))
        probs.append(rec["prob"])
    storm = None
    if "storm" in doc:
        s = doc["storm"]
        w = np.array(s["w_phases"], dtype=float)
        storm = StormSpec(p, UnitaryFamily(s["family"], p.T),
                          Permutation(s["row_perm"]), w[..., 0] + 1j * w[..., 1])
    return Constellation(p, np.array(pts), np.array(probs), storm)


def from_points(params: ChannelParams, points: Sequence, probs: Sequence) -> Constellation:
    """Build an arbitrary constellation from matrices and probabilities."""
    pts = np.stack([as_matrix(x) for x in points])
    return Constellation(params, pts, np.asarray(probs, dtype=float))
