"""
Closed-form low-SNR information measures for finite constellations.

Natural logarithms are used throughout; rates are in nats per dimension
(per channel use of one receive antenna) unless a name says ``bits``.
"""

import math
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .constellation import Constellation, papr
from .exceptions import (CardinalityOutOfRange, DegenerateSlot, Infeasible,
                         NoZeroPoint, Undefined, ZeroPointSkipped)
from .numerics import logdet_eye_plus_gram

__all__ = [
    "DIVERGENT",
    "LOG2E",
    "MetricReport",
    "TaylorCurve",
    "cdot0",
    "cutoff_rate_low",
    "eb_n0_min",
    "i_low",
    "i_low_bounds",
    "i_low_storm_closed_form",
    "iddot0_from_slope",
    "is_divergent",
    "kl_zero",
    "metric_report",
    "min_chordal_distance",
    "pair_min_eigenvalues",
    "pearson_chi",
    "slope_ook_closed",
    "slope_storm_closed",
    "spectral_efficiency_taylor",
    "wideband_slope",
]

LOG2E = 1.0 / math.log(2.0)
PD_TOL = 1e-10


class Divergent:
    """Marker for an infinite Pearson chi-divergence."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIVERGENT"

    def __float__(self):
        return math.inf


DIVERGENT = Divergent()


def is_divergent(value) -> bool:
    return value is DIVERGENT


def _nr(c: Constellation, Nr: Optional[int]) -> int:
    return c.params.Nr if Nr is None else int(Nr)


def i_low(c: Constellation, Nr: Optional[int] = None) -> float:
    """
    Coefficient of ``P**2`` in the low-SNR mutual information.

    ``Nr / (2 P^2 T) * tr(E[(XX^*)^2] - (E[XX^*])^2)``, evaluated in the
    equivalent variance form ``sum_i p_i ||A_i - E[A]||_F^2`` so the result
    is never negative.
    """
    p = c.params
    a = c.outer_products()
    mean = np.tensordot(c.probs, a, axes=1)
    spread = np.sum(np.abs(a - mean) ** 2, axis=(1, 2))
    return _nr(c, Nr) * float(np.dot(c.probs, spread)) / (2 * p.P ** 2 * p.T)


def i_low_storm_closed_form(T: int, Nt: int, Nr: int, zeta: float, L: int) -> float:
    """
    Largest ``I_low`` reachable with ``L <= T+1`` points.

    ``(Nt*Nr*T/2) * (zeta - 1/((L-1)*Nt))``

    Raises
    ------
    CardinalityOutOfRange
        For ``L > T+1`` (the expression is then only an upper bound) or
        ``L < 2``.
    """
    if L < 2 or L > T + 1:
        raise CardinalityOutOfRange(f"L = {L} outside [2, T+1 = {T + 1}]")
    if zeta * Nt * (L - 1) < 1:
        raise Infeasible(f"zeta*Nt*(L-1) = {zeta * Nt * (L - 1):g} < 1")
    return Nt * Nr * T / 2 * (zeta - 1 / ((L - 1) * Nt))


def i_low_bounds(T: int, Nt: int, Nr: int, zeta: float) -> Tuple[float, float]:
    """Lower and upper bounds on ``I_low`` with unconstrained cardinality."""
    return Nr / 2 * (zeta * Nt * T - 1), Nr / 2 * zeta * Nt * T


def cutoff_rate_low(c: Constellation, Nr: Optional[int] = None,
                    normalized: bool = True) -> float:
    """
    Second-order cutoff-rate expression.

    ``Nr/8 * sum_ij p_i p_j tr((A_i - A_j)^2)`` with ``A = X X^*``. With
    `normalized` the sum is further divided by ``T * P**2`` so it is on the
    same footing as `i_low`; the ratio to `i_low` is then exactly 1/2.
    """
    a = c.outer_products()
    diff = a[:, np.newaxis] - a[np.newaxis, :]
    sq = np.sum(np.abs(diff) ** 2, axis=(2, 3))
    total = _nr(c, Nr) / 8 * float(c.probs @ sq @ c.probs)
    if normalized:
        total /= c.params.T * c.params.P ** 2
    return total


def kl_zero(x, Nr: int) -> float:
    """
    ``D(p(Y|X) || p(Y|0)) = Nr * (tr(XX^*) - log det(I + XX^*))``.
    """
    x = np.asarray(x, dtype=np.complex128)
    energy = float(np.sum(np.abs(x) ** 2))
    if energy == 0.0:
        return 0.0
    return Nr * max(energy - logdet_eye_plus_gram(x), 0.0)


def cdot0(K: float, Nt: int, T: int, Nr: int) -> float:
    """
    Capacity per unit energy in nats/joule under a per-slot peak ``K``.

    ``Nr * (1 - log(1 + K*Nt*T) / (K*Nt*T))``; multiply by `LOG2E` for
    bits/joule.
    """
    x = K * Nt * T
    if not x > 0:
        raise Undefined("K*Nt*T must be positive")
    return Nr * (1.0 - math.log1p(x) / x)


def eb_n0_min(K: float, Nt: int, T: int, Nr: int) -> float:
    """Minimum normalized energy per bit in dB, ``10 log10(ln 2 / Cdot(0))``."""
    c = cdot0(K, Nt, T, Nr)
    if c <= 0:
        raise Undefined("capacity per unit energy underflows to zero")
    return 10 * math.log10(math.log(2.0) / c)


def _split_zero(c: Constellation):
    z = c.zero_mask
    if not np.any(z):
        raise NoZeroPoint("constellation has no zero matrix")
    p0 = float(np.sum(c.probs[z]))
    if p0 >= 1.0:
        raise NoZeroPoint("zero matrix carries all probability")
    return c.points[~z], c.probs[~z] / (1.0 - p0)


def _cross_gram_eigs(points: np.ndarray) -> np.ndarray:
    """
    Eigenvalues of ``I - G G^*`` with ``G = X_i^* X_j`` for all ordered pairs.

    ``det(I_T - X_i X_i^* X_j X_j^*) = det(I_Nt - G G^*)``, and the Hermitian
    right side exposes the positive-definiteness test directly.
    """
    g = np.einsum("itn,jtm->ijnm", np.conj(points), points)
    ggh = g @ np.conj(np.swapaxes(g, -1, -2))
    nt = points.shape[2]
    return np.linalg.eigvalsh(np.eye(nt) - ggh)


def pair_min_eigenvalues(c: Constellation) -> List[Tuple[int, int, float]]:
    """Minimum eigenvalue of ``I - X_i^*X_j X_j^*X_i`` for nonzero pairs."""
    idx = np.flatnonzero(~c.zero_mask)
    if idx.size == 0:
        return []
    eig = _cross_gram_eigs(c.points[idx])
    return [(int(i), int(j), float(eig[a, b, 0]))
            for a, i in enumerate(idx) for b, j in enumerate(idx)]


def pearson_chi(c: Constellation, Nr: Optional[int] = None):
    """
    Pearson chi-divergence between the ON-conditional output law and the
    output law of the zero matrix.

    ``sum_ij q_i q_j det(I - A_i A_j)^(-Nr) - 1`` with ``q_i = p_i/(1-p_0)``,
    or `DIVERGENT` when some ``I - A_i A_j`` fails to be positive definite.

    Raises
    ------
    NoZeroPoint
        If the constellation has no zero matrix.
    """
    nr = _nr(c, Nr)
    pts, q = _split_zero(c)
    eig = _cross_gram_eigs(pts)
    if np.min(eig) <= PD_TOL:
        return DIVERGENT
    logdet = np.sum(np.log(eig), axis=-1)
    return float(q @ np.exp(-nr * logdet) @ q) - 1.0


def wideband_slope(c: Constellation, Nr: Optional[int] = None) -> float:
    """
    Wideband slope of a generalized on-off constellation.

    ``(2/T) * (E_q[D(p(Y|X) || p(Y|0))])^2 / chi``, where the expectation
    uses the ON-conditional probabilities ``q_i = p_i/(1-p_0)``; zero when
    the chi-divergence diverges.
    """
    nr = _nr(c, Nr)
    chi = pearson_chi(c, nr)
    if is_divergent(chi):
        return 0.0
    pts, q = _split_zero(c)
    mean_kl = sum(qi * kl_zero(x, nr) for x, qi in zip(pts, q))
    return 2.0 / c.params.T * mean_kl ** 2 / chi


def _slope_parts(K, Nt, T, Nr):
    x = K * Nt * T
    num = Nr ** 2 * (x - math.log1p(x)) ** 2
    den = math.expm1(-Nr * math.log1p(-x * x))
    return num, den


def slope_ook_closed(K: float, Nt: int, T: int, Nr: int) -> float:
    """Wideband slope of MIMO-OOK; zero once ``K*Nt*T >= 1``."""
    if K * Nt * T >= 1:
        return 0.0
    num, den = _slope_parts(K, Nt, T, Nr)
    return 2.0 / T * num / den


def slope_storm_closed(K: float, Nt: int, T: int, Nr: int) -> float:
    """Wideband slope of ``T+1`` point STORM; zero once ``K*Nt*T >= 1``."""
    if K * Nt * T >= 1:
        return 0.0
    num, den = _slope_parts(K, Nt, T, Nr)
    return 2.0 * num / den


@dataclass(frozen=True)
class TaylorCurve:
    """
    First-order approximation of information per unit energy.

    `grid` holds ``(P, bits_per_joule)`` pairs with
    ``bits_per_joule = log2(e) * (idot0 + iddot0 * P / 2)``.
    """

    idot0: float
    iddot0: float
    grid: Tuple[Tuple[float, float], ...]

    @property
    def P(self) -> np.ndarray:
        return np.array([g[0] for g in self.grid])

    @property
    def bits_per_joule(self) -> np.ndarray:
        return np.array([g[1] for g in self.grid])

    def spectral_efficiency(self) -> np.ndarray:
        """Rate in bits/dimension implied by the approximation."""
        return self.P * self.bits_per_joule

    def eb_n0_db(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return 10 * np.log10(1.0 / self.bits_per_joule)


def iddot0_from_slope(idot0: float, s0: float) -> float:
    """Second derivative of the rate at zero SNR from ``S0 = 2 I'^2 / (-I'')``."""
    if not s0 > 0:
        raise Undefined("wideband slope must be positive")
    return -2.0 * idot0 ** 2 / s0


def spectral_efficiency_taylor(idot0: float, iddot0: float,
                               P_grid: Sequence[float]) -> TaylorCurve:
    P = np.asarray(P_grid, dtype=float)
    if np.any(P <= 0):
        raise ValueError("P_grid must be positive")
    bpj = LOG2E * (idot0 + 0.5 * iddot0 * P)
    return TaylorCurve(idot0, iddot0, tuple(zip(P.tolist(), bpj.tolist())))


def _orthonormal_polar(x: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    # X (X^*X)^{+1/2}: equals X for orthonormal columns, U_r V_r^* in general
    u, s, vh = np.linalg.svd(x, full_matrices=False)
    r = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return u[:, :r] @ vh[:r]


def min_chordal_distance(c: Constellation) -> float:
    """
    Worst-case chordal distance ``min_{i != j} tr(I - Xt_i^* Xt_j Xt_j^* Xt_i)``.

    Each point is replaced by its polar factor ``Xt = X (X^*X)^{+1/2}``,
    which is the orthonormal-column version of a full-rank ``X``. Zero
    matrices are skipped with a `ZeroPointSkipped` warning.
    """
    mask = ~c.zero_mask
    if not np.all(mask):
        warnings.warn("zero matrix excluded from chordal distance", ZeroPointSkipped)
    pts = [_orthonormal_polar(x) for x in c.points[mask]]
    if len(pts) < 2:
        raise ValueError("need at least two nonzero points")
    nt = c.params.Nt
    best = math.inf
    for i, xi in enumerate(pts):
        for j, xj in enumerate(pts):
            if i == j:
                continue
            g = np.conj(xi.T) @ xj
            best = min(best, nt - float(np.sum(np.abs(g) ** 2)))
    return best


@dataclass(frozen=True)
class MetricReport:
    """Low-SNR figures of merit for one constellation."""

    T: int
    Nt: int
    Nr: int
    P: float
    K: float
    i_low: float
    cdot0: float
    s0: float
    eb_n0_min_db: float
    papr: float

    CSV_FIELDS = ("T", "Nt", "Nr", "P", "K", "i_low", "cdot0_bits", "s0",
                  "eb_n0_min_db", "papr")

    @property
    def cdot0_bits(self) -> float:
        return self.cdot0 * LOG2E

    def csv_row(self) -> list:
        return [self.T, self.Nt, self.Nr, repr(self.P), repr(self.K),
                repr(self.i_low), repr(self.cdot0_bits), repr(self.s0),
                repr(self.eb_n0_min_db), repr(self.papr)]


def metric_report(c: Constellation, Nr: Optional[int] = None) -> MetricReport:
    """
    Collect the low-SNR metrics of `c`.

    ``s0`` is NaN for constellations without a zero point and ``papr`` is NaN
    when some slot is never used.
    """
    p = c.params
    nr = _nr(c, Nr)
    try:
        s0 = wideband_slope(c, nr)
    except NoZeroPoint:
        s0 = math.nan
    try:
        ratio = papr(c)
    except DegenerateSlot:
        ratio = math.nan
    return MetricReport(p.T, p.Nt, nr, p.P, p.K, i_low(c, nr),
                        cdot0(p.K, p.Nt, p.T, nr), s0,
                        eb_n0_min(p.K, p.Nt, p.T, nr), ratio)
