"""
Tables behind the low-SNR figures of STORM and MIMO-OOK.

Every table is computed from closed forms (capacity per unit energy,
wideband slope and the second-order Taylor expansion of the rate), so the
output is deterministic. Each table is a header tuple plus rows of floats;
`write_csv` adds a ``#``-prefixed metadata block.
"""

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .metrics import (LOG2E, cdot0, eb_n0_min, iddot0_from_slope,
                      slope_ook_closed, slope_storm_closed)

__all__ = [
    "FigureTable",
    "FIGURES",
    "all_figures",
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "horizontal_gap_db",
    "taylor_bits_per_joule",
    "write_csv",
]

KNTT_SWEEP = (0.2, 0.4, 0.6, 0.8)
NR_SWEEP = (1, 2, 4, 8)
PEAK_GRID = tuple(np.round(np.arange(0.02, 1.5001, 0.02), 10).tolist())


@dataclass(frozen=True)
class FigureTable:
    name: str
    caption: str
    columns: Tuple[str, ...]
    rows: List[tuple]
    meta: Dict[str, object] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([r[k] for r in self.rows], dtype=float)

    def select(self, **where) -> "FigureTable":
        """Rows whose named columns equal the given values."""
        idx = [(self.columns.index(k), v) for k, v in where.items()]
        rows = [r for r in self.rows if all(r[k] == v for k, v in idx)]
        return FigureTable(self.name, self.caption, self.columns, rows, self.meta)


def _taylor_terms(x: float, Nt: int, T: int, Nr: int, ook: bool = False):
    K = x / (Nt * T)
    idot = cdot0(K, Nt, T, Nr)
    s0 = (slope_ook_closed if ook else slope_storm_closed)(K, Nt, T, Nr)
    return idot, iddot0_from_slope(idot, s0)


def taylor_bits_per_joule(x: float, Nt: int, T: int, Nr: int, P, ook: bool = False):
    """``log2(e) (I'(0) + I''(0) P / 2)`` at normalized peak ``x = K Nt T``."""
    idot, iddot = _taylor_terms(x, Nt, T, Nr, ook)
    return LOG2E * (idot + 0.5 * iddot * np.asarray(P, dtype=float))


def _log_grid(hi: float, decades: float, n: int) -> np.ndarray:
    return np.logspace(math.log10(hi) - decades, math.log10(hi), n)


def _spectral(name, caption, sweep, T, Nt, n):
    rows = []
    for x, Nr in sweep:
        idot, iddot = _taylor_terms(x, Nt, T, Nr)
        # the quadratic rate peaks at P = -I'/I''; beyond it the expansion is meaningless
        P = _log_grid(-idot / iddot, 3.0, n)
        bpj = LOG2E * (idot + 0.5 * iddot * P)
        for p, b in zip(P, bpj):
            rows.append((x, Nr, float(p), 10 * math.log10(1 / b), float(p * b)))
    return FigureTable(name, caption, ("KNtT", "Nr", "P", "eb_n0_db", "spectral_eff_bits"),
                       rows, {"T": T, "Nt": Nt})


def fig1(T: int = 4, Nt: int = 1, Nr: int = 1, sweep=KNTT_SWEEP, n: int = 200) -> FigureTable:
    """Spectral efficiency vs energy per bit for several ``K Nt T``."""
    return _spectral("fig1", "spectral efficiency vs Eb/N0 of STORM, sweeping KNtT",
                     [(x, Nr) for x in sweep], T, Nt, n)


def fig2(T: int = 4, Nt: int = 1, x: float = 0.5, sweep=NR_SWEEP, n: int = 200) -> FigureTable:
    """Spectral efficiency vs energy per bit for several ``Nr``."""
    return _spectral("fig2", "spectral efficiency vs Eb/N0 of STORM, sweeping Nr",
                     [(x, nr) for nr in sweep], T, Nt, n)


def fig3(T: int = 4, Nt: int = 1, sweep=NR_SWEEP, grid=PEAK_GRID) -> FigureTable:
    """Minimum energy per bit vs ``K Nt T``."""
    rows = [(nr, x, eb_n0_min(x / (Nt * T), Nt, T, nr)) for nr in sweep for x in grid]
    return FigureTable("fig3", "Eb/N0_min of STORM vs KNtT per Nr",
                       ("Nr", "KNtT", "eb_n0_min_db"), rows, {"T": T, "Nt": Nt})


def fig4(T: int = 4, Nt: int = 1, sweep=NR_SWEEP, grid=PEAK_GRID) -> FigureTable:
    """Wideband slope of STORM vs ``K Nt T``; zero from ``K Nt T = 1`` on."""
    rows = [(nr, x, slope_storm_closed(x / (Nt * T), Nt, T, nr)) for nr in sweep for x in grid]
    return FigureTable("fig4", "wideband slope of STORM vs KNtT per Nr",
                       ("Nr", "KNtT", "s0"), rows, {"T": T, "Nt": Nt})


def _p_grid(n):
    return np.logspace(-4, 0, n)


def fig5(T: int = 8, Nt: int = 1, Nr: int = 1, sweep=(0.25, 0.5, 0.75),
         n: int = 801) -> FigureTable:
    """First-order ``I(P)/P`` of STORM and MIMO-OOK on a common SNR grid."""
    P = _p_grid(n)
    rows = []
    for x in sweep:
        s = taylor_bits_per_joule(x, Nt, T, Nr, P)
        o = taylor_bits_per_joule(x, Nt, T, Nr, P, ook=True)
        rows += [(x, float(p), float(a), float(b)) for p, a, b in zip(P, s, o)]
    return FigureTable("fig5", "I(P)/P of STORM vs MIMO-OOK (first-order approximation)",
                       ("KNtT", "P", "storm_bits_per_joule", "ook_bits_per_joule"),
                       rows, {"T": T, "Nt": Nt, "Nr": Nr})


def fig6(T: int = 4, Nt: int = 1, Nr: int = 1, sweep=KNTT_SWEEP, n: int = 401) -> FigureTable:
    """Convergence of ``I(P)/P`` to the capacity per unit energy across ``K Nt T``."""
    P = _p_grid(n)
    rows = []
    for x in sweep:
        cap = LOG2E * cdot0(x / (Nt * T), Nt, T, Nr)
        b = taylor_bits_per_joule(x, Nt, T, Nr, P)
        rows += [(x, float(p), float(v), cap) for p, v in zip(P, b)]
    return FigureTable("fig6", "I(P)/P of STORM and capacity per unit energy, sweeping KNtT",
                       ("KNtT", "P", "bits_per_joule", "cdot0_bits"),
                       rows, {"T": T, "Nt": Nt, "Nr": Nr})


def fig7(T: int = 4, Nt: int = 1, x: float = 0.5, sweep=NR_SWEEP, n: int = 401) -> FigureTable:
    """``I(P)/P`` of STORM across ``Nr`` at fixed ``K Nt T``."""
    P = _p_grid(n)
    rows = []
    for nr in sweep:
        cap = LOG2E * cdot0(x / (Nt * T), Nt, T, nr)
        b = taylor_bits_per_joule(x, Nt, T, nr, P)
        rows += [(nr, float(p), float(v), cap) for p, v in zip(P, b)]
    return FigureTable("fig7", "I(P)/P of STORM, sweeping Nr",
                       ("Nr", "P", "bits_per_joule", "cdot0_bits"),
                       rows, {"T": T, "Nt": Nt, "KNtT": x})


FIGURES = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4,
           "fig5": fig5, "fig6": fig6, "fig7": fig7}


def all_figures(T: int = None, Nt: int = None) -> List[FigureTable]:
    """Every table with default sweeps; `T`/`Nt` override the block length and antennas."""
    kw = {k: v for k, v in (("T", T), ("Nt", Nt)) if v is not None}
    return [f(**kw) for f in FIGURES.values()]


def horizontal_gap_db(P: np.ndarray, upper: np.ndarray, lower: np.ndarray) -> np.ndarray:
    """
    SNR offset in dB between two decreasing curves at matched ordinate.

    For each point of `lower` whose value is inside the range of `upper`,
    find the SNR where `upper` reaches the same value (linear interpolation
    in ``log P``) and return ``10 log10(P_upper / P_lower)``.
    """
    P = np.asarray(P, dtype=float)
    lp = np.log10(P)
    # np.interp needs increasing abscissae; both curves decrease in P
    u, lo = np.asarray(upper)[::-1], np.asarray(lower)
    inside = (lo >= u.min()) & (lo <= u.max())
    at = np.interp(lo[inside], u, lp[::-1])
    return 10 * (at - lp[inside])


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_csv(table: FigureTable, stream=None, meta: Dict[str, object] = None) -> str:
    """
    Render `table` as CSV with ``# key: value`` lines first.

    Floats use ``repr`` so values round-trip exactly. Returns the text and
    also writes it to `stream` when given.
    """
    buf = io.StringIO()
    header = {"figure": table.name, "caption": table.caption}
    header.update(table.meta)
    header.update(meta or {})
    for k, v in header.items():
        buf.write(f"# {k}: {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_fmt(v) for v in r])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
