"""
Numerical certificates for the optimality structure of STORM and MIMO-OOK.

Everything here is desk-scale brute force: vertex enumeration by active
sets, KKT residual evaluation, random search over feasible constellations
and grid searches. Each stochastic check takes an explicit seed.
"""

import itertools
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .channel import make_rng, seed_sequence
from .constellation import ChannelParams, Constellation, StormSpec, build_storm
from .exceptions import CaseInapplicable, DimensionTooLarge, PdViolation
from .metrics import (PD_TOL, i_low, i_low_storm_closed_form, pair_min_eigenvalues,
                      slope_storm_closed, wideband_slope)
from .numerics import DFT, UnitaryFamily

__all__ = [
    "CheckOutcome",
    "KktCertificate",
    "Polytope",
    "SearchResult",
    "case3_objective",
    "enumerate_vertices",
    "i_low_batch",
    "is_extreme_point_lp",
    "kkt_case3",
    "vertex_pattern_points",
    "matches_vertex_pattern",
    "pd_gate",
    "pd_gate_status",
    "quasiconcave_vertex_check",
    "random_search_ilow",
    "render_report",
    "run_verification",
    "schur_check",
    "schur_denominator",
    "slope_denominator_samples",
]

MAX_VERTEX_DIM = 6
FEAS_TOL = 1e-12


@dataclass(frozen=True)
class Polytope:
    """``{d : sum_i p_i d_i <= E, 0 <= d_i <= Q}``."""

    probs: tuple
    E: float
    Q: float

    def __init__(self, probs: Sequence[float], E: float, Q: float):
        probs = tuple(float(p) for p in probs)
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if not (E > 0 and Q > 0):
            raise ValueError("E and Q must be positive")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "E", float(E))
        object.__setattr__(self, "Q", float(Q))

    @property
    def dim(self) -> int:
        return len(self.probs)

    def constraints(self) -> Tuple[np.ndarray, np.ndarray]:
        """Rows of ``A d <= b``: the half-plane, then ``d <= Q``, then ``-d <= 0``."""
        n = self.dim
        a = np.vstack([np.array(self.probs)[np.newaxis], np.eye(n), -np.eye(n)])
        b = np.concatenate([[self.E], np.full(n, self.Q), np.zeros(n)])
        return a, b

    def contains(self, d, tol: float = 1e-9) -> bool:
        a, b = self.constraints()
        return bool(np.all(a @ np.asarray(d, dtype=float) <= b + tol * (1 + np.abs(b))))

    def active_rank(self, d, tol: float = 1e-9) -> int:
        a, b = self.constraints()
        act = np.abs(a @ np.asarray(d, dtype=float) - b) <= tol * (1 + np.abs(b))
        if not np.any(act):
            return 0
        return int(np.linalg.matrix_rank(a[act]))


def _dedupe(points, tol=1e-9) -> List[np.ndarray]:
    out = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in out):
            out.append(p)
    return out


def enumerate_vertices(p: Polytope) -> List[np.ndarray]:
    """
    All vertices of `p`, found by solving every square active set.

    A point is a vertex when it is feasible and its active constraints have
    rank equal to the dimension.

    Raises
    ------
    DimensionTooLarge
        For more than six coordinates.
    """
    n = p.dim
    if n > MAX_VERTEX_DIM:
        raise DimensionTooLarge(f"dimension {n} > {MAX_VERTEX_DIM}")
    a, b = p.constraints()
    found = []
    for rows in itertools.combinations(range(a.shape[0]), n):
        sub = a[list(rows)]
        if np.linalg.matrix_rank(sub) < n:
            continue
        d = np.linalg.solve(sub, b[list(rows)])
        if p.contains(d):
            found.append(np.where(np.abs(d) < 1e-14, 0.0, d))
    verts = _dedupe(found)
    verts.sort(key=lambda v: tuple(v))
    return verts


def is_extreme_point_lp(p: Polytope, d, tol: float = 1e-9) -> bool:
    """
    Decide extremality without ranks: `d` is extreme iff no direction ``u``
    keeps both ``d + u`` and ``d - u`` feasible.
    """
    a, b = p.constraints()
    d = np.asarray(d, dtype=float)
    n = d.size
    a_ub = np.vstack([a, -a])
    b_ub = np.concatenate([b - a @ d, b - a @ d])
    for k in range(n):
        for sign in (1.0, -1.0):
            cost = np.zeros(n)
            cost[k] = -sign
            res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * n,
                          method="highs")
            if res.status == 0 and -res.fun > tol * max(1.0, p.Q):
                return False
    return True


def matches_vertex_pattern(d, Q: float, tol: float = 1e-9) -> bool:
    """At least ``L-1`` coordinates equal 0 or `Q`; at most one is interior."""
    d = np.asarray(d, dtype=float)
    boundary = (np.abs(d) <= tol * max(Q, 1)) | (np.abs(d - Q) <= tol * max(Q, 1))
    return int(np.count_nonzero(~boundary)) <= 1


def vertex_pattern_points(p: Polytope) -> List[np.ndarray]:
    """
    Feasible points built from the vertex pattern: every 0/Q assignment,
    plus, for each coordinate, the value that makes the half-plane tight.
    Only points with full active rank are kept.
    """
    n, Q = p.dim, p.Q
    pr = np.array(p.probs)
    out = []
    for bits in itertools.product((0.0, Q), repeat=n):
        d = np.array(bits)
        if p.contains(d):
            out.append(d)
    for k in range(n):
        if pr[k] == 0:
            continue
        others = [j for j in range(n) if j != k]
        for bits in itertools.product((0.0, Q), repeat=n - 1):
            d = np.zeros(n)
            d[others] = bits
            rest = p.E - pr[others] @ d[others]
            # compare before dividing: pr[k] may be tiny
            if -FEAS_TOL <= rest <= pr[k] * Q * (1 + FEAS_TOL):
                d[k] = min(max(rest / pr[k], 0.0), Q)
                if p.contains(d):
                    out.append(d)
    out = [d for d in _dedupe(out) if p.active_rank(d) == n]
    out.sort(key=lambda v: tuple(v))
    return out


# -- KKT certificate ----------------------------------------------------------

@dataclass(frozen=True)
class KktCertificate:
    """
    Multipliers and residuals of the probability optimization when the
    power constraint is tight and a single intermediate-energy level ``c`` is free.

    `probs` lists ``P_1..P_M`` (full-peak points), ``P_{M+1}`` (the point of
    energy `c`) and ``P_{M+2}`` (zero matrix). Stationarity residuals are
    divided by ``(K Nt T)^2`` so they are dimensionless.
    """

    lambda_: float
    beta: float
    mu: tuple
    residuals: dict
    M: int
    c: float
    probs: tuple
    objective: float

    @property
    def worst_residual(self) -> float:
        return max(abs(v) for v in self.residuals.values())

    def is_valid(self, tol: float = 1e-9) -> bool:
        return self.worst_residual <= tol


def case3_objective(M: int, params: ChannelParams) -> float:
    """``K Nt T E (1 - E/(M K Nt T))``."""
    q, e = params.peak_energy, params.E
    return q * e * (1 - e / (M * q))


def kkt_case3(M: int, params: ChannelParams) -> KktCertificate:
    """
    Build the ``c = lambda`` solution and evaluate every KKT condition.

    Raises
    ------
    CaseInapplicable
        When ``lambda = K Nt T - 2E/M`` is negative.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    params.check_feasible()
    q, e = params.peak_energy, params.E
    lam = q - 2 * e / M
    if lam < 0:
        raise CaseInapplicable(
            f"lambda = K*Nt*T - 2E/M = {lam:g} < 0 (M = {M})")
    beta = 0.0
    c = lam
    p_on = e / (M * q)
    p_c = 0.0
    p_zero = 1 - e / q
    probs = (p_on,) * M + (p_c, p_zero)
    scale = q * q

    stat_on = [(-q * q * (1 - 2 * p_on) + lam * q + beta - 0.0) / scale
               for _ in range(M)]
    # P_{M+1} = 0 leaves mu_{M+1} free; stationarity defines it, dual feasibility checks it
    mu_c = -c * c * (1 - 2 * p_c) + lam * c + beta
    mu = (0.0,) * M + (mu_c, beta)
    power = q * M * p_on + c * p_c
    residuals = {f"stationarity[{i + 1}]": r for i, r in enumerate(stat_on)}
    residuals.update({
        "stationarity[zero]": (beta - mu[-1]) / scale,
        "dual_feasibility[c]": min(mu_c, 0.0) / scale,
        "dual_feasibility[lambda]": min(lam, 0.0) / q,
        "complementary[power]": lam * (power - e) / scale,
        "complementary[zero]": beta * p_zero / scale,
        "complementary[c]": mu_c * p_c / scale,
        "primal[sum]": math.fsum(probs) - 1.0,
        "primal[power]": max(power - e, 0.0) / q,
        "primal[nonneg]": min(min(probs), 0.0),
    })
    objective = q * q * M * p_on * (1 - p_on) + c * c * p_c * (1 - p_c)
    return KktCertificate(lam, beta, mu, residuals, M, c, probs, objective)


# -- random search over feasible constellations --------------------------------

def i_low_batch(points: np.ndarray, probs: np.ndarray, P: float, Nr: int) -> np.ndarray:
    """`i_low` for a batch: ``points`` is ``(n, L, T, Nt)``, ``probs`` ``(n, L)``."""
    a = points @ np.conj(np.swapaxes(points, -1, -2))
    mean = np.einsum("nl,nlst->nst", probs, a)
    spread = np.sum(np.abs(a - mean[:, np.newaxis]) ** 2, axis=(2, 3))
    T = points.shape[2]
    return Nr * np.sum(probs * spread, axis=1) / (2 * P * P * T)


def _random_disk(rng, K, shape):
    r = np.sqrt(K * rng.random(shape))
    return r * np.exp(2j * np.pi * rng.random(shape))


def _enforce_power(points, probs, E):
    energy = np.einsum("nl,nl->n", probs, np.sum(np.abs(points) ** 2, axis=(2, 3)))
    shrink = np.sqrt(np.minimum(1.0, E / np.maximum(energy, 1e-300)))
    return points * shrink[:, None, None, None]


def _storm_seed(params: ChannelParams, L: int):
    """Best ``L``-point constellation: ``L-1`` STORM columns plus zero."""
    T, Nt = params.T, params.Nt
    spec = StormSpec(params, UnitaryFamily(DFT, T))
    v = spec.basis()[:, :L - 1]
    x = np.sqrt(params.K) * np.einsum("ti,n->itn", v, np.full(Nt, np.sqrt(T)))
    on = params.E / params.peak_energy
    pts = np.concatenate([x, np.zeros((1, T, Nt))])
    probs = np.concatenate([np.full(L - 1, on / (L - 1)), [1 - on]])
    return pts, probs


@dataclass(frozen=True)
class SearchResult:
    best_found: float
    closed_form: float
    storm_value: float
    exceedances: int
    trials: int
    seed: object = None

    def __iter__(self):
        return iter((self.best_found, self.closed_form))

    @property
    def ratio(self) -> float:
        return self.best_found / self.closed_form


def random_search_ilow(params: ChannelParams, L: int, trials: int, seed=0,
                       perturb_fraction: float = 0.5, include_storm: bool = True,
                       batch: int = 2000) -> SearchResult:
    """
    Sample feasible ``L``-point constellations and record the best `i_low`.

    Half of the draws (by default) are independent: entries uniform on the
    complex disk of radius ``sqrt(K)`` and Dirichlet probabilities. The rest
    are local moves around the optimal constellation (entry noise clipped
    to the peak, perturbed probabilities). Whenever the average energy
    exceeds ``E`` all matrices of that draw are scaled down to meet it.
    The result unpacks as ``(best_found, closed_form)``.

    The closed form is the optimum only when ``zeta*Nt*(L-1) >= 2``; below
    that the average-power constraint is slack and exceedances are genuine.
    """
    if L > params.T + 1:
        raise ValueError("random search is only certified for L <= T+1")
    T, Nt, Nr = params.T, params.Nt, params.Nr
    closed = i_low_storm_closed_form(T, Nt, Nr, params.zeta, L)
    rng = make_rng(seed)
    base_pts, base_probs = _storm_seed(params, L)
    storm_val = float(i_low_batch(base_pts[None], base_probs[None], params.P, Nr)[0])
    best = storm_val if include_storm else -math.inf
    exceed = int(include_storm and storm_val > closed + 1e-9)
    done = 0
    while done < trials:
        n = min(batch, trials - done)
        n_loc = int(round(n * perturb_fraction))
        n_rand = n - n_loc
        pts = _random_disk(rng, params.K, (n_rand, L, T, Nt))
        probs = rng.dirichlet(np.ones(L), size=n_rand)
        if n_loc:
            scale = 10.0 ** rng.uniform(-4, -0.5, size=(n_loc, 1, 1, 1))
            loc = base_pts[None] + scale * _random_disk(rng, params.K, (n_loc, L, T, Nt))
            mag = np.abs(loc)
            loc = np.where(mag > math.sqrt(params.K),
                           loc * math.sqrt(params.K) / np.maximum(mag, 1e-300), loc)
            conc = 10.0 ** rng.uniform(2, 6, size=(n_loc, 1))
            lp = rng.gamma(conc * base_probs[None] + 1e-9)
            lp /= lp.sum(axis=1, keepdims=True)
            pts = np.concatenate([pts, loc])
            probs = np.concatenate([probs, lp])
        pts = _enforce_power(pts, probs, params.E)
        vals = i_low_batch(pts, probs, params.P, Nr)
        exceed += int(np.count_nonzero(vals > closed + 1e-9))
        best = max(best, float(np.max(vals)))
        done += n
    return SearchResult(best, closed, storm_val, exceed, trials, seed)


# -- wideband-slope denominator ------------------------------------------------

def schur_denominator(q: np.ndarray, K: float, Nt: int, T: int, Nr: int) -> np.ndarray:
    """
    Chi-divergence of ``M`` orthogonal full-peak rank-one points with
    conditional probabilities ``q`` (rows of a 2-D array).

    Diagonal pairs contribute ``(1 - (K Nt T)^2)^{-Nr}``, orthogonal cross
    pairs contribute 1.
    """
    q = np.atleast_2d(q)
    diag = (1 - (K * Nt * T) ** 2) ** (-Nr)
    total = np.sum(q, axis=1)
    sq = np.sum(q * q, axis=1)
    return diag * sq + (total ** 2 - sq) - 1.0


def slope_denominator_samples(M, K, Nt, T, Nr, trials, seed=0):
    """Uniform-vector value and the values at random probability vectors."""
    if K * Nt * T >= 1:
        raise PdViolation(f"K*Nt*T = {K * Nt * T:g} >= 1")
    rng = make_rng(seed)
    q = rng.dirichlet(np.ones(M), size=trials)
    uniform = float(schur_denominator(np.full(M, 1.0 / M), K, Nt, T, Nr)[0])
    return uniform, schur_denominator(q, K, Nt, T, Nr)


def schur_check(M: int, K: float, Nt: int, T: int, Nr: int, trials: int = 10_000,
                seed=0) -> bool:
    """
    True if the uniform probability vector minimizes the slope denominator
    over `trials` random vectors with the same sum.

    Raises
    ------
    PdViolation
        When ``K Nt T >= 1`` and the denominator diverges.
    """
    uniform, vals = slope_denominator_samples(M, K, Nt, T, Nr, trials, seed)
    return bool(np.all(uniform <= vals + 1e-12))


# -- quasiconcave minimization --------------------------------------------------

def _h(d: np.ndarray, probs: np.ndarray) -> np.ndarray:
    return (np.log1p(d) @ probs) / (d @ probs)


def quasiconcave_vertex_check(probs: Sequence[float], E: float, Q: float,
                              grid_density: int = 101) -> bool:
    """
    Grid-minimize ``h(d) = sum p_i log(1+d_i) / sum p_i d_i`` over the
    polytope and confirm the minimum sits at a vertex.

    Three things must hold: no grid point beats the best vertex, the grid
    minimizer lies within one grid step of a vertex, and every vertex whose
    entries are all 0 or Q attains ``log(1+Q)/Q``.
    """
    pr = np.asarray(probs, dtype=float)
    if pr.size > 3:
        raise DimensionTooLarge("grid search is limited to three coordinates")
    poly = Polytope(pr, E, Q)
    axis = np.linspace(0.0, Q, grid_density)
    grid = np.stack(np.meshgrid(*([axis] * pr.size), indexing="ij"), -1).reshape(-1, pr.size)
    energy = grid @ pr
    keep = (energy <= E * (1 + 1e-12)) & (energy > 0)
    grid = grid[keep]
    vals = _h(grid, pr)
    verts = [v for v in enumerate_vertices(poly) if v @ pr > 0]
    vvals = np.array([_h(v[None], pr)[0] for v in verts])
    vmin = float(np.min(vvals))
    step = Q / (grid_density - 1)
    g_arg = grid[int(np.argmin(vals))]
    ok = float(np.min(vals)) >= vmin - 1e-12
    ok &= any(np.max(np.abs(g_arg - v)) <= step * (1 + 1e-9) for v in verts)
    target = math.log1p(Q) / Q
    corner = [val for v, val in zip(verts, vvals) if matches_vertex_pattern(v, Q)
              and np.all((np.abs(v) < 1e-12) | (np.abs(v - Q) < 1e-12 * max(Q, 1)))]
    ok &= all(abs(val - target) <= 1e-12 * max(1.0, target) for val in corner)
    if corner:
        ok &= abs(vmin - target) <= 1e-12 * max(1.0, target)
    return bool(ok)


# -- positive-definiteness gate --------------------------------------------------

def pd_gate(c: Constellation) -> List[Tuple[int, int, float]]:
    """
    ``(i, j, lambda_min)`` for every ordered pair of nonzero points, where
    ``lambda_min`` is the smallest eigenvalue of the Hermitian matrix
    ``I - X_i^* X_j X_j^* X_i`` (same spectrum as ``I - X_iX_i^*X_jX_j^*``
    away from the trivial unit eigenvalues).
    """
    return pair_min_eigenvalues(c)


def pd_gate_status(c: Constellation, tol: float = PD_TOL) -> str:
    """``"pass"``, ``"singular"`` (boundary within `tol`) or ``"fail"``."""
    eigs = [e for _, _, e in pd_gate(c)]
    if not eigs or min(eigs) > tol:
        return "pass"
    if min(eigs) >= -tol:
        return "singular"
    return "fail"


# -- verification report -----------------------------------------------------------

@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    worst_residual: float
    seed: object
    detail: str = ""


def _vertex_checks(rng) -> CheckOutcome:
    cases = [Polytope([0.5, 0.5], 0.6, 1.0)]
    for L in (2, 3, 4):
        for _ in range(4):
            pr = rng.dirichlet(np.ones(L))
            Q = float(rng.uniform(0.2, 3.0))
            E = float(rng.uniform(0.05, 1.0)) * Q
            cases.append(Polytope(pr, E, Q))
    worst, ok = 0.0, True
    for poly in cases:
        verts = enumerate_vertices(poly)
        pats = vertex_pattern_points(poly)
        if len(verts) != len(pats):
            ok = False
            continue
        for v, w in zip(verts, pats):
            worst = max(worst, float(np.max(np.abs(v - w))))
        ok &= all(matches_vertex_pattern(v, poly.Q) for v in verts)
        ok &= all(is_extreme_point_lp(poly, v) for v in verts)
    return ok and worst <= 1e-9, worst, f"{len(cases)} polytopes, L <= 4"


def _kkt_checks() -> CheckOutcome:
    worst, ok, n = 0.0, True, 0
    for T in (2, 4, 8):
        for Nt in (1, 2):
            for zeta in (1.0, 1.5, 2.0, 4.0):
                params = ChannelParams.from_zeta(T=T, Nt=Nt, Nr=1, P=1.0, zeta=zeta)
                prev = -math.inf
                for M in range(1, T + 1):
                    try:
                        cert = kkt_case3(M, params)
                    except CaseInapplicable:
                        continue
                    n += 1
                    worst = max(worst, cert.worst_residual,
                                abs(cert.objective - case3_objective(M, params))
                                / case3_objective(M, params))
                    ok &= cert.objective >= prev - 1e-12
                    prev = cert.objective
    return ok and worst <= 1e-9, worst, f"{n} (T, Nt, zeta, M) cells"


def _search_checks(seed, trials) -> CheckOutcome:
    worst, ok, n, ratio = 0.0, True, 0, 1.0
    cells = [(T, Nt, zeta) for T in (2, 4) for Nt in (1, 2) for zeta in (1.5, 2.0, 4.0)]
    seqs = seed_sequence(seed).spawn(len(cells) * 5)
    skipped = 0
    for T, Nt, zeta in cells:
        params = ChannelParams.from_zeta(T=T, Nt=Nt, Nr=1, P=1.0, zeta=zeta)
        for L in range(2, T + 2):
            if zeta * Nt * (L - 1) < 2:
                # power constraint slack: the closed form is not the optimum here
                skipped += 1
                continue
            r = random_search_ilow(params, L, trials, seqs[n], include_storm=False)
            n += 1
            worst = max(worst, (r.best_found - r.closed_form) / r.closed_form)
            ok &= r.exceedances == 0
            ok &= abs(r.storm_value - r.closed_form) <= 1e-12 * r.closed_form
            ratio = min(ratio, r.ratio)
    return ok, max(worst, 0.0), (f"{n} cells x {trials} trials, min best/closed = {ratio:.6f}, "
                                 f"{skipped} cells with zeta*Nt*(L-1) < 2 skipped")


def _schur_checks(seed, trials) -> CheckOutcome:
    worst, ok, n = 0.0, True, 0
    cases = [(M, x, Nt, T, Nr) for M in (2, 4, 8) for x in (0.1, 0.5, 0.9)
             for (Nt, T) in ((1, 4), (2, 4)) for Nr in (1, 4)]
    seqs = seed_sequence(seed).spawn(len(cases))
    for (M, x, Nt, T, Nr), sub in zip(cases, seqs):
        K = x / (Nt * T)
        uniform, vals = slope_denominator_samples(M, K, Nt, T, Nr, trials, sub)
        closed = ((1 - x * x) ** (-Nr) - 1) / M
        worst = max(worst, abs(uniform - closed) / closed, max(uniform - float(np.min(vals)), 0.0))
        ok &= schur_check(M, K, Nt, T, Nr, trials, sub)
        n += 1
    return ok and worst <= 1e-9, worst, f"{n} cases x {trials} trials"


def _quasiconcave_checks(rng) -> CheckOutcome:
    ok, n = True, 0
    for L in (1, 2, 3):
        for _ in range(3):
            pr = rng.dirichlet(np.ones(L))
            Q = float(rng.uniform(0.05, 4.0))
            E = float(rng.uniform(np.min(pr), 1.0)) * Q
            ok &= quasiconcave_vertex_check(pr, E, Q, 101 if L < 3 else 41)
            n += 1
    return ok, 0.0, f"{n} polytopes"


def _pd_slope_checks() -> CheckOutcome:
    worst, ok = 0.0, True
    for x in (0.05, 0.3, 0.7, 0.95):
        for T, Nt in ((2, 1), (4, 2)):
            params = ChannelParams(T=T, Nt=Nt, Nr=2, P=0.01, K=x / (Nt * T))
            c = build_storm(StormSpec(params))
            ok &= pd_gate_status(c) == "pass"
            s = wideband_slope(c)
            ref = slope_storm_closed(x / (Nt * T), Nt, T, 2)
            worst = max(worst, abs(s - ref) / ref)
    for x in (1.0, 2.0):
        params = ChannelParams(T=4, Nt=1, Nr=2, P=0.01, K=x / 4)
        ok &= pd_gate_status(build_storm(StormSpec(params))) != "pass"
    return ok and worst <= 1e-9, worst, "STORM slopes against closed form, PD gate at K*Nt*T >= 1"


def run_verification(seed=0, trials: int = 2000) -> List[CheckOutcome]:
    """Run every certificate with child seeds derived from `seed`."""
    s_vert, s_search, s_schur, s_qc = seed_sequence(seed).spawn(4)
    out = []
    for name, fn, sub in (
            ("vertex_enumeration", lambda: _vertex_checks(make_rng(s_vert)), s_vert),
            ("kkt_case3", _kkt_checks, None),
            ("random_search_ilow", lambda: _search_checks(s_search, trials), s_search),
            ("schur_convexity", lambda: _schur_checks(s_schur, trials), s_schur),
            ("quasiconcave_vertex", lambda: _quasiconcave_checks(make_rng(s_qc)), s_qc),
            ("pd_gate_and_slope", _pd_slope_checks, None)):
        passed, worst, detail = fn()
        out.append(CheckOutcome(name, bool(passed), float(worst), seed if sub is not None else None,
                                detail))
    return out


def render_report(outcomes: Sequence[CheckOutcome]) -> str:
    """One ``[name]`` block per check followed by a summary block."""
    lines = []
    for o in outcomes:
        lines += [f"[{o.name}]", f"status = {'pass' if o.passed else 'FAIL'}",
                  f"worst_residual = {o.worst_residual:.3e}",
                  f"seed = {'n/a' if o.seed is None else o.seed}",
                  f"detail = {o.detail}", ""]
    npass = sum(o.passed for o in outcomes)
    lines += ["[summary]", f"passed = {npass}/{len(outcomes)}"]
    return "\n".join(lines) + "\n"
