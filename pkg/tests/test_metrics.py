import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lowsnr.constellation import ChannelParams, StormSpec, build_mimo_ook, build_storm, from_points
from lowsnr.exceptions import CardinalityOutOfRange, Infeasible, Undefined, ZeroPointSkipped
from lowsnr.metrics import (DIVERGENT, LOG2E, MetricReport, cdot0, cutoff_rate_low, eb_n0_min,
                            i_low, i_low_bounds, i_low_storm_closed_form, iddot0_from_slope,
                            is_divergent, kl_zero, metric_report, min_chordal_distance,
                            pearson_chi, slope_ook_closed, slope_storm_closed,
                            spectral_efficiency_taylor, wideband_slope)

from oracles import chi_quad, gaussian_kl, ook_mi_quad


def storm(T, Nt, Nr, P, zeta=None, K=None):
    if K is None:
        p = ChannelParams.from_zeta(T=T, Nt=Nt, Nr=Nr, P=P, zeta=zeta)
    else:
        p = ChannelParams(T=T, Nt=Nt, Nr=Nr, P=P, K=K)
    return build_storm(StormSpec(p))


# -- i_low -----------------------------------------------------------------------

def test_i_low_storm_T4_Nt2_zeta2(storm_425):
    # [DERIVED] direct evaluation on the built matrices
    assert i_low(storm_425) == pytest.approx(7.5, rel=1e-12)
    assert i_low_storm_closed_form(4, 2, 1, 2.0, 5) == pytest.approx(7.5, rel=1e-15)


@pytest.mark.parametrize("T,Nt,Nr,zeta", [(2, 1, 1, 2.0), (4, 2, 3, 1.5), (8, 1, 2, 4.0)])
def test_i_low_matches_closed_form_at_full_cardinality(T, Nt, Nr, zeta):
    c = storm(T, Nt, Nr, 0.01, zeta)
    closed = i_low_storm_closed_form(T, Nt, Nr, zeta, T + 1)
    assert i_low(c) == pytest.approx(closed, rel=1e-12)
    assert closed == pytest.approx(Nr / 2 * (zeta * Nt * T - 1), rel=1e-15)


def test_bound_ratio_T4_Nt2_zeta2():
    lo, hi = i_low_bounds(4, 2, 1, 2.0)
    assert lo / hi == pytest.approx(0.9375, abs=1e-15)
    assert round(lo / hi, 2) == 0.94


def test_closed_form_domain():
    with pytest.raises(CardinalityOutOfRange):
        i_low_storm_closed_form(4, 1, 1, 2.0, 6)
    with pytest.raises(CardinalityOutOfRange):
        i_low_storm_closed_form(4, 1, 1, 2.0, 1)
    with pytest.raises(Infeasible):
        i_low_storm_closed_form(4, 1, 1, 0.4, 2)


@given(st.floats(0.001, 0.5), st.floats(1.0, 6.0))
def test_i_low_invariant_under_snr_at_fixed_zeta(P, zeta):
    a = i_low(storm(4, 2, 1, P, zeta))
    b = i_low(storm(4, 2, 1, P / 2, zeta))
    assert a == pytest.approx(b, rel=1e-10)


def test_i_low_is_second_order_mi_coefficient():
    # [DERIVED] T=1 OOK with zeta=2: p_on = 1/2, so i_low = zeta^2/8 = 0.5
    p = ChannelParams.from_zeta(T=1, Nt=1, Nr=1, P=1e-3, zeta=2.0)
    assert i_low(build_mimo_ook(p)) == pytest.approx(0.5, rel=1e-12)
    g = [ook_mi_quad(2.0 * P, 0.5) / P ** 2 for P in (2e-3, 1e-3)]
    # first-order Richardson step in P
    assert 2 * g[1] - g[0] == pytest.approx(0.5, rel=2e-3)


@given(st.integers(0, 2**31 - 1), st.integers(2, 5))
def test_cutoff_rate_is_half_of_i_low(seed, L):
    r = np.random.default_rng(seed)
    p = ChannelParams(T=3, Nt=2, Nr=2, P=0.1, K=1.0)
    pts = r.standard_normal((L, 3, 2)) + 1j * r.standard_normal((L, 3, 2))
    c = from_points(p, pts, r.dirichlet(np.ones(L)))
    assert cutoff_rate_low(c) / i_low(c) == pytest.approx(0.5, rel=1e-10)
    raw = cutoff_rate_low(c, normalized=False)
    assert raw == pytest.approx(cutoff_rate_low(c) * p.T * p.P ** 2, rel=1e-12)


# -- first-order metrics -------------------------------------------------------------

def test_kl_zero_against_gaussian_kl(rng):
    x = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    ref = gaussian_kl(np.eye(4) + x @ x.conj().T, np.eye(4), Nr=3)
    assert kl_zero(x, 3) == pytest.approx(ref, rel=1e-10)
    assert kl_zero(np.zeros((4, 2)), 3) == 0.0


def test_cdot0_at_unit_peak():
    assert cdot0(0.25, 1, 4, 1) * LOG2E == pytest.approx(LOG2E - 1, abs=1e-12)
    assert cdot0(0.5, 2, 1, 3) * LOG2E == pytest.approx(3 * (LOG2E - 1), abs=1e-12)
    assert eb_n0_min(0.25, 1, 4, 1) == pytest.approx(
        10 * math.log10(math.log(2) / (1 - math.log(2))), abs=1e-12)
    assert eb_n0_min(0.25, 1, 4, 1) == pytest.approx(3.54, abs=0.005)


def test_eb_n0_min_approaches_ln2_limit():
    assert eb_n0_min(1e8, 1, 1, 1) == pytest.approx(10 * math.log10(math.log(2)), abs=1e-6)
    with pytest.raises(Undefined):
        cdot0(0.0, 1, 1, 1)


@pytest.mark.parametrize("x,T", [(0.5, 1), (0.9, 1), (0.5, 2), (0.7, 4)])
def test_cdot0_is_mi_slope_at_zero(x, T):
    # [DERIVED] fixed peak, vanishing ON probability: I(P)/P -> cdot0
    K = x / T
    vals = [ook_mi_quad(x, P / K, T) / P for P in (2e-5, 1e-5)]
    assert 2 * vals[1] - vals[0] == pytest.approx(cdot0(K, 1, T, 1), rel=1e-5)


@pytest.mark.parametrize("x,T", [(2.0, 1), (1.5, 4)])
def test_cdot0_limit_past_unit_peak(x, T):
    # the correction is no longer O(P) here, so only monotone convergence is checked
    K = x / T
    target = cdot0(K, 1, T, 1)
    gaps = [target - ook_mi_quad(x, P / K, T) / P for P in (1e-3, 1e-5, 1e-7)]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    assert gaps[2] < 5e-4 * target


@given(st.floats(0.01, 10.0), st.integers(1, 8), st.integers(1, 8))
def test_eb_n0_min_decreasing_in_peak(x, Nr, T):
    assert eb_n0_min(1.1 * x / T, 1, T, Nr) < eb_n0_min(x / T, 1, T, Nr)


# -- wideband slope ----------------------------------------------------------------------

@pytest.mark.parametrize("x", [0.2, 0.6, 0.9])
def test_pearson_chi_against_quadrature(x):
    c = build_mimo_ook(ChannelParams(T=1, Nt=1, Nr=1, P=1e-3, K=x))
    assert pearson_chi(c) == pytest.approx(chi_quad(x), rel=1e-9)


def test_pearson_chi_diverges_past_unit_peak():
    c = build_mimo_ook(ChannelParams(T=1, Nt=1, Nr=1, P=1e-3, K=1.2))
    assert is_divergent(pearson_chi(c))
    assert pearson_chi(c) is DIVERGENT
    assert wideband_slope(c) == 0.0


@pytest.mark.parametrize("x,T", [(0.1, 1), (0.3, 1), (0.2, 2), (0.3, 4)])
def test_ook_slope_matches_second_order_mi(x, T):
    # [DERIVED] I''(0) from the quadrature MI versus -2 I'(0)^2 / S0.
    # Well below x = 1/2 the next term is O(P^3); one Richardson step suffices.
    K = x / T
    idot = cdot0(K, 1, T, 1)
    want = iddot0_from_slope(idot, slope_ook_closed(K, 1, T, 1))
    g = [(ook_mi_quad(x, P / K, T) - idot * P) / P ** 2 for P in (2e-3 / T, 1e-3 / T)]
    assert 2 * (2 * g[1] - g[0]) == pytest.approx(want, rel=1e-3)


@pytest.mark.parametrize("x", [0.6, 0.8])
def test_ook_slope_limit_above_half_peak(x):
    # third-order term is non-analytic here; check plain convergence
    idot = cdot0(x, 1, 1, 1)
    want = iddot0_from_slope(idot, slope_ook_closed(x, 1, 1, 1))
    errs = [abs(2 * (ook_mi_quad(x, P / x) - idot * P) / P ** 2 - want)
            for P in (1e-3, 1e-4, 1e-5, 1e-6)]
    assert errs[0] > errs[1] > errs[2] > errs[3]
    assert errs[3] < 0.05 * abs(want)


@pytest.mark.parametrize("T,Nt,Nr", [(2, 1, 1), (4, 2, 2), (8, 1, 3)])
@pytest.mark.parametrize("x", [0.1, 0.5, 0.9])
def test_slopes_match_closed_forms(T, Nt, Nr, x):
    K = x / (Nt * T)
    s = storm(T, Nt, Nr, 1e-3, K=K)
    o = build_mimo_ook(ChannelParams(T=T, Nt=Nt, Nr=Nr, P=1e-3, K=K))
    assert wideband_slope(s) == pytest.approx(slope_storm_closed(K, Nt, T, Nr), rel=1e-10)
    assert wideband_slope(o) == pytest.approx(slope_ook_closed(K, Nt, T, Nr), rel=1e-10)
    assert slope_storm_closed(K, Nt, T, Nr) / slope_ook_closed(K, Nt, T, Nr) == pytest.approx(
        T, rel=1e-12)


def test_slope_zero_past_unit_peak():
    assert slope_storm_closed(0.5, 1, 4, 2) == 0.0
    assert slope_ook_closed(0.25, 1, 4, 2) == 0.0


def test_slope_has_interior_maximum():
    xs = np.linspace(0.01, 0.99, 99)
    s = np.array([slope_storm_closed(x / 4, 1, 4, 1) for x in xs])
    k = int(np.argmax(s))
    assert 0 < k < len(xs) - 1


def test_taylor_curve():
    curve = spectral_efficiency_taylor(0.4, -0.2, [0.1, 0.2])
    assert np.allclose(curve.bits_per_joule, LOG2E * np.array([0.39, 0.38]))
    assert np.allclose(curve.spectral_efficiency(), curve.P * curve.bits_per_joule)
    assert np.allclose(curve.eb_n0_db(), -10 * np.log10(curve.bits_per_joule))
    with pytest.raises(Undefined):
        iddot0_from_slope(0.4, 0.0)


# -- chordal distance and report ---------------------------------------------------------------

@pytest.mark.parametrize("T,Nt", [(2, 1), (4, 2), (8, 3)])
def test_storm_chordal_distance_is_nt(T, Nt):
    with pytest.warns(ZeroPointSkipped):
        assert min_chordal_distance(storm(T, Nt, 1, 0.01, 2.0)) == pytest.approx(Nt, abs=1e-10)


def test_chordal_distance_zero_for_same_subspace(rng):
    p = ChannelParams(T=4, Nt=2, Nr=1, P=0.1, K=1.0)
    x = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    u, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    c = from_points(p, [x, 2 * x @ u], [0.5, 0.5])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert min_chordal_distance(c) == pytest.approx(0.0, abs=1e-10)


def test_metric_report_row(storm_425):
    rep = metric_report(storm_425)
    row = rep.csv_row()
    assert len(row) == len(MetricReport.CSV_FIELDS)
    assert rep.papr == pytest.approx(4.0)
    assert rep.i_low == pytest.approx(7.5)
    peak_only = storm(2, 1, 1, 0.1, 1.0)
    assert math.isnan(metric_report(peak_only).s0)
