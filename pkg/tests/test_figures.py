import math

import numpy as np
import pytest

from lowsnr.figures import (FIGURES, NR_SWEEP, all_figures, fig3, fig4, fig5, fig6,
                            horizontal_gap_db, write_csv)
from lowsnr.metrics import LOG2E


@pytest.mark.parametrize("nr", NR_SWEEP)
def test_fig3_decreasing(nr):
    v = fig3().select(Nr=nr).column("eb_n0_min_db")
    assert np.all(np.diff(v) < 0)


@pytest.mark.parametrize("nr", NR_SWEEP)
def test_fig4_interior_maximum_then_zero(nr):
    t = fig4().select(Nr=nr)
    x, s = t.column("KNtT"), t.column("s0")
    k = int(np.argmax(s))
    assert 0 < x[k] < 1 and s[k] > 0
    assert np.all(s[x >= 1] == 0)
    assert np.all(np.diff(s[: k + 1]) > 0) and np.all(np.diff(s[k:][x[k:] < 1]) < 0)


@pytest.mark.parametrize("T", [2, 8])
def test_fig5_gap_is_ten_log_t(T):
    t = fig5(T=T)
    for x in (0.25, 0.5, 0.75):
        s = t.select(KNtT=x)
        gap = horizontal_gap_db(s.column("P"), s.column("storm_bits_per_joule"),
                                s.column("ook_bits_per_joule"))
        assert gap.size > 100
        assert np.max(np.abs(gap - 10 * math.log10(T))) < 0.05


def test_fig6_converges_to_capacity_per_unit_energy():
    t = fig6().select(KNtT=0.4)
    b, cap = t.column("bits_per_joule"), t.column("cdot0_bits")
    assert b[0] == pytest.approx(cap[0], rel=1e-3)
    assert np.all(b <= cap)


def test_csv_rendering_is_deterministic():
    texts = [write_csv(f, meta={"seed": 0}) for f in all_figures()]
    again = [write_csv(f, meta={"seed": 0}) for f in all_figures()]
    assert texts == again
    assert len(texts) == len(FIGURES) == 7
    head = texts[2].splitlines()
    assert head[0] == "# figure: fig3"
    assert head[next(i for i, line in enumerate(head) if not line.startswith("#"))] == \
        "Nr,KNtT,eb_n0_min_db"
