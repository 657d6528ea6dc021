# %% [markdown]
# # Energy efficiency and bandwidth efficiency at low SNR
#
# With a fixed peak power per slot, the capacity per unit energy depends on
# ``x = K Nt T`` alone, and the wideband slope of STORM is T times that of
# MIMO-OOK.

# %%
import math

import numpy as np

from lowsnr import LOG2E, cdot0, eb_n0_min, slope_ook_closed, slope_storm_closed
from lowsnr.figures import fig4, fig5, horizontal_gap_db

for x in (0.1, 0.5, 1.0, 10.0, 1e8):
    print(f"K Nt T = {x:>8g}:  Eb/N0_min = {eb_n0_min(x, 1, 1, 1):8.4f} dB,"
          f"  Cdot(0) = {cdot0(x, 1, 1, 1) * LOG2E:.4f} bits/joule")
print("10 log10(ln 2) =", 10 * math.log10(math.log(2)))

# %% [markdown]
# Peakier signaling lowers the minimum energy per bit, but the wideband
# slope collapses to zero once ``K Nt T`` reaches 1.

# %%
T = 8
for x in (0.2, 0.5, 0.8, 0.99, 1.2):
    K = x / T
    print(f"x = {x:4}:  S0 STORM = {slope_storm_closed(K, 1, T, 1):.5f}"
          f"  S0 OOK = {slope_ook_closed(K, 1, T, 1):.5f}")

t = fig4().select(Nr=1)
xs, s0 = t.column("KNtT"), t.column("s0")
print("slope peaks at K Nt T =", xs[np.argmax(s0)])

# %% [markdown]
# Along the first-order approximation of I(P)/P, MIMO-OOK needs an SNR
# ``10 log10 T`` dB lower than STORM for the same bits per joule.

# %%
tab = fig5(T=8).select(KNtT=0.5)
gap = horizontal_gap_db(tab.column("P"), tab.column("storm_bits_per_joule"),
                        tab.column("ook_bits_per_joule"))
print(f"gap: {gap.mean():.4f} dB, 10 log10 8 = {10 * math.log10(8):.4f} dB")
