# %% [markdown]
# # Simulating the channel
#
# Monte-Carlo mutual information at shrinking SNR approaches ``i_low P^2``,
# and the transform-domain decoder reproduces brute-force MAP decisions.

# %%
import numpy as np

from lowsnr import ChannelParams, StormSpec, build_storm, i_low, monte_carlo_mi
from lowsnr.channel import simulate_blocks
from lowsnr.decoder import FastStormDecoder, map_decode_batch, simulate_ser

for P in (0.1, 0.05, 0.025):
    c = build_storm(StormSpec(ChannelParams.from_zeta(T=2, Nt=1, Nr=1, P=P, zeta=2.0)))
    est = monte_carlo_mi(c, samples=200_000, seed=1)
    print(f"P = {P:<6} MI/P^2 = {est.value / P**2:.4f} +- {est.std_error / P**2:.4f}"
          f"   (i_low = {i_low(c):.4f})")

# %% [markdown]
# The fast decoder needs one FFT per receive antenna instead of one
# likelihood per constellation point.

# %%
rng = np.random.default_rng(7)
c = build_storm(StormSpec(ChannelParams.from_zeta(T=8, Nt=2, Nr=2, P=0.5, zeta=2.0)))
sent = rng.choice(c.L, size=20_000, p=c.probs)
y = simulate_blocks(c.points[sent], 2, rng)
fast, omega = FastStormDecoder(c).decode_batch(y)
print("disagreements with brute force:", int(np.sum(fast != map_decode_batch(y, c, 2))))
print("symbol error rate:", np.mean(fast != sent))

# %%
for K in (0.5, 2.0, 8.0):
    c = build_storm(StormSpec(ChannelParams(T=4, Nt=1, Nr=1, P=K / 4, K=K)))
    print(f"K = {K}: SER = {simulate_ser(c, trials=50_000, seed=3).ser:.4f}")
