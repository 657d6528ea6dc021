# %% [markdown]
# # Numerical certificates for the optimal constellations
#
# The optimality argument has three numerical ingredients: extreme points of
# a box cut by a half-plane, the KKT conditions of the probability
# optimization, and brute-force search over feasible constellations.

# %%
from lowsnr import ChannelParams
from lowsnr.verify import (Polytope, enumerate_vertices, kkt_case3, random_search_ilow,
                           render_report, run_verification)

for v in enumerate_vertices(Polytope([0.5, 0.5], 0.6, 1.0)):
    print(v)

# %% [markdown]
# Every vertex has all coordinates but one at 0 or Q.
#
# For M full-peak points the certificate gives the probabilities, the
# multipliers and the residual of every condition.

# %%
params = ChannelParams.from_zeta(T=4, Nt=2, Nr=1, P=1.0, zeta=2.0)
for M in range(1, 5):
    cert = kkt_case3(M, params)
    print(f"M = {M}: objective {cert.objective:.3f}, worst residual {cert.worst_residual:.1e}")

# %% [markdown]
# Random constellations never beat the closed form when
# ``zeta Nt (L-1) >= 2``. Below that threshold the power constraint is slack
# and a single full-peak point sent half of the time does better.

# %%
for zeta, L in ((2.0, 3), (1.5, 2)):
    p = ChannelParams.from_zeta(T=2, Nt=1, Nr=1, P=1.0, zeta=zeta)
    r = random_search_ilow(p, L, 5000, seed=0, include_storm=False)
    print(f"zeta = {zeta}, L = {L}: best {r.best_found:.4f} vs closed form {r.closed_form:.4f}")

# %%
print(render_report(run_verification(seed=0, trials=1000)))
