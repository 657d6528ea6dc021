# %% [markdown]
# # Building STORM constellations
#
# A STORM constellation has T rank-one signal matrices built from the
# columns of a T x T unitary (DFT or Hadamard, optionally with permuted
# rows), plus a zero matrix that absorbs whatever probability the average
# power constraint leaves over.

# %%
import numpy as np

from lowsnr import (ChannelParams, StormSpec, UnitaryFamily, Permutation, build_storm,
                    build_mimo_ook, constellation_to_json, i_low, papr, validate)

params = ChannelParams.from_zeta(T=4, Nt=2, Nr=1, P=0.1, zeta=2.0)
storm = build_storm(StormSpec(params))
print("points:", storm.L)
print("probabilities:", storm.probs)

# %% [markdown]
# Each nonzero point spends the full peak energy ``K Nt T``; the zero
# matrix is sent with probability ``1 - 1/(zeta Nt)``. Every entry of an ON
# matrix has magnitude ``sqrt(K)``, and distinct ON matrices have
# orthogonal column spaces.

# %%
on = storm.points[~storm.zero_mask]
print("entry magnitudes:", np.unique(np.round(np.abs(on), 12)), "sqrt(K) =", np.sqrt(params.K))
gram = np.einsum("itn,jtm->ij", on.conj(), on)
print("cross-correlations between ON points:\n", np.round(np.abs(gram), 12))
print("constraint violations:", validate(storm))
print("PAPR:", papr(storm), "= zeta*Nt")

# %% [markdown]
# Any permutation of rows and any unit-modulus phases per antenna give an
# equally good member of the family: the second-order figure of merit is
# unchanged.

# %%
rng = np.random.default_rng(1)
other = build_storm(StormSpec(params, UnitaryFamily("hadamard", 4), Permutation.random(4, rng),
                              np.exp(2j * np.pi * rng.random(2))))
print("i_low canonical:", i_low(storm), " i_low variant:", i_low(other))

# %% [markdown]
# MIMO on-off keying uses a single ON matrix. It reaches the same first-order
# efficiency but a smaller second-order coefficient.

# %%
ook = build_mimo_ook(params)
print("OOK probabilities:", ook.probs, " i_low:", i_low(ook))

# %% [markdown]
# Constellations serialize to JSON for reproducible pipelines.

# %%
print(constellation_to_json(storm)[:200], "...")
