"""
Optimal low-SNR signaling for the noncoherent MIMO block Rayleigh channel.

STORM (space-time orthogonal rank-one modulation) and MIMO on-off keying,
their closed-form low-SNR metrics, a Monte-Carlo channel simulator, a fast
transform-domain MAP decoder and numerical optimality certificates.
"""

try:
    from importlib.metadata import PackageNotFoundError, version

    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .exceptions import *  # noqa: F401,F403
from .numerics import (DFT, HADAMARD, Permutation, UnitaryFamily, dft_matrix,
                       fwht, hadamard_matrix, rank_one_check)
from .constellation import (ChannelParams, Constellation, StormSpec, Violation,
                            build_mimo_ook, build_storm, constellation_from_json,
                            constellation_to_json, from_points, papr, validate)
from .metrics import (DIVERGENT, LOG2E, MetricReport, TaylorCurve, cdot0,
                      cutoff_rate_low, eb_n0_min, i_low, i_low_bounds,
                      i_low_storm_closed_form, kl_zero, metric_report,
                      min_chordal_distance, pearson_chi, slope_ook_closed,
                      slope_storm_closed, spectral_efficiency_taylor, wideband_slope)
from .channel import (McEstimate, cond_logpdf, energy_per_bit_curve, monte_carlo_mi,
                      simulate_block, simulate_blocks)
from .decoder import FastStormDecoder, fast_decode, map_decode, simulate_ser
from .verify import (Polytope, enumerate_vertices, kkt_case3, pd_gate,
                     quasiconcave_vertex_check, random_search_ilow, schur_check)
