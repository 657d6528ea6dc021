"""Independent reference computations used by the tests."""

import math

import numpy as np
from scipy import integrate


def ook_mi_quad(x: float, p_on: float, T: int = 1) -> float:
    """
    Mutual information (nats per channel use) of OOK with Nr=1 by quadrature.

    The energy ``u = |v^* y|^2`` along the signal direction is sufficient;
    it is exponential with mean ``1 + x`` when ON and 1 when OFF.
    """
    s = 1.0 + x
    lp1, lp0 = math.log(p_on), math.log1p(-p_on)

    def integrand(u):
        # log-space densities so the far tail cannot underflow into log(0)
        l1, l0 = -u / s - math.log(s), -u
        lf = np.logaddexp(lp1 + l1, lp0 + l0)
        return math.exp(lp1 + l1) * (l1 - lf) + math.exp(lp0 + l0) * (l0 - lf)

    val, _ = integrate.quad(integrand, 0, np.inf, epsabs=1e-16, epsrel=1e-13, limit=400)
    return val / T


def chi_quad(x: float) -> float:
    """Pearson chi-divergence of Exp(mean 1+x) from Exp(mean 1)."""
    s = 1.0 + x
    val, _ = integrate.quad(lambda u: math.exp(-2 * u / s + u) / s ** 2, 0, np.inf,
                            epsabs=1e-14, epsrel=1e-12)
    return val - 1.0


def gaussian_kl(cov1: np.ndarray, cov0: np.ndarray, Nr: int) -> float:
    """KL divergence between CN(0, cov1) and CN(0, cov0), ``Nr`` i.i.d. columns."""
    lam = np.linalg.eigvals(np.linalg.solve(cov0, cov1)).real
    return Nr * float(np.sum(lam - 1 - np.log(lam)))
