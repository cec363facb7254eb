"""Conversions between privacy definitions.

DP <-> pDP parameter maps, the mean-concentrated (mCDP) tail bound, and the
single noise formula that the zCDP, RDP, and tCDP routes to (eps, delta)-DP
all reduce to.  The truncated variant (tCDP) gets no operation of its own:
both of its branches coincide with the zCDP/RDP reduction below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .calib import Mechanism, NoiseScale, PrivacyBudget, Sensitivity

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class McdpParams:
    """Mean-concentrated DP parameters: privacy-loss mean bound mu and
    subgaussian scale tau."""

    mu: float
    tau: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and self.mu >= 0.0):
            raise ValueError(f"mu must be >= 0, got {self.mu!r}")
        if not (math.isfinite(self.tau) and self.tau > 0.0):
            raise ValueError(f"tau must be positive, got {self.tau!r}")


@dataclass(frozen=True)
class ZcdpParams:
    """Zero-concentrated DP parameter rho."""

    rho: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho) and self.rho > 0.0):
            raise ValueError(f"rho must be positive, got {self.rho!r}")


def dp_to_pdp(budget: PrivacyBudget, eps_star: float) -> PrivacyBudget:
    """(eps, delta)-DP implies (eps*, delta(1+e^{-eps*})/(1-e^{eps-eps*}))-pDP
    for any eps* > eps.

    No clamping: if the converted delta reaches 1 the budget is vacuous and a
    ValueError is raised instead.
    """
    eps_star = float(eps_star)
    if not (math.isfinite(eps_star) and eps_star > budget.epsilon):
        raise ValueError(
            f"eps_star must exceed epsilon={budget.epsilon!r}, got {eps_star!r}"
        )
    factor = (1.0 + math.exp(-eps_star)) / -math.expm1(budget.epsilon - eps_star)
    delta_star = budget.delta * factor
    if delta_star >= 1.0:
        raise ValueError(
            f"converted delta {delta_star!r} is >= 1 (vacuous); "
            f"choose eps_star further above epsilon"
        )
    return PrivacyBudget(eps_star, delta_star)


def pdp_to_dp(budget: PrivacyBudget) -> PrivacyBudget:
    """(eps, delta)-pDP certifies (eps, delta)-DP at the same parameters."""
    return budget


def mcdp_to_pdp_delta(params: McdpParams, epsilon: float) -> float:
    """delta of the (epsilon, delta)-pDP guarantee implied by (mu, tau)-mCDP
    for epsilon > mu: exp(-(eps-mu)^2/(2 tau^2)) + exp(-(eps+mu)^2/(2 tau^2)).

    With the Gaussian instantiation mu = 1/(2 sigma^2), tau = 1/sigma (unit
    sensitivity) this is the subgaussian tail-bound counterpart of the exact
    pDP profile, and always dominates it.
    """
    epsilon = float(epsilon)
    if not (math.isfinite(epsilon) and epsilon > params.mu):
        raise ValueError(f"epsilon must exceed mu={params.mu!r}, got {epsilon!r}")
    t2 = 2.0 * params.tau * params.tau
    lo = epsilon - params.mu
    hi = epsilon + params.mu
    return math.exp(-lo * lo / t2) + math.exp(-hi * hi / t2)


def sigma_via_cdp_route(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """Gaussian noise for (eps, delta)-DP obtained through concentrated-DP
    accounting: Delta (sqrt(ln(1/delta)) + sqrt(ln(1/delta) + eps)) / (sqrt(2) eps).

    The zCDP, RDP, and tCDP derivations all reduce to this same expression;
    it exceeds even the weakest direct mechanism (sqrt(8 delta + 1) - 1 > 2 delta).
    """
    if sens.l2 == 0.0:
        return NoiseScale(0.0, Mechanism.CDP_ROUTE)
    log_inv_delta = math.log(1.0 / budget.delta)
    sigma = (
        sens.l2
        * (math.sqrt(log_inv_delta) + math.sqrt(log_inv_delta + budget.epsilon))
        / (_SQRT2 * budget.epsilon)
    )
    return NoiseScale(sigma, Mechanism.CDP_ROUTE)


def zcdp_of_sigma(sigma: NoiseScale, sens: Sensitivity) -> ZcdpParams:
    """rho-zCDP achieved by Gaussian noise sigma: rho = Delta^2 / (2 sigma^2)."""
    if sigma.sigma <= 0.0:
        raise ValueError("zCDP conversion requires sigma > 0")
    return ZcdpParams(sens.l2 * sens.l2 / (2.0 * sigma.sigma * sigma.sigma))
