"""Gaussian noise calibrations for (eps, delta)-DP and (eps, delta)-pDP.

Covers the two classical calibrations (Dwork-2006/2014), the optimal DP and
pDP noise amounts (bisection solvers with proven brackets), four closed-form
upper-bound mechanisms, the exact DP/pDP privacy profiles delta(sigma), and
the failure frontier G(delta) above which any F(delta)*Delta/eps calibration
stops achieving DP.

Conventions used throughout:

  * Every noise amount has the shape sigma = (u + sqrt(u^2 + eps)) * Delta /
    (eps * sqrt(2)) for some auxiliary root u; for u < 0 this is evaluated in
    the equivalent cancellation-free form Delta / (sqrt(2) * (sqrt(u^2+eps) - u)).
  * Products exp(eps) * erfc(sqrt(u^2 + eps)) are always formed as
    erfcx(sqrt(u^2 + eps)) * exp(-u^2); the exponents cancel exactly, so the
    whole eps range [1e-6, 1e6] works without overflow.
  * Solvers bisect a strictly decreasing residual and return the upper end
    of the final bracket, so the reported sigma errs on the noisy (safe) side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .specfun import erfc, erfcx, inverf, inverfc, inverfc_seed

_SQRT2 = math.sqrt(2.0)

DEFAULT_TOL = 1e-12
_MAX_BISECT_ITERS = 200


class Mechanism(str, Enum):
    """Tags for the nine calibrations, in the fixed table/report order."""

    DWORK2006 = "dwork2006"
    DWORK2014 = "dwork2014"
    DP_OPT = "dp-opt"
    MECH1 = "mech1"
    MECH2 = "mech2"
    PDP_OPT = "pdp-opt"
    MECH3 = "mech3"
    MECH4 = "mech4"
    CDP_ROUTE = "cdp-route"

    def __str__(self) -> str:  # so f-strings print the tag, not the repr
        return self.value


MECHANISM_ORDER: tuple[Mechanism, ...] = tuple(Mechanism)


class ConvergenceError(RuntimeError):
    """A bisection failed to shrink its bracket below tol within the cap."""


class BracketError(RuntimeError):
    """No sign change found while scanning for a root bracket."""


@dataclass(frozen=True)
class PrivacyBudget:
    """An (epsilon, delta) pair; epsilon > 0 and 0 < delta < 1."""

    epsilon: float
    delta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")
        if not (math.isfinite(self.delta) and 0.0 < self.delta < 1.0):
            raise ValueError(f"delta must be in (0, 1), got {self.delta!r}")


@dataclass(frozen=True)
class Sensitivity:
    """The query's l2-sensitivity (max l2 distance of true outputs on
    neighboring datasets)."""

    l2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.l2) and self.l2 >= 0.0):
            raise ValueError(f"l2 sensitivity must be >= 0, got {self.l2!r}")


@dataclass(frozen=True)
class NoiseScale:
    """A Gaussian standard deviation together with the mechanism that
    produced it."""

    sigma: float
    kind: Mechanism

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ValueError(f"sigma must be >= 0, got {self.sigma!r}")


@dataclass(frozen=True)
class CalibrationResult:
    """Solver output: the noise scale plus root-finding telemetry.

    ``bracket_low``/``bracket_high`` record the initial proven bracket;
    ``residual`` is the defining-equation residual at the returned root
    (bounded by (2/sqrt(pi)) * tol).
    """

    noise: NoiseScale
    root: float
    bracket_low: float
    bracket_high: float
    iterations: int
    residual: float


# ---------------------------------------------------------------------------
# shared numerics


def _sigma_from_root(u: float, eps: float, l2: float) -> float:
    # sigma = (u + sqrt(u^2 + eps)) * l2 / (eps * sqrt(2)); for u < 0 use the
    # algebraically identical form without cancellation.
    s = math.sqrt(u * u + eps)
    if u >= 0.0:
        return (u + s) * l2 / (eps * _SQRT2)
    return l2 / (_SQRT2 * (s - u))


def _exp_eps_erfc(u: float, eps: float) -> float:
    # exp(eps) * erfc(sqrt(u^2 + eps)), overflow-safe for any eps.
    return erfcx(math.sqrt(u * u + eps)) * math.exp(-u * u)


def _dp_equation(u: float, eps: float) -> float:
    # r(u) = erfc(u) - exp(eps)*erfc(sqrt(u^2+eps)); strictly decreasing in u.
    return erfc(u) - _exp_eps_erfc(u, eps)


def _pdp_equation(u: float, eps: float) -> float:
    # erfc(u) + erfc(sqrt(u^2+eps)); strictly decreasing in u.
    return erfc(u) + erfc(math.sqrt(u * u + eps))


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    return tol


def _bisect_decreasing(fn, lo: float, hi: float, target: float, tol: float):
    """Bisect fn(u) == target on [lo, hi] where fn is strictly decreasing and
    fn(lo) > target > fn(hi).  Returns (root, iterations); the root is the
    upper end of the final bracket, so fn(root) <= target."""
    iterations = 0
    while hi - lo >= tol:
        if iterations >= _MAX_BISECT_ITERS:
            raise ConvergenceError(
                f"bisection bracket width {hi - lo:.3e} not below tol {tol:.3e} "
                f"after {iterations} iterations"
            )
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # bracket exhausted at float resolution with width still >= tol
            raise ConvergenceError(
                f"tol {tol:.3e} is below float resolution at root {hi!r}"
            )
        value = fn(mid)
        iterations += 1
        if value == target:
            return mid, iterations
        if value > target:
            lo = mid
        else:
            hi = mid
    return hi, iterations


def _zero_sensitivity_result(kind: Mechanism) -> CalibrationResult:
    # Zero-sensitivity queries are exactly answerable: sigma = 0, no solving.
    return CalibrationResult(
        noise=NoiseScale(0.0, kind),
        root=0.0,
        bracket_low=0.0,
        bracket_high=0.0,
        iterations=0,
        residual=0.0,
    )


# ---------------------------------------------------------------------------
# classical calibrations


def sigma_dwork2006(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """sqrt(2 ln(2/delta)) * Delta / eps.

    No DP guarantee is implied for eps > 1; see ``failure_threshold`` for
    the eps beyond which this noise provably fails.
    """
    sigma = math.sqrt(2.0 * math.log(2.0 / budget.delta)) * sens.l2 / budget.epsilon
    return NoiseScale(sigma, Mechanism.DWORK2006)


def sigma_dwork2014(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """sqrt(2 ln(1.25/delta)) * Delta / eps; same eps <= 1 caveat as above."""
    sigma = math.sqrt(2.0 * math.log(1.25 / budget.delta)) * sens.l2 / budget.epsilon
    return NoiseScale(sigma, Mechanism.DWORK2014)


# ---------------------------------------------------------------------------
# privacy profiles


def _dp_delta_unit(sigma_over_l2: float, eps: float) -> float:
    a = (eps * sigma_over_l2 - 0.5 / sigma_over_l2) / _SQRT2
    if a >= 0.0:
        # (1/2) e^{-a^2} (erfcx(a) - erfcx(sqrt(a^2+eps))): the difference of
        # the two decreasing erfcx values is positive by construction, so the
        # profile never goes negative in floating point.
        return 0.5 * math.exp(-a * a) * (erfcx(a) - erfcx(math.sqrt(a * a + eps)))
    return 1.0 - 0.5 * math.exp(-a * a) * (
        erfcx(-a) + erfcx(math.sqrt(a * a + eps))
    )


def _pdp_delta_unit(sigma_over_l2: float, eps: float) -> float:
    lam = (eps * sigma_over_l2 - 0.5 / sigma_over_l2) / _SQRT2
    return 0.5 * _pdp_equation(lam, eps)


def _check_profile_args(sigma: NoiseScale, epsilon: float, sens: Sensitivity) -> float:
    epsilon = float(epsilon)
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if sigma.sigma <= 0.0:
        raise ValueError("delta profile requires sigma > 0")
    if sens.l2 <= 0.0:
        raise ValueError("delta profile requires positive sensitivity")
    return epsilon


def dp_delta_profile(sigma: NoiseScale, epsilon: float, sens: Sensitivity) -> float:
    """Smallest delta for which this sigma achieves (epsilon, delta)-DP.

    Equals (1/2) erfc(a) - (e^eps / 2) erfc(sqrt(a^2 + eps)) with
    a = (eps sigma / Delta - Delta / (2 sigma)) / sqrt(2); strictly
    decreasing in sigma.
    """
    epsilon = _check_profile_args(sigma, epsilon, sens)
    return _dp_delta_unit(sigma.sigma / sens.l2, epsilon)


def pdp_delta_profile(sigma: NoiseScale, epsilon: float, sens: Sensitivity) -> float:
    """Smallest delta for which this sigma achieves (epsilon, delta)-pDP:
    (1/2)[erfc(lam) + erfc(sqrt(lam^2 + eps))]; always >= the DP profile."""
    epsilon = _check_profile_args(sigma, epsilon, sens)
    return _pdp_delta_unit(sigma.sigma / sens.l2, epsilon)


def achieves_dp(sigma: NoiseScale, budget: PrivacyBudget, sens: Sensitivity) -> bool:
    """True iff the DP profile of sigma at budget.epsilon is <= budget.delta
    (non-strict: noise calibrated exactly to the boundary counts)."""
    return dp_delta_profile(sigma, budget.epsilon, sens) <= budget.delta


# ---------------------------------------------------------------------------
# closed-form mechanisms


def _mech1_root(eps: float, delta: float) -> float:
    s = erfcx(math.sqrt(eps))  # = exp(eps) * erfc(sqrt(eps))
    t = 2.0 * delta + s
    if t >= 2.0:
        return 0.0
    u = inverfc(t)
    # ratio exp(eps)*erfc(sqrt(u^2+eps)) / t, with t = erfc(u)
    ratio = _exp_eps_erfc(u, eps) / t
    denom = 1.0 - ratio
    if denom > 0.0:
        arg = 2.0 * delta / denom
        if 0.0 < arg < 2.0:
            return inverfc(arg)
    # Rounding pushed the inner argument out of inverfc's domain (only
    # conceivable for extreme inputs); fall back to the coarser elementary
    # bound, which is a strict upper bound on this root.
    if delta < 0.5:
        return inverfc_seed(2.0 * delta)
    raise ArithmeticError(
        f"mechanism-1 root not computable at eps={eps!r}, delta={delta!r}"
    )


def sigma_mech1(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """Closed-form upper bound on the optimal DP noise (erfc/inverfc based).

    b = inverfc(2 delta / (1 - e^eps erfc(sqrt(u^2+eps)) / (2 delta +
    e^eps erfc(sqrt(eps))))) with u = inverfc(2 delta + e^eps erfc(sqrt(eps)))
    when 2 - e^eps erfc(sqrt(eps)) > 2 delta, else b = 0; then
    sigma = (b + sqrt(b^2 + eps)) Delta / (eps sqrt(2)).
    """
    if sens.l2 == 0.0:
        return NoiseScale(0.0, Mechanism.MECH1)
    b = _mech1_root(budget.epsilon, budget.delta)
    return NoiseScale(_sigma_from_root(b, budget.epsilon, sens.l2), Mechanism.MECH1)


def sigma_mech2(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """Elementary-function upper bound, valid for delta < 0.5:
    c = sqrt(ln(2/(sqrt(16 delta + 1) - 1)))."""
    if budget.delta >= 0.5:
        raise ValueError(
            f"mechanism 2 requires delta < 0.5, got delta={budget.delta!r}"
        )
    if sens.l2 == 0.0:
        return NoiseScale(0.0, Mechanism.MECH2)
    c = inverfc_seed(2.0 * budget.delta)
    return NoiseScale(_sigma_from_root(c, budget.epsilon, sens.l2), Mechanism.MECH2)


def sigma_mech3(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """Closed-form upper bound on the optimal pDP noise: f = inverfc(delta)."""
    if sens.l2 == 0.0:
        return NoiseScale(0.0, Mechanism.MECH3)
    f = inverfc(budget.delta)
    return NoiseScale(_sigma_from_root(f, budget.epsilon, sens.l2), Mechanism.MECH3)


def sigma_mech4(budget: PrivacyBudget, sens: Sensitivity) -> NoiseScale:
    """Elementary-function upper bound on the optimal pDP noise:
    g = sqrt(ln(2/(sqrt(8 delta + 1) - 1))); valid for all delta in (0, 1)."""
    if sens.l2 == 0.0:
        return NoiseScale(0.0, Mechanism.MECH4)
    g = inverfc_seed(budget.delta)
    return NoiseScale(_sigma_from_root(g, budget.epsilon, sens.l2), Mechanism.MECH4)


def dp_opt_zero_eps(delta: float, sens: Sensitivity) -> NoiseScale:
    """Optimal Gaussian noise for (0, delta)-DP: Delta / (2 sqrt(2) inverf(delta)).

    A strict, eps-independent upper bound on the optimal (eps, delta)-DP noise
    for every eps > 0, attained in the limit eps -> 0.
    """
    delta = float(delta)
    if not (math.isfinite(delta) and 0.0 < delta < 1.0):
        raise ValueError(f"delta must be in (0, 1), got {delta!r}")
    if sens.l2 == 0.0:
        return NoiseScale(0.0, Mechanism.DP_OPT)
    sigma = sens.l2 / (2.0 * _SQRT2 * inverf(delta))
    return NoiseScale(sigma, Mechanism.DP_OPT)


# ---------------------------------------------------------------------------
# optimal-noise solvers


def solve_dp_opt(
    budget: PrivacyBudget, sens: Sensitivity, tol: float = DEFAULT_TOL
) -> CalibrationResult:
    """Optimal (least) Gaussian noise for (eps, delta)-DP.

    Solves erfc(a) - e^eps erfc(sqrt(a^2 + eps)) = 2 delta by bisection and
    returns sigma = (a + sqrt(a^2 + eps)) Delta / (eps sqrt(2)).  The bracket
    follows the sign of diff = 1 - e^eps erfc(sqrt(eps)) - 2 delta:
    a = 0 when diff == 0, (0, b] with the mechanism-1 root b when diff > 0,
    and [-inverfc((2 - 2 delta)/(e^eps + 1)), 0) when diff < 0.
    """
    tol = _check_tol(tol)
    if sens.l2 == 0.0:
        return _zero_sensitivity_result(Mechanism.DP_OPT)
    eps, delta = budget.epsilon, budget.delta
    target = 2.0 * delta
    diff = 1.0 - erfcx(math.sqrt(eps)) - target

    if diff == 0.0:
        root, lo, hi, iterations = 0.0, 0.0, 0.0, 0
    elif diff > 0.0:
        lo, hi = 0.0, _mech1_root(eps, delta)
        root, iterations = _bisect_decreasing(
            lambda u: _dp_equation(u, eps), lo, hi, target, tol
        )
    else:
        lo, hi = -_negative_branch_lower_bound(eps, delta, target), 0.0
        root, iterations = _bisect_decreasing(
            lambda u: _dp_equation(u, eps), lo, hi, target, tol
        )

    return CalibrationResult(
        noise=NoiseScale(_sigma_from_root(root, eps, sens.l2), Mechanism.DP_OPT),
        root=root,
        bracket_low=lo,
        bracket_high=hi,
        iterations=iterations,
        residual=_dp_equation(root, eps) - target,
    )


def _negative_branch_lower_bound(eps: float, delta: float, target: float) -> float:
    # Proven bound |a| < inverfc((2 - 2 delta)/(e^eps + 1)); if e^eps
    # overflows (possible only for delta > 0.5 at enormous eps) widen
    # geometrically instead.
    if eps < 700.0:
        return inverfc((2.0 - 2.0 * delta) / (math.exp(eps) + 1.0))
    lo = 1.0
    while _dp_equation(-lo, eps) <= target and lo < 40.0:
        lo *= 2.0
    return lo


def solve_pdp_opt(
    budget: PrivacyBudget, sens: Sensitivity, tol: float = DEFAULT_TOL
) -> CalibrationResult:
    """Optimal (least) Gaussian noise for (eps, delta)-pDP.

    Solves erfc(d) + erfc(sqrt(d^2 + eps)) = 2 delta by bisection on the
    proven bracket (inverfc(2 delta), inverfc(delta)).
    """
    tol = _check_tol(tol)
    if sens.l2 == 0.0:
        return _zero_sensitivity_result(Mechanism.PDP_OPT)
    eps, delta = budget.epsilon, budget.delta
    target = 2.0 * delta
    lo = inverfc(target)
    hi = inverfc(delta)
    root, iterations = _bisect_decreasing(
        lambda u: _pdp_equation(u, eps), lo, hi, target, tol
    )
    return CalibrationResult(
        noise=NoiseScale(_sigma_from_root(root, eps, sens.l2), Mechanism.PDP_OPT),
        root=root,
        bracket_low=lo,
        bracket_high=hi,
        iterations=iterations,
        residual=_pdp_equation(root, eps) - target,
    )


# ---------------------------------------------------------------------------
# failure frontier of F(delta) * Delta / eps calibrations


def failure_threshold(f_of_delta: float, delta: float, tol: float = 1e-6) -> float:
    """The eps at which noise F(delta) * Delta / eps crosses the optimal DP
    noise from above; beyond it the calibration cannot achieve (eps, delta)-DP.

    ``f_of_delta`` is the multiplier F(delta) itself, e.g.
    sqrt(2 ln(1.25/delta)) for Dwork-2014.  The crossing is Delta-independent
    (both sides are linear in Delta), so it is solved at Delta = 1 by
    bisection on h(eps) = F(delta)/eps - sigma_dp_opt(eps, delta, 1).
    """
    f_of_delta = float(f_of_delta)
    if not (math.isfinite(f_of_delta) and f_of_delta > 0.0):
        raise ValueError(f"F(delta) must be positive, got {f_of_delta!r}")
    delta = float(delta)
    if not (math.isfinite(delta) and 0.0 < delta < 1.0):
        raise ValueError(f"delta must be in (0, 1), got {delta!r}")
    tol = _check_tol(tol)

    unit = Sensitivity(1.0)

    def gap(eps: float) -> float:
        sigma_opt = solve_dp_opt(PrivacyBudget(eps, delta), unit).noise.sigma
        return f_of_delta / eps - sigma_opt

    # geometric pre-scan for the sign change; the crossing exists for every
    # delta but has no a-priori bound, hence the wide window
    lo, hi = 1e-3, 1e4
    step = 10.0 ** 0.25
    prev_eps, prev_gap = lo, gap(lo)
    if prev_gap <= 0.0:
        raise BracketError(
            f"no positive gap at eps={lo}; F(delta)={f_of_delta} too small?"
        )
    eps = lo
    while eps < hi:
        eps = min(eps * step, hi)
        g = gap(eps)
        if g <= 0.0:
            lo, hi = prev_eps, eps
            break
        prev_eps, prev_gap = eps, g
    else:
        raise BracketError(
            f"no sign change of F(delta)/eps - sigma_opt in eps in [1e-3, 1e4]"
        )

    iterations = 0
    while hi - lo >= tol:
        if iterations >= _MAX_BISECT_ITERS:
            raise ConvergenceError(
                f"failure_threshold bracket width {hi - lo:.3e} not below "
                f"tol {tol:.3e}"
            )
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise ConvergenceError(
                f"tol {tol:.3e} is below float resolution at eps {hi!r}"
            )
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# dispatcher


def calibrate(
    kind: Mechanism,
    budget: PrivacyBudget,
    sens: Sensitivity,
    tol: float = DEFAULT_TOL,
) -> NoiseScale:
    """Calibrated noise scale for any mechanism tag (solvers included)."""
    kind = Mechanism(kind)
    if kind is Mechanism.DWORK2006:
        return sigma_dwork2006(budget, sens)
    if kind is Mechanism.DWORK2014:
        return sigma_dwork2014(budget, sens)
    if kind is Mechanism.DP_OPT:
        return solve_dp_opt(budget, sens, tol).noise
    if kind is Mechanism.MECH1:
        return sigma_mech1(budget, sens)
    if kind is Mechanism.MECH2:
        return sigma_mech2(budget, sens)
    if kind is Mechanism.PDP_OPT:
        return solve_pdp_opt(budget, sens, tol).noise
    if kind is Mechanism.MECH3:
        return sigma_mech3(budget, sens)
    if kind is Mechanism.MECH4:
        return sigma_mech4(budget, sens)
    if kind is Mechanism.CDP_ROUTE:
        from .relations import sigma_via_cdp_route

        return sigma_via_cdp_route(budget, sens)
    raise ValueError(f"unknown mechanism {kind!r}")
