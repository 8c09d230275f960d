"""Numerical optimization, threshold search and regime labels.

The closed-form optima and thresholds of :mod:`noonlab.analytic` are checked
here by searches that only evaluate the objective functions.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, NamedTuple

from . import analytic as an
from . import fock
from .analytic import ProbeConfig

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
LOSS_UPPER = 1.0 - 1e-12


class RegimeLabel(str, enum.Enum):
    NO_ADVANTAGE = "NoAdvantage"
    ADVANTAGE_ONLY = "AdvantageOnly"
    SUPERIORITY = "Superiority"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OptimumReport:
    variable: str
    location_closed_form: float
    location_numeric: float
    value_closed_form: float
    value_numeric: float

    @property
    def discrepancy(self) -> float:
        return abs(self.location_closed_form - self.location_numeric)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["discrepancy"] = self.discrepancy
        return out


class RootResult(NamedTuple):
    root: float
    bracketed: bool
    iterations: int


def golden_section_maximize(compare: Callable[[float, float], float], lo: float, hi: float,
                            tol: float = 1e-10, max_iter: int = 500) -> float:
    """Golden-section search for the maximum of a unimodal function on ``[lo, hi]``.

    ``compare(x1, x2)`` must have the sign of ``f(x1) - f(x2)``.  Passing a
    difference instead of ``f`` lets callers supply a cancellation-free
    form; otherwise use ``lambda x1, x2: f(x1) - f(x2)``.  Iterates until
    the bracket is narrower than ``tol`` and returns its midpoint.
    """
    if not hi > lo:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if compare(x1, x2) > 0:
            hi, x2 = x2, x1
            x1 = hi - INV_PHI * (hi - lo)
        else:
            lo, x1 = x1, x2
            x2 = lo + INV_PHI * (hi - lo)
    return 0.5 * (lo + hi)


def bisect_root(f: Callable[[float], float], lo: float, hi: float,
                tol: float = 1e-10, max_iter: int = 200) -> RootResult:
    """Bisection for a sign change of ``f`` on ``[lo, hi]``.

    Without a sign change the endpoint with the smaller ``|f|`` is returned
    and ``bracketed`` is False.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return RootResult(lo, True, 0)
    if f_hi == 0.0:
        return RootResult(hi, True, 0)
    if (f_lo > 0) == (f_hi > 0):
        return RootResult(lo if abs(f_lo) <= abs(f_hi) else hi, False, 0)
    it = 0
    while hi - lo > tol and it < max_iter:
        it += 1
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return RootResult(mid, True, it)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return RootResult(0.5 * (lo + hi), True, it)


def _check_search_loss(loss: float) -> float:
    loss = float(loss)
    if not 0.0 <= loss < 1.0:
        raise ValueError(f"loss must lie in [0, 1), got {loss!r}")
    return loss


def maximize_fisher_over_alpha(loss: float, n: int) -> OptimumReport:
    loss = _check_search_loss(loss)
    best = golden_section_maximize(
        lambda a1, a2: an.fisher_max_difference(n, a1, a2, loss), 0.0, 1.0)
    return OptimumReport(
        variable="alpha",
        location_closed_form=an.optimal_alpha_for_fisher(loss, n),
        location_numeric=best,
        value_closed_form=an.fisher_at_optimal_alpha(loss, n),
        value_numeric=an.fisher_information_max(n, best, loss),
    )


def maximize_visibility_over_alpha(loss: float, n: int) -> OptimumReport:
    loss = _check_search_loss(loss)
    # larger visibility == smaller deficit
    best = golden_section_maximize(
        lambda a1, a2: an.visibility_deficit(a2, loss, n) - an.visibility_deficit(a1, loss, n),
        0.0, 1.0)
    alpha_v = an.optimal_alpha_for_visibility(loss, n)
    return OptimumReport(
        variable="alpha",
        location_closed_form=alpha_v,
        location_numeric=best,
        value_closed_form=an.visibility(alpha_v, loss, n),
        value_numeric=an.visibility(best, loss, n),
    )


def maximize_visibility_over_loss(alpha: float, n: int) -> OptimumReport:
    """Search the loss that maximizes visibility at fixed ``alpha`` in (0, 1).

    For ``alpha > 1/2`` the closed-form reference is the boundary ``loss = 0``.
    """
    p_v = an.optimal_loss_for_visibility(alpha, n)
    p_ref = 0.0 if p_v is None else p_v
    best = golden_section_maximize(
        lambda p1, p2: an.visibility_deficit(alpha, p2, n) - an.visibility_deficit(alpha, p1, n),
        0.0, 1.0)
    return OptimumReport(
        variable="loss",
        location_closed_form=p_ref,
        location_numeric=best,
        value_closed_form=an.visibility(alpha, p_ref, n),
        value_numeric=an.visibility(alpha, best, n),
    )


def classify_regime(alpha: float, loss: float, n: int) -> RegimeLabel:
    """Label an operating point; boundary points fall on the weaker side."""
    if int(n) != n or n < 2:
        raise ValueError(f"regimes compare N-photon and single-photon probes and need n >= 2, got {n!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    loss = _check_search_loss(loss)
    if an.fisher_information_max(n, alpha, loss) > 1.0:
        return RegimeLabel.SUPERIORITY
    if an.advantage_ratio(alpha, loss, n) > 1.0:
        return RegimeLabel.ADVANTAGE_ONLY
    return RegimeLabel.NO_ADVANTAGE


def _require_bracketed(res: RootResult, what: str) -> float:
    if not res.bracketed:
        raise RuntimeError(f"{what}: no sign change on the search interval")
    return res.root


def find_advantage_threshold(n: int, tol: float = 1e-10) -> float:
    """Loss beyond which the N-photon probe loses its advantage, both probes at optimal alpha."""
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    res = bisect_root(lambda p: an.advantage_ratio_optimal_alpha(p, n) - 1.0, 0.0, LOSS_UPPER, tol)
    return _require_bracketed(res, f"advantage threshold for n={n}")


def find_superiority_threshold(n: int, tol: float = 1e-10) -> float:
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    res = bisect_root(lambda p: an.fisher_at_optimal_alpha(p, n) - 1.0, 0.0, LOSS_UPPER, tol)
    return _require_bracketed(res, f"superiority threshold for n={n}")


def advantage_loss_bound(alpha: float, n: int, tol: float = 1e-12) -> float:
    """Loss at which ``advantage_ratio(alpha, loss, n)`` drops to 1.

    There is no closed form for general N; this is the boundary of the
    advantage region at fixed ``alpha``.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    res = bisect_root(lambda p: an.advantage_ratio(alpha, p, n) - 1.0, 0.0, LOSS_UPPER, tol)
    return _require_bracketed(res, f"advantage bound at alpha={alpha}, n={n}")


@dataclass(frozen=True)
class PointDiscrepancy:
    config: ProbeConfig
    probability_diff: float
    sum_rule_diff: float
    fisher_diff: float | None


def verify_point(cfg: ProbeConfig, fisher_step: float = 1e-5, with_fisher: bool = True,
                 max_photons: int = fock.DEFAULT_MAX_PHOTONS) -> PointDiscrepancy:
    """Compare the Fock-space oracle with the closed forms at one point."""
    sim = fock.simulate(cfg, max_photons)
    ref = an.coincidence_distribution(cfg)
    prob_diff = max(abs(x - y) for x, y in zip(sim.probs, ref.probs))
    sum_diff = abs(sim.total - an.sum_rule(cfg.n_photons, cfg.alpha, cfg.loss))
    fisher_diff = None
    if with_fisher:
        fisher_diff = abs(fock.oracle_fisher(cfg, fisher_step, max_photons) - an.fisher_information(cfg))
    return PointDiscrepancy(cfg, prob_diff, sum_diff, fisher_diff)


VERIFY_ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)
VERIFY_LOSSES = (0.0, 0.1, 0.3, 0.7, 1.0)


def verify_phases(n: int) -> tuple[float, ...]:
    return (0.0, math.pi / 7, math.pi / (2 * n), 1.0)


def verify_grid(max_n: int = 6, alphas=VERIFY_ALPHAS, losses=VERIFY_LOSSES,
                max_photons: int = fock.DEFAULT_MAX_PHOTONS) -> list[PointDiscrepancy]:
    """Oracle-versus-closed-form probabilities on the standard verification grid."""
    if int(max_n) != max_n or max_n < 1:
        raise ValueError(f"max_n must be an integer >= 1, got {max_n!r}")
    if max_n > max_photons:
        raise ValueError(f"max_n={max_n} exceeds the oracle cap of {max_photons}")
    out = []
    for n in range(1, int(max_n) + 1):
        for alpha in alphas:
            for loss in losses:
                for phase in verify_phases(n):
                    out.append(verify_point(ProbeConfig(n, alpha, loss, phase),
                                            with_fisher=False, max_photons=max_photons))
    return out
