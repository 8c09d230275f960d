"""Closed-form model of a lossy, partially entangled N00N interferometer.

The probe is ``sqrt(alpha)|N,0> + sqrt(1-alpha)|0,N>`` on the reference arm
``a`` and the sample arm ``b``.  Arm ``b`` picks up a phase ``phase`` and a
loss probability ``loss`` before both arms are recombined on a balanced
beam splitter and N-fold coincidences are recorded.

Every function here is a pure function of floats.  Argument order follows the
public contract of each function, so prefer keyword arguments when calling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ProbeConfig",
    "NoonCoefficients",
    "FringeDescriptor",
    "CoincidenceDistribution",
    "noon_coefficients",
    "fringe_descriptor",
    "detection_probability",
    "coincidence_distribution",
    "sum_rule",
    "visibility",
    "visibility_deficit",
    "optimal_alpha_for_visibility",
    "optimal_loss_for_visibility",
    "fisher_information",
    "fisher_information_max",
    "fisher_max_difference",
    "fisher_loss_derivative",
    "fisher_alpha_derivative",
    "optimal_alpha_for_fisher",
    "fisher_at_optimal_alpha",
    "superiority_loss_bound",
    "advantage_ratio",
    "superiority_alpha_interval_lossless",
    "superiority_loss_bound_optimal_alpha",
    "advantage_ratio_optimal_alpha",
    "advantage_loss_threshold_two_photon",
    "duality_alpha",
]


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n_photons must be an integer >= 1, got {n!r}")
    return int(n)


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def _check_open_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in the open interval (0, 1), got {value!r}")
    return value


def _check_loss_below_one(loss: float) -> float:
    loss = _check_unit("loss", loss)
    if loss == 1.0:
        raise ValueError("loss must be < 1: every photon in arm b is lost and the ratio is undefined")
    return loss


@dataclass(frozen=True)
class ProbeConfig:
    """One operating point of the interferometer.

    ``n_photons`` is the photon number N, ``alpha`` the weight of the
    reference-arm component, ``loss`` the loss probability of arm b and
    ``phase`` the relative phase in radians.
    """

    n_photons: int
    alpha: float
    loss: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n_photons", _check_n(self.n_photons))
        object.__setattr__(self, "alpha", _check_unit("alpha", self.alpha))
        object.__setattr__(self, "loss", _check_unit("loss", self.loss))
        phase = float(self.phase)
        if not math.isfinite(phase):
            raise ValueError(f"phase must be finite, got {phase!r}")
        object.__setattr__(self, "phase", phase)


@dataclass(frozen=True)
class NoonCoefficients:
    c_n: float
    d_n: float


@dataclass(frozen=True)
class FringeDescriptor:
    amplitude_a: float
    visibility_v: float


@dataclass(frozen=True)
class CoincidenceDistribution:
    """Probabilities of the N-fold coincidences.

    ``probs[i]`` is the probability of ``i`` photons in output mode a and
    ``n_photons - i`` in output mode b.
    """

    n_photons: int
    probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(x) for x in self.probs))
        if len(self.probs) != self.n_photons + 1:
            raise ValueError(
                f"expected {self.n_photons + 1} probabilities, got {len(self.probs)}"
            )

    @property
    def total(self) -> float:
        return math.fsum(self.probs)


def _transmitted(loss: float, power: float) -> float:
    return (1.0 - loss) ** power


def noon_coefficients(cfg: ProbeConfig) -> NoonCoefficients:
    """Output amplitudes of the ``(a+b)^N`` and ``(a-b)^N`` branches."""
    n = cfg.n_photons
    scale = 2.0 ** (-n / 2)
    c_n = math.sqrt(cfg.alpha) * scale
    d_n = math.sqrt(1.0 - cfg.alpha) * _transmitted(cfg.loss, n / 2) * scale
    return NoonCoefficients(c_n, d_n)


def fringe_descriptor(cfg: ProbeConfig) -> FringeDescriptor:
    coef = noon_coefficients(cfg)
    amp = coef.c_n**2 + coef.d_n**2
    if amp == 0.0:
        return FringeDescriptor(0.0, 0.0)
    vis = min(2.0 * coef.c_n * coef.d_n / amp, 1.0)
    return FringeDescriptor(amp, vis)


def detection_probability(cfg: ProbeConfig, i: int) -> float:
    """Probability of ``i`` photons in mode a and ``N - i`` in mode b."""
    n = cfg.n_photons
    if isinstance(i, bool) or int(i) != i or not 0 <= i <= n:
        raise ValueError(f"output count i must be an integer in [0, {n}], got {i!r}")
    i = int(i)
    fringe = fringe_descriptor(cfg)
    sign = -1.0 if (n - i) % 2 else 1.0
    return math.comb(n, i) * fringe.amplitude_a * (
        1.0 + sign * fringe.visibility_v * math.cos(n * cfg.phase)
    )


def coincidence_distribution(cfg: ProbeConfig) -> CoincidenceDistribution:
    n = cfg.n_photons
    return CoincidenceDistribution(
        n, tuple(detection_probability(cfg, i) for i in range(n + 1))
    )


def sum_rule(n: int, alpha: float, loss: float) -> float:
    """Total N-fold coincidence probability, ``alpha + (1-alpha)(1-loss)^N``."""
    n = _check_n(n)
    alpha = _check_unit("alpha", alpha)
    loss = _check_unit("loss", loss)
    return alpha + (1.0 - alpha) * _transmitted(loss, n)


def visibility(alpha: float, loss: float, n: int) -> float:
    """N-photon fringe visibility; 0 when no photon can be detected."""
    n = _check_n(n)
    alpha = _check_unit("alpha", alpha)
    loss = _check_unit("loss", loss)
    denom = alpha + (1.0 - alpha) * _transmitted(loss, n)
    if denom == 0.0:
        return 0.0
    v = 2.0 * math.sqrt(alpha * (1.0 - alpha)) * _transmitted(loss, n / 2) / denom
    return min(v, 1.0)


def visibility_deficit(alpha: float, loss: float, n: int) -> float:
    """``1 - visibility`` evaluated as ``(C - D)^2 / (C^2 + D^2)``.

    This form has no cancellation near unit visibility, which is what a
    numerical maximizer needs to resolve the optimum below ``sqrt(eps)``.
    """
    coef = noon_coefficients(ProbeConfig(n, alpha, loss))
    amp = coef.c_n**2 + coef.d_n**2
    if amp == 0.0:
        return 1.0
    return (coef.c_n - coef.d_n) ** 2 / amp


def optimal_alpha_for_visibility(loss: float, n: int) -> float:
    n = _check_n(n)
    t = _transmitted(_check_unit("loss", loss), n)
    return t / (1.0 + t)


def optimal_loss_for_visibility(alpha: float, n: int) -> float | None:
    """Loss that restores unit visibility at fixed ``alpha``.

    Returns None for ``alpha > 1/2``: the stationary point would be a negative
    loss, and on ``[0, 1]`` the visibility is then largest at zero loss.
    """
    n = _check_n(n)
    alpha = _check_open_unit("alpha", alpha)
    if alpha > 0.5:
        return None
    return 1.0 - (alpha / (1.0 - alpha)) ** (1.0 / n)


def fisher_information(cfg: ProbeConfig) -> float:
    """Normalized Fisher information of the coincidence measurement at ``cfg.phase``.

    Evaluates ``N 2^N A V^2 sin^2(N phase) / (1 - V^2 cos^2(N phase))``.  With
    ``1 - V^2 = (C^2 - D^2)^2 / A^2`` the expression becomes
    ``N 2^N 4 C^2 D^2 A s^2 / (A^2 s^2 + c^2 (C^2 - D^2)^2)``, which stays
    finite on the V = 1 fringe zeros; there the limit ``N 2^N A`` is returned.
    """
    n = cfg.n_photons
    coef = noon_coefficients(cfg)
    c2, d2 = coef.c_n**2, coef.d_n**2
    amp = c2 + d2
    if amp == 0.0:
        return 0.0
    s = math.sin(n * cfg.phase)
    c = math.cos(n * cfg.phase)
    num = 4.0 * c2 * d2 * amp * s * s
    den = amp * amp * s * s + c * c * (c2 - d2) ** 2
    if den == 0.0:
        # s == 0 and C == D: unit-visibility fringe, phase independent
        return n * 2.0**n * amp
    return n * 2.0**n * num / den


def fisher_information_max(n: int, alpha: float, loss: float) -> float:
    """Fisher information on the steepest point of the fringe, ``phase = pi / (2N)``."""
    n = _check_n(n)
    alpha = _check_unit("alpha", alpha)
    loss = _check_unit("loss", loss)
    t = _transmitted(loss, n)
    denom = alpha + (1.0 - alpha) * t
    if denom == 0.0:
        return 0.0
    return 4.0 * n * (alpha - alpha * alpha) * t / denom


def fisher_max_difference(n: int, alpha_1: float, alpha_2: float, loss: float) -> float:
    """``fisher_information_max(n, alpha_1, loss) - fisher_information_max(n, alpha_2, loss)``.

    Uses the factorization
    ``4 N t (a1 - a2) [(1 - a1)(1 - a2) t - a1 a2] / (h(a1) h(a2))`` with
    ``h(a) = a + (1 - a) t`` so the sign is reliable even when both points sit
    on the flat top of the curve.
    """
    n = _check_n(n)
    a1 = _check_unit("alpha_1", alpha_1)
    a2 = _check_unit("alpha_2", alpha_2)
    t = _transmitted(_check_unit("loss", loss), n)
    h1 = a1 + (1.0 - a1) * t
    h2 = a2 + (1.0 - a2) * t
    if h1 == 0.0 or h2 == 0.0:
        return fisher_information_max(n, a1, loss) - fisher_information_max(n, a2, loss)
    return 4.0 * n * t * (a1 - a2) * ((1.0 - a1) * (1.0 - a2) * t - a1 * a2) / (h1 * h2)


def fisher_loss_derivative(n: int, alpha: float, loss: float) -> float:
    """Partial derivative of :func:`fisher_information_max` with respect to loss."""
    n = _check_n(n)
    alpha = _check_unit("alpha", alpha)
    loss = _check_loss_below_one(loss)
    denom = alpha + (1.0 - alpha) * _transmitted(loss, n)
    return (
        -4.0 * n * n * alpha * alpha * (1.0 - alpha) * _transmitted(loss, n - 1)
        / denom**2
    )


def fisher_alpha_derivative(n: int, alpha: float, loss: float) -> float:
    n = _check_n(n)
    alpha = _check_unit("alpha", alpha)
    t = _transmitted(_check_unit("loss", loss), n)
    denom = (1.0 - alpha) * t + alpha
    if denom == 0.0:
        return 0.0
    return 4.0 * n * t * ((1.0 - alpha) ** 2 * t - alpha * alpha) / denom**2


def optimal_alpha_for_fisher(loss: float, n: int) -> float:
    n = _check_n(n)
    r = _transmitted(_check_unit("loss", loss), n / 2)
    return r / (1.0 + r)


def fisher_at_optimal_alpha(loss: float, n: int) -> float:
    n = _check_n(n)
    loss = _check_unit("loss", loss)
    return 4.0 * n * _transmitted(loss, n) / (1.0 + _transmitted(loss, n / 2)) ** 2


def superiority_loss_bound(alpha: float, n: int) -> float | None:
    """Largest loss with Fisher information above the shot-noise value 1.

    None when no loss, not even zero, gives superiority at this ``alpha``.
    """
    n = _check_n(n)
    alpha = _check_open_unit("alpha", alpha)
    gain = 4.0 * alpha * n - 1.0
    if gain <= 0.0:
        return None
    ratio = alpha / ((1.0 - alpha) * gain)
    if ratio >= 1.0:
        return None
    return 1.0 - ratio ** (1.0 / n)


def advantage_ratio(alpha: float, loss: float, n: int) -> float:
    """Fisher information of the N-photon probe over the single-photon probe, same alpha and loss."""
    n = _check_n(n)
    alpha = _check_open_unit("alpha", alpha)
    loss = _check_loss_below_one(loss)
    return (
        n * _transmitted(loss, n - 1) * (1.0 + loss * (alpha - 1.0))
        / (alpha + (1.0 - alpha) * _transmitted(loss, n))
    )


def superiority_alpha_interval_lossless(n: int) -> tuple[float, float] | None:
    """Interval of ``alpha`` beating the shot-noise value at zero loss.

    The boundaries themselves only reach F = 1, so for N = 1 (zero-width
    interval) None is returned.
    """
    n = _check_n(n)
    if n == 1:
        return None
    half = math.sqrt(n * n - n) / (2.0 * n)
    return (0.5 - half, 0.5 + half)


def superiority_loss_bound_optimal_alpha(n: int) -> float:
    n = _check_n(n)
    return 1.0 - ((1.0 + 2.0 * math.sqrt(n)) / (4.0 * n - 1.0)) ** (2.0 / n)


def advantage_ratio_optimal_alpha(loss: float, n: int) -> float:
    """Advantage ratio when each probe runs at its own Fisher-optimal alpha."""
    n = _check_n(n)
    loss = _check_loss_below_one(loss)
    return (
        n * (1.0 + math.sqrt(1.0 - loss)) ** 2 * _transmitted(loss, n - 1)
        / (1.0 + _transmitted(loss, n / 2)) ** 2
    )


def advantage_loss_threshold_two_photon() -> float:
    """Loss at which photon pairs stop outperforming single photons (both at optimal alpha)."""
    root2 = math.sqrt(2.0)
    return math.sqrt(31.0 + 22.0 * root2) - 3.0 * (1.0 + root2)


def duality_alpha(loss: float, n: int) -> tuple[float, float]:
    """``(optimal_alpha_for_visibility(loss, n), optimal_alpha_for_fisher(loss, 2n))``; equal by identity."""
    return optimal_alpha_for_visibility(loss, n), optimal_alpha_for_fisher(loss, 2 * _check_n(n))
