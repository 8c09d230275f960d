"""Brute-force Fock-space simulation of the interferometer.

Three modes are tracked: the reference arm ``a`` (index 0), the sample arm
``b`` (index 1) and the environment mode ``env`` (index 2) that absorbs the
photons lost from arm b.  States are sparse maps from occupation triples to
complex amplitudes over normalized Fock kets.

A linear-optics element acts on creation operators,
``x_k^dag -> sum_l M[l, k] x_l^dag`` for the target modes ``k``; applying it to
a ket means expanding the resulting monomials term by term.  Nothing in this
module uses the closed forms of :mod:`noonlab.analytic`, so it can serve as an
independent check on them.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .analytic import CoincidenceDistribution, ProbeConfig

MODE_A, MODE_B, MODE_ENV = 0, 1, 2
N_MODES = 3
DEFAULT_MAX_PHOTONS = 12
UNITARY_TOL = 1e-12


class FockBasisState(NamedTuple):
    n_a: int
    n_b: int
    n_env: int

    @property
    def total(self) -> int:
        return self.n_a + self.n_b + self.n_env


@dataclass(frozen=True)
class PureState:
    """Immutable superposition of Fock kets with a common photon number."""

    amplitudes: Mapping[FockBasisState, complex]

    def __post_init__(self):
        amps = {FockBasisState(*k): complex(v) for k, v in self.amplitudes.items()}
        totals = {k.total for k in amps}
        if len(totals) > 1:
            raise ValueError(f"basis states mix photon numbers {sorted(totals)}")
        if any(min(k) < 0 for k in amps):
            raise ValueError("occupations must be non-negative")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_photons(self) -> int:
        return next(iter(self.amplitudes)).total if self.amplitudes else 0

    def norm(self) -> float:
        return math.sqrt(math.fsum(abs(v) ** 2 for v in self.amplitudes.values()))

    def amplitude(self, n_a: int, n_b: int, n_env: int) -> complex:
        return self.amplitudes.get(FockBasisState(n_a, n_b, n_env), 0j)

    def distance(self, other: "PureState") -> float:
        """Largest entrywise amplitude difference."""
        keys = set(self.amplitudes) | set(other.amplitudes)
        return max((abs(self.amplitudes.get(k, 0j) - other.amplitudes.get(k, 0j)) for k in keys),
                   default=0.0)


@dataclass(frozen=True)
class ModeTransform:
    """Passive linear transform acting on one or two modes.

    Column ``k`` of ``matrix`` is the image of the creation operator of
    ``modes[k]`` expressed on the same modes.
    """

    modes: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        modes = tuple(int(m) for m in self.modes)
        mat = np.array(self.matrix, dtype=complex)
        if len(modes) not in (1, 2) or len(set(modes)) != len(modes):
            raise ValueError(f"a transform targets one or two distinct modes, got {modes}")
        if any(not 0 <= m < N_MODES for m in modes):
            raise ValueError(f"mode indices must be in [0, {N_MODES}), got {modes}")
        if mat.shape != (len(modes), len(modes)):
            raise ValueError(f"matrix shape {mat.shape} does not match {len(modes)} modes")
        err = np.max(np.abs(mat.conj().T @ mat - np.eye(len(modes))))
        if err > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (max deviation {err:.3e})")
        mat.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "matrix", mat)


def phase_transform(phase: float, mode: int = MODE_B) -> ModeTransform:
    return ModeTransform((mode,), [[cmath.exp(1j * phase)]])


def loss_transform(loss: float) -> ModeTransform:
    """Beam-splitter dilation of loss on arm b: ``b^dag -> sqrt(1-p) b^dag + sqrt(p) env^dag``."""
    if not 0.0 <= loss <= 1.0:
        raise ValueError(f"loss must lie in [0, 1], got {loss!r}")
    t, r = math.sqrt(1.0 - loss), math.sqrt(loss)
    return ModeTransform((MODE_B, MODE_ENV), [[t, -r], [r, t]])


def balanced_splitter() -> ModeTransform:
    """``a^dag -> (a^dag + b^dag)/sqrt2``, ``b^dag -> (a^dag - b^dag)/sqrt2``."""
    h = 1.0 / math.sqrt(2.0)
    return ModeTransform((MODE_A, MODE_B), [[h, h], [h, -h]])


def prepare_input(n: int, alpha: float) -> PureState:
    """``sqrt(alpha)|N,0,0> + sqrt(1-alpha)|0,N,0>`` on normalized kets."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    n = int(n)
    amps = {}
    if alpha > 0.0:
        amps[FockBasisState(n, 0, 0)] = complex(math.sqrt(alpha))
    if alpha < 1.0:
        amps[FockBasisState(0, n, 0)] = complex(math.sqrt(1.0 - alpha))
    return PureState(amps)


def _expand_power(column: Sequence[complex], power: int) -> dict[tuple[int, ...], complex]:
    """Coefficients of ``(sum_l column[l] x_l)^power`` keyed by exponent tuples."""
    dim = len(column)
    out: dict[tuple[int, ...], complex] = {}
    for exps in _compositions(power, dim):
        coef = complex(math.factorial(power))
        for c, e in zip(column, exps):
            coef *= c**e / math.factorial(e)
        if coef != 0:
            out[exps] = coef
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def apply_transform(state: PureState, t: ModeTransform) -> PureState:
    """Apply a linear-optics element to every ket of ``state``."""
    dim = len(t.modes)
    columns = [t.matrix[:, k] for k in range(dim)]
    out: dict[FockBasisState, complex] = {}
    for ket, amp in state.amplitudes.items():
        occ_in = [ket[m] for m in t.modes]
        # normalized ket = prod_k (x_k^dag)^n_k / sqrt(n_k!) |0>
        norm_in = math.prod(math.sqrt(math.factorial(n)) for n in occ_in)
        partial = {(0,) * dim: amp / norm_in}
        for k, n_k in enumerate(occ_in):
            if n_k == 0:
                continue
            factor = _expand_power(columns[k], n_k)
            nxt: dict[tuple[int, ...], complex] = {}
            for (e1, c1), (e2, c2) in itertools.product(partial.items(), factor.items()):
                key = tuple(x + y for x, y in zip(e1, e2))
                nxt[key] = nxt.get(key, 0j) + c1 * c2
            partial = nxt
        for exps, coef in partial.items():
            occ = list(ket)
            for m, e in zip(t.modes, exps):
                occ[m] = e
            # (x^dag)^e |0> = sqrt(e!) |e>
            coef *= math.prod(math.sqrt(math.factorial(e)) for e in exps)
            key = FockBasisState(*occ)
            out[key] = out.get(key, 0j) + coef
    return PureState({k: v for k, v in out.items() if v != 0})


def reduced_density_matrix(state: PureState) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Density matrix on arms a and b with the environment traced out.

    Returns the ``(n_a, n_b)`` basis labels and the matrix in that order.
    """
    labels = sorted({(k.n_a, k.n_b) for k in state.amplitudes})
    index = {lab: i for i, lab in enumerate(labels)}
    sectors: dict[int, np.ndarray] = {}
    for k, amp in state.amplitudes.items():
        vec = sectors.setdefault(k.n_env, np.zeros(len(labels), dtype=complex))
        vec[index[(k.n_a, k.n_b)]] += amp
    rho = np.zeros((len(labels), len(labels)), dtype=complex)
    for vec in sectors.values():
        rho += np.outer(vec, vec.conj())
    return labels, rho


def output_state(cfg: ProbeConfig, order: str = "phase-loss") -> PureState:
    """State after phase, loss and the recombining splitter.

    ``order`` selects whether the phase is applied before (``"phase-loss"``)
    or after (``"loss-phase"``) the loss dilation.  The two orders differ only
    by phases on kets with photons in the environment, so they agree once the
    environment is traced out.
    """
    state = prepare_input(cfg.n_photons, cfg.alpha)
    steps = [phase_transform(cfg.phase), loss_transform(cfg.loss)]
    if order == "loss-phase":
        steps.reverse()
    elif order != "phase-loss":
        raise ValueError(f"unknown order {order!r}")
    for step in steps + [balanced_splitter()]:
        state = apply_transform(state, step)
    return state


def simulate(cfg: ProbeConfig, max_photons: int = DEFAULT_MAX_PHOTONS) -> CoincidenceDistribution:
    """N-fold coincidence distribution from the Fock-space simulation.

    Only kets with an empty environment mode carry N detected photons, so
    ``probs[i] = |<i, N-i, 0|out>|^2``.
    """
    n = cfg.n_photons
    if n > max_photons:
        raise ValueError(f"n_photons={n} exceeds the oracle cap of {max_photons}")
    out = output_state(cfg)
    return CoincidenceDistribution(n, tuple(abs(out.amplitude(i, n - i, 0)) ** 2 for i in range(n + 1)))


def oracle_fisher(cfg: ProbeConfig, step: float = 1e-5,
                  max_photons: int = DEFAULT_MAX_PHOTONS) -> float:
    """Normalized Fisher information from central differences of :func:`simulate`.

    Outcomes with probability below 1e-300 at ``cfg.phase`` are skipped.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step!r}")
    n = cfg.n_photons
    at = simulate(cfg, max_photons).probs
    up = simulate(ProbeConfig(n, cfg.alpha, cfg.loss, cfg.phase + step), max_photons).probs
    down = simulate(ProbeConfig(n, cfg.alpha, cfg.loss, cfg.phase - step), max_photons).probs
    terms = []
    for p, hi, lo in zip(at, up, down):
        if p < 1e-300:
            continue
        dp = (hi - lo) / (2.0 * step)
        terms.append(dp * dp / p)
    return math.fsum(terms) / n
