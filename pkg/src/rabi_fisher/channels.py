"""Noise processes acting on joint oscillator-qubit states.

Every channel is trace preserving and completely positive; qubit maps are
implemented through their exact Kraus decompositions, oscillator thermal
contact through fixed-step RK4 on the Lindblad equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import gammaln, roots_hermite

from .fock import (
    Operator,
    QuantumState,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    annihilation,
    displacement,
)


class StabilityContractError(ValueError):
    """The requested Lindblad step count violates the stability contract."""


class NodeCountError(ValueError):
    """Too few quadrature nodes for the Gaussian displacement average."""


@dataclass(frozen=True)
class HeatingSpec:
    """Oscillator thermal contact: bath occupation, rate, contact time."""

    nbar_th: float
    gamma_th: float
    t_th: float
    exposure: float | None = None  # total contact duration; defaults to t_th

    def __post_init__(self):
        if self.nbar_th < 0 or self.gamma_th < 0 or self.t_th < 0:
            raise ValueError("heating parameters must be non-negative")

    @property
    def duration(self) -> float:
        return self.t_th if self.exposure is None else self.exposure


@dataclass(frozen=True)
class QubitHeatingSpec:
    gamma: float
    t_prime: float

    def __post_init__(self):
        if self.gamma < 0 or self.t_prime < 0:
            raise ValueError("qubit heating parameters must be non-negative")


@dataclass(frozen=True)
class JitterSpec:
    """Gaussian-distributed displacement signal widths."""

    sigma_r: float = 0.0
    sigma_i: float = 0.0
    nodes: int = 41

    def __post_init__(self):
        if self.sigma_r < 0 or self.sigma_i < 0:
            raise ValueError("jitter widths must be non-negative")


@dataclass(frozen=True)
class NoiseModel:
    """Collection of noise processes; default-constructed means noise free."""

    dephasing_p: float = 0.0
    heating: HeatingSpec | None = None
    loss_eta: float = 1.0
    qubit_heating: QubitHeatingSpec | None = None
    relaxation_q: float = 1.0
    signal_jitter: JitterSpec | None = None
    # placement knobs; defaults reproduce the closed forms this package
    # validates against (see channels tests)
    dephasing_concurrent: bool = False
    concurrency_slices: int = 20
    qubit_noise_position: str = "pre-detection"  # or "mid-circuit"

    def __post_init__(self):
        if not 0.0 <= self.dephasing_p <= 1.0:
            raise ValueError(f"dephasing p must be in [0, 1], got {self.dephasing_p}")
        if not 0.0 < self.loss_eta <= 1.0:
            raise ValueError(f"loss eta must be in (0, 1], got {self.loss_eta}")
        if not 0.0 < self.relaxation_q <= 1.0:
            raise ValueError(f"relaxation q must be in (0, 1], got {self.relaxation_q}")
        if self.qubit_noise_position not in ("pre-detection", "mid-circuit"):
            raise ValueError(f"unknown qubit noise position {self.qubit_noise_position!r}")

    @property
    def is_trivial(self) -> bool:
        return (
            self.dephasing_p == 0.0
            and self.heating is None
            and self.loss_eta == 1.0
            and self.qubit_heating is None
            and self.relaxation_q == 1.0
            and self.signal_jitter is None
        )


# ----------------------------------------------------------------------------
# generic subsystem Kraus application


def _apply_kraus_axis(rho: np.ndarray, dims: tuple[int, ...], axis: int, kraus) -> np.ndarray:
    """Apply sum_k K rho K^dag with K acting on one subsystem axis."""
    n = len(dims)
    d = dims[axis]
    rest = int(np.prod(dims)) // d
    r4 = rho.reshape(dims + dims)
    # bring the target row/col axes to the front of their halves
    perm = [axis] + [i for i in range(n) if i != axis]
    perm = perm + [p + n for p in perm]
    r4 = np.transpose(r4, perm).reshape(d, rest, d, rest)
    out = np.zeros_like(r4)
    for k in kraus:
        out += np.einsum("ab,bicj,dc->aidj", k, r4, k.conj(), optimize=True)
    # undo the permutation
    inv = np.argsort(perm)
    shuffled_dims = tuple(dims[p] for p in perm[:n])
    out = out.reshape(shuffled_dims + shuffled_dims)
    out = np.transpose(out, inv)
    return out.reshape(rho.shape)


def apply_subsystem_kraus(state: QuantumState, subsystem: int, kraus) -> QuantumState:
    dims = state.layout.subsystem_dims
    if not 0 <= subsystem < len(dims):
        raise IndexError(f"subsystem {subsystem} out of range")
    rho = _apply_kraus_axis(np.array(state.rho), dims, subsystem, kraus)
    return QuantumState(state.layout, rho, _validate=False)


def _qubit_axis(state: QuantumState, qubit_index: int) -> int:
    return state.layout.qubit_axis(qubit_index)


# ----------------------------------------------------------------------------
# qubit channels


def qubit_dephasing(state: QuantumState, qubit_index: int, p: float) -> QuantumState:
    """Gamma_d^(p): rho -> (1 - p/2) rho + (p/2) Z rho Z on one qubit."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if p == 0.0:
        return state
    kraus = [math.sqrt(1 - p / 2) * np.eye(2), math.sqrt(p / 2) * SIGMA_Z]
    return apply_subsystem_kraus(state, _qubit_axis(state, qubit_index), kraus)


def qubit_heating(state: QuantumState, qubit_index: int, gamma: float, t_prime: float) -> QuantumState:
    """Symmetric qubit thermalization, L_{1,2} = sqrt(gamma) sigma_-/+.

    Coherences decay by exp(-gamma t'), populations relax toward 1/2 with
    exp(-2 gamma t').
    """
    if gamma < 0 or t_prime < 0:
        raise ValueError("gamma and t_prime must be non-negative")
    x = gamma * t_prime
    if x == 0.0:
        return state
    e1, e2 = math.exp(-x), math.exp(-2 * x)
    p_i = (1 + 2 * e1 + e2) / 4
    p_xy = (1 - e2) / 4
    p_z = (1 - 2 * e1 + e2) / 4
    kraus = [
        math.sqrt(p_i) * np.eye(2),
        math.sqrt(p_xy) * SIGMA_X,
        math.sqrt(p_xy) * SIGMA_Y,
        math.sqrt(p_z) * SIGMA_Z,
    ]
    return apply_subsystem_kraus(state, _qubit_axis(state, qubit_index), kraus)


def qubit_relaxation(state: QuantumState, qubit_index: int, q: float) -> QuantumState:
    """Spontaneous emission with q = exp(-gamma t_relax / 2).

    Excited population scales by q^2, coherences by q.
    """
    if not 0.0 < q <= 1.0:
        raise ValueError(f"q must be in (0, 1], got {q}")
    if q == 1.0:
        return state
    k0 = np.array([[q, 0], [0, 1]], dtype=complex)
    k1 = np.array([[0, 0], [math.sqrt(1 - q * q), 0]], dtype=complex)
    return apply_subsystem_kraus(state, _qubit_axis(state, qubit_index), [k0, k1])


# ----------------------------------------------------------------------------
# Lindblad evolution


def _max_op_norm(ops) -> float:
    worst = 0.0
    for L in ops:
        ldl = L.conj().T @ L
        worst = max(worst, float(scipy.linalg.eigvalsh(ldl)[-1]))
    return worst


def _rk4_lindblad(blocks: np.ndarray, ops, duration: float, steps: int) -> np.ndarray:
    """RK4 on d rho = sum_i L rho L^dag - 1/2 {L^dag L, rho} for stacked blocks."""
    mats = [np.asarray(L) for L in ops]
    anti = sum(L.conj().T @ L for L in mats)

    def rhs(r):
        out = -0.5 * (anti @ r + r @ anti)
        for L in mats:
            out += L @ r @ L.conj().T
        return out

    dt = duration / steps
    r = blocks.copy()
    for _ in range(steps):
        k1 = rhs(r)
        k2 = rhs(r + 0.5 * dt * k1)
        k3 = rhs(r + 0.5 * dt * k2)
        k4 = rhs(r + dt * k3)
        r = r + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return r


def lindblad_evolve(
    state: QuantumState,
    lindblad_ops: list[Operator],
    duration: float,
    steps: int | None = None,
) -> QuantumState:
    """Evolve under the pure-dissipator master equation for ``duration``."""
    if not lindblad_ops or duration == 0.0:
        return state
    mats = [op.mat for op in lindblad_ops]
    for op in lindblad_ops:
        if op.layout != state.layout:
            raise ValueError("Lindblad operator layout does not match the state")
    worst = _max_op_norm(mats)
    min_steps = max(1, math.ceil(duration * worst / 0.05))
    if steps is None:
        steps = min_steps
    elif steps < min_steps:
        raise StabilityContractError(
            f"steps={steps} violates duration*max||LdL||/steps <= 0.05 "
            f"(need >= {min_steps})"
        )
    rho = _rk4_lindblad(np.array(state.rho)[None, :, :], mats, duration, steps)[0]
    rho = 0.5 * (rho + rho.conj().T)
    return QuantumState(state.layout, rho, _validate=False)


def oscillator_heating(
    state: QuantumState,
    nbar_th: float,
    gamma_th: float,
    t_th: float,
    steps: int | None = None,
) -> QuantumState:
    """Thermal contact L1 = sqrt(gamma (nbar+1)) a, L2 = sqrt(gamma nbar) a^dag.

    The dissipator acts on the oscillator only, so the joint density matrix
    evolves block-wise over the qubit indices; blocks are propagated together.
    """
    if nbar_th < 0 or gamma_th < 0 or t_th < 0:
        raise ValueError("heating parameters must be non-negative")
    if gamma_th == 0.0 or t_th == 0.0:
        return state
    dims = state.layout.subsystem_dims
    nosc = dims[0]
    rest = state.layout.total_dim // nosc
    a = annihilation(nosc).mat
    ops = [math.sqrt(gamma_th * (nbar_th + 1)) * a]
    if nbar_th > 0:
        ops.append(math.sqrt(gamma_th * nbar_th) * a.conj().T)
    worst = _max_op_norm(ops)
    min_steps = max(1, math.ceil(t_th * worst / 0.05))
    if steps is None:
        steps = min_steps
    elif steps < min_steps:
        raise StabilityContractError(
            f"steps={steps} violates duration*max||LdL||/steps <= 0.05 "
            f"(need >= {min_steps})"
        )
    # (osc, rest, osc, rest) -> (rest, rest, osc, osc) stacked blocks
    r4 = np.array(state.rho).reshape(nosc, rest, nosc, rest).transpose(1, 3, 0, 2)
    blocks = r4.reshape(rest * rest, nosc, nosc)
    blocks = _rk4_lindblad(blocks, ops, t_th, steps)
    rho = blocks.reshape(rest, rest, nosc, nosc).transpose(2, 0, 3, 1)
    rho = rho.reshape(state.layout.total_dim, state.layout.total_dim)
    rho = 0.5 * (rho + rho.conj().T)
    return QuantumState(state.layout, rho, _validate=False)


def oscillator_loss(state: QuantumState, eta: float) -> QuantumState:
    """Bosonic loss channel; coherent |beta> maps to |sqrt(eta) beta>."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must be in (0, 1], got {eta}")
    if eta == 1.0:
        return state
    nosc = state.layout.subsystem_dims[0]
    n = np.arange(nosc)
    kraus = []
    log_eta, log_1m = math.log(eta), math.log(1.0 - eta)
    for k in range(nosc):
        src = np.arange(k, nosc)
        logc = gammaln(src + 1) - gammaln(k + 1) - gammaln(src - k + 1)
        amps = np.exp(0.5 * (logc + k * log_1m + (src - k) * log_eta))
        mat = np.zeros((nosc, nosc))
        mat[src - k, src] = amps
        kraus.append(mat)
    return apply_subsystem_kraus(state, 0, kraus)


def gaussian_displacement_channel(
    state: QuantumState,
    alpha0: complex,
    sigma_r: float,
    sigma_i: float,
    nodes: int = 41,
) -> QuantumState:
    """Displacement with Gaussian-distributed amplitude, via Gauss-Hermite.

    Reduces to D[alpha0] rho D[alpha0]^dag when both widths vanish.
    """
    if sigma_r < 0 or sigma_i < 0:
        raise ValueError("jitter widths must be non-negative")
    if (sigma_r > 0 or sigma_i > 0) and nodes < 41:
        raise NodeCountError(f"need >= 41 Gauss-Hermite nodes per jittered axis, got {nodes}")
    nosc = state.layout.subsystem_dims[0]
    rest = state.layout.total_dim // nosc

    def nodes_for(sigma):
        if sigma == 0.0:
            return np.array([0.0]), np.array([1.0])
        x, w = roots_hermite(nodes)
        return math.sqrt(2.0) * sigma * x, w / math.sqrt(math.pi)

    dr, wr = nodes_for(sigma_r)
    di, wi = nodes_for(sigma_i)
    r4 = np.array(state.rho).reshape(nosc, rest, nosc, rest)
    out = np.zeros_like(r4)
    for xr, pr in zip(dr, wr):
        for xi, pi_ in zip(di, wi):
            d = displacement(alpha0 + xr + 1j * xi, nosc).mat
            out += pr * pi_ * np.einsum("ab,bicj,dc->aidj", d, r4, d.conj(), optimize=True)
    rho = out.reshape(state.layout.total_dim, state.layout.total_dim)
    return QuantumState(state.layout, rho, _validate=False)


def displace_oscillator(state: QuantumState, alpha: complex) -> QuantumState:
    """D[alpha] on the oscillator slot of a joint state."""
    nosc = state.layout.subsystem_dims[0]
    rest = state.layout.total_dim // nosc
    d = displacement(alpha, nosc).mat
    r4 = np.array(state.rho).reshape(nosc, rest, nosc, rest)
    out = np.einsum("ab,bicj,dc->aidj", d, r4, d.conj(), optimize=True)
    rho = out.reshape(state.layout.total_dim, state.layout.total_dim)
    return QuantumState(state.layout, rho, _validate=False)
