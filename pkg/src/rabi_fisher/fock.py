"""Operators and states on truncated oscillator (x) qubit Hilbert spaces.

Conventions used throughout the package:

* Fock truncation keeps levels ``|0> .. |dim-1>`` of the oscillator.
* Tensor factors are ordered oscillator first, then qubits, and the
  matrix representation follows ``np.kron`` in that order.
* Qubit basis index 0 is the excited state ``|e>``, index 1 is ``|g>``,
  so ``sigma_z = diag(+1, -1)`` on (e, g).
* The generalized quadrature is ``X_theta = (a e^{i theta} + a^dag e^{-i theta})/sqrt(2)``,
  hence the vacuum variance of any ``X_theta`` is 1/2 and
  ``[X_0, X_{pi/2}] = -i`` on the truncation interior.
* ``squeeze(r)`` satisfies ``squeeze(r) X squeeze(-r) = exp(2r) X``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg


class DimensionError(ValueError):
    """Requested truncation dimension is invalid or insufficient."""


class LayoutMismatchError(ValueError):
    """Operands live on incompatible Hilbert-space layouts."""


class GridCoverageError(ValueError):
    """A quadrature grid does not cover the truncated state support."""


class TruncationSaturationWarning(UserWarning):
    """A transformed state has non-negligible weight on the top Fock level."""


@dataclass(frozen=True)
class HilbertLayout:
    """Subsystem dimensions of a joint Hilbert space, oscillator first."""

    subsystem_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.subsystem_dims)
        object.__setattr__(self, "subsystem_dims", dims)
        if not dims:
            raise DimensionError("layout needs at least the oscillator subsystem")
        if dims[0] < 2:
            raise DimensionError(f"oscillator dimension must be >= 2, got {dims[0]}")
        if any(d != 2 for d in dims[1:]):
            raise DimensionError("every qubit dimension must be exactly 2")

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.subsystem_dims))

    @property
    def n_qubits(self) -> int:
        return len(self.subsystem_dims) - 1

    @property
    def osc_dim(self) -> int:
        return self.subsystem_dims[0]

    def qubit_axis(self, qubit_index: int) -> int:
        if not 0 <= qubit_index < self.n_qubits:
            raise IndexError(f"qubit index {qubit_index} out of range for {self}")
        return 1 + qubit_index


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Operator:
    """Dense operator on a labeled tensor-product space."""

    layout: HilbertLayout
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        d = self.layout.total_dim
        if mat.shape != (d, d):
            raise LayoutMismatchError(f"matrix shape {mat.shape} != layout dim {d}")
        object.__setattr__(self, "mat", _freeze(mat))

    def dag(self) -> "Operator":
        return Operator(self.layout, self.mat.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.layout != other.layout:
            raise LayoutMismatchError("operator product across different layouts")
        return Operator(self.layout, self.mat @ other.mat)


@dataclass(frozen=True)
class QuantumState:
    """Density matrix plus subsystem layout."""

    layout: HilbertLayout
    rho: np.ndarray
    _validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        d = self.layout.total_dim
        if rho.shape != (d, d):
            raise LayoutMismatchError(f"rho shape {rho.shape} != layout dim {d}")
        if self._validate:
            if abs(np.trace(rho) - 1.0) > 1e-10:
                raise ValueError(f"trace(rho) = {np.trace(rho)} != 1")
            if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
                raise ValueError("rho is not Hermitian within 1e-12")
        object.__setattr__(self, "rho", _freeze(rho))

    def evolve(self, u: Operator) -> "QuantumState":
        if u.layout != self.layout:
            raise LayoutMismatchError("unitary layout does not match state layout")
        return QuantumState(self.layout, u.mat @ self.rho @ u.mat.conj().T, _validate=False)

    def expect(self, op: Operator) -> complex:
        return complex(np.trace(op.mat @ self.rho))

    def purity(self) -> float:
        return float(np.real(np.trace(self.rho @ self.rho)))

    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self.rho)


def osc_layout(dim: int) -> HilbertLayout:
    return HilbertLayout((dim,))


# ----------------------------------------------------------------------------
# single-mode operators


def annihilation(dim: int) -> Operator:
    """Ladder operator with ``<n-1|a|n> = sqrt(n)``."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    mat = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)
    return Operator(osc_layout(dim), mat)


def creation(dim: int) -> Operator:
    return annihilation(dim).dag()


def number_op(dim: int) -> Operator:
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    return Operator(osc_layout(dim), np.diag(np.arange(dim, dtype=float)))


def quadrature(theta: float, dim: int) -> Operator:
    """X_theta = (a e^{i theta} + a^dag e^{-i theta}) / sqrt(2)."""
    a = annihilation(dim).mat
    mat = (a * np.exp(1j * theta) + a.conj().T * np.exp(-1j * theta)) / math.sqrt(2)
    return Operator(osc_layout(dim), mat)


def _check_saturation(u: np.ndarray, dim: int, what: str) -> None:
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0
    top_pop = abs((u @ vac)[-1]) ** 2
    if top_pop > 1e-8:
        warnings.warn(
            f"{what}: top Fock level holds population {top_pop:.2e} > 1e-8; "
            "increase the truncation dimension",
            TruncationSaturationWarning,
            stacklevel=3,
        )


def displacement(alpha: complex, dim: int) -> Operator:
    """D[alpha] = exp(alpha a^dag - conj(alpha) a) on the truncated space."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    a = annihilation(dim).mat
    gen = alpha * a.conj().T - np.conj(alpha) * a
    u = scipy.linalg.expm(gen)
    _check_saturation(u, dim, f"displacement({alpha})")
    return Operator(osc_layout(dim), u)


def rotation(theta: float, dim: int) -> Operator:
    """Phase-space rotation exp(i theta n)."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    return Operator(osc_layout(dim), np.diag(np.exp(1j * theta * np.arange(dim))))


def squeeze(r: float, dim: int) -> Operator:
    """Squeezer with squeeze(r) X squeeze(-r) = exp(2r) X."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    a = annihilation(dim).mat
    u = scipy.linalg.expm(r * (a @ a - a.conj().T @ a.conj().T))
    _check_saturation(u, dim, f"squeeze({r})")
    return Operator(osc_layout(dim), u)


# ----------------------------------------------------------------------------
# states


def fock_state(n: int, dim: int) -> QuantumState:
    if not 0 <= n < dim:
        raise DimensionError(f"Fock level {n} outside truncation dim {dim}")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[n, n] = 1.0
    return QuantumState(osc_layout(dim), rho)


def coherent_state(beta: complex, dim: int) -> QuantumState:
    vac = np.zeros((dim, dim), dtype=complex)
    vac[0, 0] = 1.0
    d = displacement(beta, dim)
    return QuantumState(osc_layout(dim), vac).evolve(d)


def squeezed_state(r: float, dim: int) -> QuantumState:
    vac = np.zeros((dim, dim), dtype=complex)
    vac[0, 0] = 1.0
    return QuantumState(osc_layout(dim), vac).evolve(squeeze(r, dim))


def thermal_tail_dim(nbar: float, tail: float = 1e-10) -> int:
    """Smallest truncation whose geometric tail mass is below ``tail``."""
    if nbar <= 0.0:
        return 2
    q = nbar / (nbar + 1.0)
    return max(2, math.ceil(math.log(tail) / math.log(q)))

def thermal_state(nbar: float, dim: int, tail_tol: float = 1e-10) -> QuantumState:
    """Fock-diagonal Bose-Einstein mixture with mean occupation nbar.

    Raises when the truncated tail mass exceeds ``tail_tol``.
    """
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    if nbar > 0:
        needed = thermal_tail_dim(nbar, tail_tol)
        if dim < needed:
            raise DimensionError(
                f"thermal tail above level {dim - 1} exceeds {tail_tol} at nbar={nbar}; "
                f"need dim >= {needed}"
            )
    n = np.arange(dim, dtype=float)
    if nbar == 0.0:
        pops = np.zeros(dim)
        pops[0] = 1.0
    else:
        pops = nbar**n / (nbar + 1.0) ** (n + 1)
        pops /= pops.sum()
    return QuantumState(osc_layout(dim), np.diag(pops.astype(complex)))


def qubit_state(c_e: complex, c_g: complex) -> QuantumState:
    nrm = abs(c_e) ** 2 + abs(c_g) ** 2
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"|c_e|^2 + |c_g|^2 = {nrm} != 1 within 1e-12")
    vec = np.array([c_e, c_g], dtype=complex)
    return QuantumState(HilbertLayout((2,) * 1), np.outer(vec, vec.conj()))


# a qubit-only "layout" is not a valid HilbertLayout (oscillator first), so the
# qubit state above is built on a 2-dim "oscillator" slot purely as a container;
# tensor() below re-labels subsystems from the factor order it is given.


def plus_i_state() -> QuantumState:
    """sigma_y eigenstate (|e> + i|g>)/sqrt(2)."""
    return qubit_state(1 / math.sqrt(2), 1j / math.sqrt(2))


def minus_i_state() -> QuantumState:
    return qubit_state(1 / math.sqrt(2), -1j / math.sqrt(2))


def ground_state_qubit() -> QuantumState:
    return qubit_state(0.0, 1.0)


def excited_state_qubit() -> QuantumState:
    return qubit_state(1.0, 0.0)


# ----------------------------------------------------------------------------
# composition


def tensor(*factors):
    """Kronecker product of Operators or QuantumStates, oscillator first."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    kinds = {type(f) for f in factors}
    if kinds == {Operator}:
        mats = [f.mat for f in factors]
        dims = sum((f.layout.subsystem_dims for f in factors), ())
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return Operator(HilbertLayout(dims), out)
    if kinds == {QuantumState}:
        mats = [f.rho for f in factors]
        dims = sum((f.layout.subsystem_dims for f in factors), ())
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return QuantumState(HilbertLayout(dims), out, _validate=False)
    raise LayoutMismatchError("tensor factors must be all Operators or all QuantumStates")


def partial_trace(state: QuantumState, keep) -> QuantumState:
    """Trace out every subsystem not listed in ``keep`` (indices, ascending)."""
    keep = tuple(sorted(set(int(k) for k in keep)))
    dims = state.layout.subsystem_dims
    n = len(dims)
    if any(k < 0 or k >= n for k in keep):
        raise IndexError(f"keep indices {keep} out of range for {n} subsystems")
    rho = state.rho.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    for count, i in enumerate(traced):
        axis1 = i - sum(1 for j in traced[:count] if j < i)
        nleft = n - count
        rho = np.trace(rho, axis1=axis1, axis2=axis1 + nleft)
    new_dims = tuple(dims[k] for k in keep)
    d = int(np.prod(new_dims))
    return QuantumState(HilbertLayout(new_dims), rho.reshape(d, d), _validate=False)


def embed(op: Operator, layout: HilbertLayout, subsystem: int) -> Operator:
    """Lift a single-subsystem operator into the full layout."""
    if op.layout.subsystem_dims != (layout.subsystem_dims[subsystem],):
        raise LayoutMismatchError(
            f"operator dim {op.layout.subsystem_dims} does not fit subsystem {subsystem}"
        )
    mats = []
    for i, d in enumerate(layout.subsystem_dims):
        mats.append(op.mat if i == subsystem else np.eye(d, dtype=complex))
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return Operator(layout, out)


def identity(layout: HilbertLayout) -> Operator:
    return Operator(layout, np.eye(layout.total_dim, dtype=complex))


# ----------------------------------------------------------------------------
# exponentials


def expm_op(gen: Operator) -> Operator:
    """Matrix exponential (Pade scaling-and-squaring) of a general generator."""
    mat = gen.mat
    if not np.all(np.isfinite(mat)):
        raise ValueError("expm input must be finite")
    return Operator(gen.layout, scipy.linalg.expm(np.array(mat)))


def unitary_from_generator(h: Operator, scale: float = 1.0) -> Operator:
    """exp(i * scale * H) for Hermitian H, via eigendecomposition."""
    mat = h.mat
    if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
        raise ValueError("generator must be Hermitian")
    evals, evecs = scipy.linalg.eigh(mat)
    u = (evecs * np.exp(1j * scale * evals)) @ evecs.conj().T
    return Operator(h.layout, u)


# ----------------------------------------------------------------------------
# quadrature wavefunctions


def position_wavefunctions(dim: int, grid: np.ndarray) -> np.ndarray:
    """Rows are <x|n> for the X-quadrature eigenbasis, n = 0..dim-1.

    Hermite-function recurrence in the convention where the vacuum has
    variance 1/2, i.e. <x|0> = pi^{-1/4} exp(-x^2/2).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise GridCoverageError("grid must be a 1-D array with at least 2 samples")
    need = math.sqrt(2 * dim) + 4
    if grid[0] > -need or grid[-1] < need:
        raise GridCoverageError(
            f"grid must span at least +/-{need:.2f} for dim={dim}, "
            f"got [{grid[0]:.2f}, {grid[-1]:.2f}]"
        )
    spacing = np.max(np.diff(grid))
    if spacing > 0.05 + 1e-12:
        raise GridCoverageError(f"grid spacing {spacing:.4f} exceeds 0.05")
    psi = np.zeros((dim, grid.size))
    psi[0] = math.pi**-0.25 * np.exp(-(grid**2) / 2)
    if dim > 1:
        psi[1] = math.sqrt(2.0) * grid * psi[0]
    for n in range(1, dim - 1):
        psi[n + 1] = math.sqrt(2.0 / (n + 1)) * grid * psi[n] - math.sqrt(
            n / (n + 1)
        ) * psi[n - 1]
    return psi


def coherent_vector(beta: complex, dim: int) -> np.ndarray:
    """Fock amplitudes of |beta> projected onto the truncated space.

    Not renormalized: the projected vectors resolve the identity on the
    truncated space under the heterodyne POVM measure d^2beta / pi.
    """
    amps = np.zeros(dim, dtype=complex)
    if beta == 0:
        amps[0] = 1.0
        return amps
    n = np.arange(dim)
    log_fact = np.cumsum(np.log(np.maximum(n, 1)))  # log(n!)
    return np.exp(-abs(beta) ** 2 / 2 + n * np.log(complex(beta)) - log_fact / 2)


# ----------------------------------------------------------------------------
# truncation convergence helper


def converge_dim(fn, start_dim: int = 40, tol: float = 1e-8, max_dim: int = 1280):
    """Double the truncation until the monitored scalar moves by < tol.

    Returns (value, dim, converged).
    """
    dim = start_dim
    prev = fn(dim)
    while dim * 2 <= max_dim:
        dim *= 2
        cur = fn(dim)
        if abs(cur - prev) < tol:
            return cur, dim, True
        prev = cur
    return prev, dim, False


# Pauli matrices on (|e>, |g>)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)   # |e><g|
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |g><e|


def pauli(which: str, layout: HilbertLayout, qubit_index: int) -> Operator:
    mats = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z, "+": SIGMA_PLUS, "-": SIGMA_MINUS}
    try:
        m = mats[which]
    except KeyError:
        raise ValueError(f"unknown Pauli label {which!r}") from None
    sub = Operator(HilbertLayout((2,)), m)
    full_layout_axis = layout.qubit_axis(qubit_index)
    return embed(sub, layout, full_layout_axis)
