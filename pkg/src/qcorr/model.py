"""Two-qubit anisotropic XYZ chain with a z-axis Dzyaloshinskii-Moriya term.

The Hamiltonian is

    H = 1/2 [ Jx sx.sx + Jy sy.sy + Jz sz.sz + Dz (sx.sy - sy.sx) ]

which in the standard basis |00>,|01>,|10>,|11> is block diagonal: an outer
block on span{|00>,|11>} with eigenvalues (Jz +- (Jx-Jy))/2 and an inner
block on span{|01>,|10>} with off-diagonal beta/2, beta = Jx+Jy+2i*Dz, and
eigenvalues (-Jz +- mu)/2 where mu = |beta| = sqrt((Jx+Jy)^2 + 4 Dz^2).

This module builds the Hamiltonian and its spectrum, the Gibbs state
exp(-H/T)/Z, and the pure-dephasing evolution that damps every coherence
between energy eigenstates |m>,|n> by exp(-(gamma t / 2)(Em - En)^2) while
rotating it by exp(-i (Em - En) t).  Closed-form routes are kept alongside
the spectral ones and cross-checked on every call.

All functions are pure; inputs and outputs are treated as immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericFailure
from .linalg import (
    SpectralDecomposition,
    eig_hermitian,
    validate_two_qubit_state,
)

CROSS_CHECK_TOL = 1e-10
X_SHAPE_TOL = 1e-12

# indices of entries that an X-shaped 4x4 matrix must leave at zero
_OFF_X_MASK = np.ones((4, 4), dtype=bool)
for _i, _j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
    _OFF_X_MASK[_i, _j] = False


def _finite(name, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Coupling constants jx, jy, jz and DM strength dz (energy units, hbar = 1)."""

    jx: float
    jy: float
    jz: float
    dz: float

    def __post_init__(self):
        for name in ("jx", "jy", "jz", "dz"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))

    @property
    def beta(self) -> complex:
        return complex(self.jx + self.jy, 2.0 * self.dz)

    @property
    def mu(self) -> float:
        return math.hypot(self.jx + self.jy, 2.0 * self.dz)


@dataclass(frozen=True)
class ThermalPoint:
    """Model parameters together with a strictly positive temperature (k_B = 1)."""

    params: ModelParams
    temperature: float

    def __post_init__(self):
        t = _finite("temperature", self.temperature)
        if t <= 0.0:
            raise ValueError(f"temperature must be > 0, got {t}")
        object.__setattr__(self, "temperature", t)


@dataclass(frozen=True)
class DecoherenceParams:
    """Model parameters with a phase-damping rate gamma >= 0 and a time t >= 0."""

    params: ModelParams
    gamma: float
    time: float

    def __post_init__(self):
        g = _finite("gamma", self.gamma)
        t = _finite("time", self.time)
        if g < 0.0:
            raise ValueError(f"gamma must be >= 0, got {g}")
        if t < 0.0:
            raise ValueError(f"time must be >= 0, got {t}")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "time", t)


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Assemble the 4x4 Hamiltonian matrix in the standard basis."""
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = h[3, 3] = p.jz / 2.0
    h[1, 1] = h[2, 2] = -p.jz / 2.0
    h[0, 3] = h[3, 0] = (p.jx - p.jy) / 2.0
    h[1, 2] = p.beta / 2.0
    h[2, 1] = p.beta.conjugate() / 2.0
    return h


def _closed_form_levels(p: ModelParams):
    """(energy, eigenvector) pairs from the two 2x2 blocks, unsorted."""
    s = 1.0 / math.sqrt(2.0)
    mu = p.mu
    # inner-block phase; arbitrary for mu = 0 (degenerate block)
    phase = p.beta / mu if mu > 0.0 else 1.0 + 0.0j
    return [
        ((p.jz + (p.jx - p.jy)) / 2.0, np.array([s, 0, 0, s], dtype=complex)),
        ((p.jz - (p.jx - p.jy)) / 2.0, np.array([s, 0, 0, -s], dtype=complex)),
        ((-p.jz + mu) / 2.0, np.array([0, phase * s, s, 0], dtype=complex)),
        ((-p.jz - mu) / 2.0, np.array([0, phase * s, -s, 0], dtype=complex)),
    ]


def hamiltonian_spectrum(p: ModelParams) -> SpectralDecomposition:
    """Spectrum of the Hamiltonian, cross-checked against the block closed forms.

    The generic dense eigendecomposition is authoritative; the closed-form
    eigenvalues must agree within 1e-10 and the closed-form vectors must
    satisfy H v = E v to the same tolerance, otherwise NumericFailure.
    """
    h = build_hamiltonian(p)
    dec = eig_hermitian(h)
    closed = _closed_form_levels(p)
    closed_vals = np.sort([e for e, _ in closed])
    if np.abs(closed_vals - dec.eigenvalues).max() > CROSS_CHECK_TOL:
        raise NumericFailure(
            f"spectrum cross-check failed for {p}: closed form {closed_vals} "
            f"vs dense {dec.eigenvalues}"
        )
    for energy, vec in closed:
        if np.abs(h @ vec - energy * vec).max() > CROSS_CHECK_TOL:
            raise NumericFailure(f"closed-form eigenvector check failed for {p}")
    return dec


def thermal_state_closed_form(tp: ThermalPoint) -> np.ndarray:
    """Gibbs state from the analytic block elements, evaluated overflow-safely.

    Every element is a combination of exp(a_i/(2T)) terms; all exponents are
    shifted by their maximum before exponentiation so the construction stays
    finite at low temperature, and the matrix is normalized by its trace once.
    """
    p, t2 = tp.params, 2.0 * tp.temperature
    mu = p.mu
    a1 = (p.jx - p.jy - p.jz) / t2
    a2 = (p.jy - p.jx - p.jz) / t2
    b1 = (p.jz + mu) / t2
    b2 = (p.jz - mu) / t2
    shift = max(a1, a2, b1, b2)
    ea1, ea2, eb1, eb2 = (math.exp(a - shift) for a in (a1, a2, b1, b2))
    u11 = 0.5 * (ea1 + ea2)
    u41 = 0.5 * (-ea1 + ea2)
    u22 = 0.5 * (eb1 + eb2)
    sinh_term = 0.5 * (eb1 - eb2)
    u23 = -(p.beta / mu) * sinh_term if mu > 0.0 else 0.0j
    z = 2.0 * (u11 + u22)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = u11 / z
    rho[0, 3] = rho[3, 0] = u41 / z
    rho[1, 1] = rho[2, 2] = u22 / z
    rho[1, 2] = u23 / z
    rho[2, 1] = np.conj(u23) / z
    return rho


def thermal_state(tp: ThermalPoint) -> np.ndarray:
    """Gibbs state exp(-H/T)/Z via the spectral decomposition.

    Boltzmann weights are shifted by the ground energy before exponentiation.
    The result must be X-shaped (entries off the diagonal and anti-diagonal
    below 1e-12) and must agree with the closed-form element route within
    1e-9; violations raise NumericFailure.
    """
    dec = hamiltonian_spectrum(tp.params)
    w = np.exp(-(dec.eigenvalues - dec.eigenvalues[0]) / tp.temperature)
    rho = (dec.eigenvectors * w) @ dec.eigenvectors.conj().T / w.sum()
    rho = 0.5 * (rho + rho.conj().T)
    spill = np.abs(rho[_OFF_X_MASK]).max()
    if spill > X_SHAPE_TOL:
        raise NumericFailure(f"thermal state lost X shape (spill {spill:.3e})")
    dev = np.abs(rho - thermal_state_closed_form(tp)).max()
    if dev > 1e-9:
        raise NumericFailure(f"thermal element cross-check failed (dev {dev:.3e})")
    return rho


def bell_initial_state() -> np.ndarray:
    """Projector onto (|01> + |10>)/sqrt(2)."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = rho[1, 2] = rho[2, 1] = 0.5
    return rho


def milburn_evolve(dp: DecoherenceParams, rho0: np.ndarray) -> np.ndarray:
    """Pure-dephasing evolution of rho0 in the energy eigenbasis.

    rho(t) = sum_mn exp(-(gamma t/2)(Em-En)^2 - i(Em-En) t) <m|rho0|n> |m><n|.

    At gamma = 0 this is exactly the unitary evolution exp(-iHt) rho0 exp(iHt);
    for gamma > 0 the energy-basis diagonal is conserved and purity is
    non-increasing in t.
    """
    rho0 = validate_two_qubit_state(rho0)
    dec = hamiltonian_spectrum(dp.params)
    v = dec.eigenvectors
    coeff = v.conj().T @ rho0 @ v
    gaps = dec.eigenvalues[:, None] - dec.eigenvalues[None, :]
    kernel = np.exp(-(0.5 * dp.gamma * dp.time) * gaps**2 - 1j * gaps * dp.time)
    out = v @ (coeff * kernel) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def milburn_closed_form(dp: DecoherenceParams) -> np.ndarray:
    """Dephased state of the Bell pair (|01>+|10>)/sqrt(2) in closed form.

    With mu = sqrt((Jx+Jy)^2 + 4 Dz^2) and envelope E = exp(-gamma mu^2 t / 2):

        rho22 = 1/2 + Dz E sin(mu t) / mu
        rho23 = (Jx+Jy+2i Dz) ((Jx+Jy) - 2i Dz E cos(mu t)) / (2 mu^2)
        rho33 = 1 - rho22,  rho32 = conj(rho23),  all other entries zero.

    The population oscillation is normalized by mu (not mu^2); with that
    normalization this agrees with milburn_evolve(bell_initial_state()) to
    machine precision, independent of Jz.
    """
    p = dp.params
    mu = p.mu
    rho = np.zeros((4, 4), dtype=complex)
    if mu == 0.0:
        # beta = 0: the Bell pair is an eigenstate and nothing moves
        return bell_initial_state()
    env = math.exp(-0.5 * dp.gamma * mu * mu * dp.time)
    wobble = p.dz * env * math.sin(mu * dp.time) / mu
    rho[1, 1] = 0.5 + wobble
    rho[2, 2] = 0.5 - wobble
    jsum = p.jx + p.jy
    rho[1, 2] = p.beta * (jsum - 2j * p.dz * env * math.cos(mu * dp.time)) / (2.0 * mu * mu)
    rho[2, 1] = rho[1, 2].conjugate()
    return rho
