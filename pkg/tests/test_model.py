import numpy as np
import pytest

from qcorr.errors import NumericFailure
from qcorr.linalg import partial_trace
from qcorr.model import (
    DecoherenceParams,
    ModelParams,
    ThermalPoint,
    bell_initial_state,
    build_hamiltonian,
    hamiltonian_spectrum,
    milburn_closed_form,
    milburn_evolve,
    thermal_state,
    thermal_state_closed_form,
)

from oracles import (
    milburn_bell_quadratic_mu,
    random_density_matrix,
    thermal_oracle,
    unitary_evolution_oracle,
)

FIG1_PARAMS = ModelParams(jx=0.2, jy=0.4, jz=0.8, dz=1.0)


def random_params(rng, coupling_scale=1.0):
    jx, jy, jz, dz = rng.uniform(-coupling_scale, coupling_scale, size=4)
    return ModelParams(jx=jx, jy=jy, jz=jz, dz=dz)


def test_hamiltonian_entries_fig1():
    h = build_hamiltonian(FIG1_PARAMS)
    # 1-indexed (1,1)=Jz/2, (1,4)=(Jx-Jy)/2, (2,3)=beta/2 with beta=Jx+Jy+2i*Dz
    assert h[0, 0] == pytest.approx(0.4)
    assert h[0, 3] == pytest.approx(-0.1)
    assert h[1, 2] == pytest.approx(0.3 + 1.0j)
    assert h[2, 1] == pytest.approx(0.3 - 1.0j)
    assert h[1, 1] == pytest.approx(-0.4)


def test_hamiltonian_zero_params():
    assert np.abs(build_hamiltonian(ModelParams(0, 0, 0, 0))).max() == 0.0


def test_hamiltonian_equal_xy_kills_corners():
    h = build_hamiltonian(ModelParams(1.0, 1.0, 0.0, 0.0))
    assert h[0, 3] == 0.0 and h[3, 0] == 0.0
    assert h[1, 2] == pytest.approx(1.0)
    assert h[2, 1] == pytest.approx(1.0)


def test_hamiltonian_matches_pauli_construction():
    # independent route: assemble from explicit Pauli tensor products
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    rng = np.random.default_rng(31)
    for _ in range(50):
        p = random_params(rng, 2.0)
        direct = 0.5 * (
            p.jx * np.kron(sx, sx)
            + p.jy * np.kron(sy, sy)
            + p.jz * np.kron(sz, sz)
            + p.dz * (np.kron(sx, sy) - np.kron(sy, sx))
        )
        assert np.abs(build_hamiltonian(p) - direct).max() <= 1e-15


def test_spectrum_fig1_values():
    dec = hamiltonian_spectrum(FIG1_PARAMS)
    mu = np.sqrt(0.6**2 + 4.0)
    expected = np.sort([0.3, 0.5, (-0.8 + mu) / 2.0, (-0.8 - mu) / 2.0])
    assert np.abs(dec.eigenvalues - expected).max() <= 1e-12
    assert np.allclose(dec.eigenvalues, [-1.4440, 0.3, 0.5, 0.6440], atol=5e-5)


def test_spectrum_zero_params():
    assert np.abs(hamiltonian_spectrum(ModelParams(0, 0, 0, 0)).eigenvalues).max() == 0.0


def test_spectrum_xxx_point():
    dec = hamiltonian_spectrum(ModelParams(1.0, 1.0, 1.0, 0.0))
    assert np.abs(dec.eigenvalues - np.array([-1.5, 0.5, 0.5, 0.5])).max() <= 1e-12


def test_thermal_state_high_temperature_limit():
    rho = thermal_state(ThermalPoint(FIG1_PARAMS, 1e6))
    assert np.abs(rho - np.eye(4) / 4.0).max() <= 1e-6


def test_thermal_state_corner_vanishes_for_equal_xy():
    rho = thermal_state(ThermalPoint(ModelParams(0.3, 0.3, 0.5, 0.7), 0.8))
    assert abs(rho[0, 3]) <= 1e-15


def test_thermal_state_against_expm_oracle():
    p = FIG1_PARAMS
    rho = thermal_state(ThermalPoint(p, 1.0))
    ref = thermal_oracle(build_hamiltonian(p), 1.0)
    assert np.abs(rho - ref).max() <= 1e-10


def test_thermal_state_random_params_vs_oracle():
    rng = np.random.default_rng(37)
    for _ in range(60):
        p = random_params(rng)
        t = float(rng.uniform(0.05, 3.0))
        rho = thermal_state(ThermalPoint(p, t))
        ref = thermal_oracle(build_hamiltonian(p), t)
        assert np.abs(rho - ref).max() <= 1e-10


def test_thermal_state_closed_form_matches_spectral():
    rng = np.random.default_rng(41)
    for _ in range(60):
        p = random_params(rng)
        t = float(rng.uniform(0.02, 2.0))
        a = thermal_state(ThermalPoint(p, t))
        b = thermal_state_closed_form(ThermalPoint(p, t))
        assert np.abs(a - b).max() <= 1e-12


def test_thermal_state_low_temperature_is_finite():
    rho = thermal_state(ThermalPoint(ModelParams(0.2, 0.4, 0.8, 3.0), 0.01))
    assert np.isfinite(rho).all()
    assert rho.trace().real == pytest.approx(1.0, abs=1e-12)


def test_thermal_state_x_shape_and_pairs():
    rng = np.random.default_rng(43)
    for _ in range(40):
        rho = thermal_state(ThermalPoint(random_params(rng), float(rng.uniform(0.05, 2.0))))
        assert rho[1, 1].real == pytest.approx(rho[2, 2].real, abs=1e-12)
        assert rho[0, 0].real == pytest.approx(rho[3, 3].real, abs=1e-12)
        for i, j in ((0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)):
            assert abs(rho[i, j]) <= 1e-12


def test_thermal_reduced_states_are_maximally_mixed():
    rng = np.random.default_rng(47)
    for _ in range(20):
        rho = thermal_state(ThermalPoint(random_params(rng), float(rng.uniform(0.05, 2.0))))
        for keep in ("A", "B"):
            assert np.abs(partial_trace(rho, keep) - np.eye(2) / 2.0).max() <= 1e-10


def test_thermal_rejects_nonpositive_temperature():
    with pytest.raises(ValueError):
        ThermalPoint(FIG1_PARAMS, 0.0)
    with pytest.raises(ValueError):
        ThermalPoint(FIG1_PARAMS, -1.0)


def test_bell_state_entries():
    rho = bell_initial_state()
    assert rho[1, 1] == 0.5 and rho[2, 2] == 0.5 and rho[1, 2] == 0.5
    assert rho.trace() == pytest.approx(1.0)
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-14)


def test_milburn_identity_at_t_zero():
    rng = np.random.default_rng(53)
    rho0 = random_density_matrix(rng)
    dp = DecoherenceParams(FIG1_PARAMS, gamma=0.4, time=0.0)
    assert np.abs(milburn_evolve(dp, rho0) - rho0).max() <= 1e-12


def test_milburn_gamma_zero_is_unitary():
    rng = np.random.default_rng(59)
    for _ in range(50):
        p = random_params(rng)
        t = float(rng.uniform(0.0, 5.0))
        rho0 = random_density_matrix(rng)
        evolved = milburn_evolve(DecoherenceParams(p, 0.0, t), rho0)
        ref = unitary_evolution_oracle(build_hamiltonian(p), rho0, t)
        assert np.abs(evolved - ref).max() <= 1e-10


def test_milburn_dephases_in_energy_basis():
    p = ModelParams(0.03, 0.06, 0.0, 6.0)
    gamma = 0.01
    mu = p.mu
    t = 2.0 * 40.0 / (gamma * mu * mu)  # gamma mu^2 t / 2 = 40
    rho = milburn_evolve(DecoherenceParams(p, gamma, t), bell_initial_state())
    dec = hamiltonian_spectrum(p)
    coeff = dec.eigenvectors.conj().T @ rho @ dec.eigenvectors
    gaps = np.abs(dec.eigenvalues[:, None] - dec.eigenvalues[None, :])
    assert np.abs(coeff[gaps > 1e-9]).max() <= 1e-12


def test_milburn_conserves_energy_diagonal():
    rng = np.random.default_rng(61)
    p = random_params(rng)
    dec = hamiltonian_spectrum(p)
    rho0 = random_density_matrix(rng)
    d0 = np.diagonal(dec.eigenvectors.conj().T @ rho0 @ dec.eigenvectors).real
    for t in (0.3, 1.7, 12.0):
        rho = milburn_evolve(DecoherenceParams(p, 0.2, t), rho0)
        d = np.diagonal(dec.eigenvectors.conj().T @ rho @ dec.eigenvectors).real
        assert np.abs(d - d0).max() <= 1e-12


def test_milburn_purity_nonincreasing():
    rng = np.random.default_rng(67)
    for _ in range(10):
        p = random_params(rng)
        rho0 = random_density_matrix(rng)
        times = np.sort(rng.uniform(0.0, 8.0, size=12))
        purities = [
            np.trace(m @ m).real
            for m in (milburn_evolve(DecoherenceParams(p, 0.3, float(t)), rho0) for t in times)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(purities, purities[1:]))


def test_milburn_composition():
    rng = np.random.default_rng(71)
    p = random_params(rng)
    rho0 = random_density_matrix(rng)
    gamma = 0.15
    one = milburn_evolve(DecoherenceParams(p, gamma, 0.9), rho0)
    two = milburn_evolve(DecoherenceParams(p, gamma, 1.4), one)
    direct = milburn_evolve(DecoherenceParams(p, gamma, 2.3), rho0)
    assert np.abs(two - direct).max() <= 1e-10


def test_milburn_closed_form_recovers_bell_at_t_zero():
    p = ModelParams(3.0, 0.6, 0.0, 0.1)
    rho = milburn_closed_form(DecoherenceParams(p, 0.1, 0.0))
    assert rho[1, 1] == pytest.approx(0.5, abs=1e-14)
    assert abs(rho[1, 2]) == pytest.approx(0.5, abs=1e-14)


def test_milburn_closed_form_matches_spectral_evolution():
    bell = bell_initial_state()
    rng = np.random.default_rng(73)
    for jx, jy, dz, gamma in ((0.03, 0.06, 6.0, 0.01), (3.0, 0.6, 0.1, 0.1), (3.0, 0.6, 0.3, 0.1)):
        jz = float(rng.uniform(-1.0, 1.0))  # must not matter
        p = ModelParams(jx, jy, jz, dz)
        for t in np.linspace(0.0, 7.0, 60):
            dp = DecoherenceParams(p, gamma, float(t))
            assert np.abs(milburn_evolve(dp, bell) - milburn_closed_form(dp)).max() <= 1e-12


def test_milburn_closed_form_trace_and_support():
    p = ModelParams(0.03, 0.06, 0.4, 6.0)
    for t in (0.0, 0.3, 2.0, 9.0):
        rho = milburn_closed_form(DecoherenceParams(p, 0.01, t))
        assert rho[1, 1].real + rho[2, 2].real == pytest.approx(1.0, abs=1e-14)
        assert rho[0, 0] == 0.0 and rho[3, 3] == 0.0 and rho[0, 3] == 0.0


def test_milburn_closed_form_steady_state_coherence():
    for dz, expected in ((0.1, 3.6 / np.sqrt(13.0)), (0.3, 3.6 / np.sqrt(13.32))):
        p = ModelParams(3.0, 0.6, 0.0, dz)
        t = 2.0 * 40.0 / (0.1 * p.mu**2)
        rho = milburn_closed_form(DecoherenceParams(p, 0.1, t))
        assert 2.0 * abs(rho[1, 2]) == pytest.approx(expected, abs=1e-9)


def test_milburn_quadratic_mu_variant_is_wrong():
    # the mu^2-normalized population wobble does not reproduce the dynamics
    p = ModelParams(0.03, 0.06, 0.0, 6.0)
    dp = DecoherenceParams(p, 0.01, 0.12)
    dev = np.abs(milburn_bell_quadratic_mu(p, 0.01, 0.12) - milburn_evolve(dp, bell_initial_state())).max()
    assert dev > 0.1


def test_milburn_bell_reduced_state_departs_from_mixed():
    # with Dz != 0 the Bell populations oscillate, so the reduced states are
    # only spectrally equal, not both I/2
    p = ModelParams(0.03, 0.06, 0.0, 6.0)
    mu = p.mu
    t = float(np.pi / (2.0 * mu))  # sin(mu t) = 1
    rho = milburn_evolve(DecoherenceParams(p, 0.01, t), bell_initial_state())
    ra = partial_trace(rho, "A")
    rb = partial_trace(rho, "B")
    expected_shift = p.dz / mu * np.exp(-0.005 * mu * mu * t)
    assert ra[0, 0].real - 0.5 == pytest.approx(expected_shift, abs=1e-12)
    assert np.abs(np.linalg.eigvalsh(ra) - np.linalg.eigvalsh(rb)).max() <= 1e-12


def test_decoherence_params_validation():
    with pytest.raises(ValueError):
        DecoherenceParams(FIG1_PARAMS, gamma=-0.1, time=1.0)
    with pytest.raises(ValueError):
        DecoherenceParams(FIG1_PARAMS, gamma=0.1, time=-1.0)
    with pytest.raises(ValueError):
        ModelParams(np.inf, 0.0, 0.0, 0.0)


def test_spectrum_cross_check_error_type():
    # NumericFailure is reserved for internal inconsistencies; a valid input
    # must never raise it
    rng = np.random.default_rng(79)
    for _ in range(200):
        try:
            hamiltonian_spectrum(random_params(rng, 5.0))
        except NumericFailure as exc:  # pragma: no cover
            pytest.fail(f"unexpected cross-check failure: {exc}")
