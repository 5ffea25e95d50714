import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import tone_mixture
from xlradar import (build_dictionary, dirichlet, least_squares_amplitudes,
                     omp, refine_frequencies, steering_vector)


def test_grid_size_and_spacing():
    D = build_dictionary(64, 0.0, 1.0, 16.0)
    assert D.G == 16 * 64
    assert D.grid.freqs[0] == 0.0
    assert np.allclose(np.diff(D.grid.freqs), 1.0 / (16 * 64))
    half = build_dictionary(64, -0.5, 0.5, 16.0)
    assert half.G == 16 * 64
    assert half.grid.freqs[0] == -0.5


def test_columns_are_unit_norm():
    D = build_dictionary(32, 0.0, 1.0, 8.0)
    assert np.allclose(np.linalg.norm(D.columns, axis=0), 1.0)


def test_coherence_follows_dirichlet():
    # inner product of two unit atoms at spacing df equals |D_L(df)|/sqrt(L)
    L = 32
    D = build_dictionary(L, 0.0, 1.0, 8.0)
    g = np.abs(np.vdot(D.columns[:, 0], D.columns[:, 3]))
    df = D.grid.freqs[3] - D.grid.freqs[0]
    assert g == pytest.approx(abs(dirichlet(L, df)) / np.sqrt(L), abs=1e-12)


def test_dictionary_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_dictionary(1, 0.0, 1.0, 16.0)
    with pytest.raises(ValueError):
        build_dictionary(16, 0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        build_dictionary(16, 0.5, 0.5, 16.0)
    with pytest.raises(ValueError):
        build_dictionary(1024, 0.0, 1.0, 4096.0, grid_cap=2**20)


def test_single_on_grid_tone_exact():
    L = 64
    D = build_dictionary(L, 0.0, 1.0, 16.0)
    f = D.grid.freqs[100]
    y = 2.5 * steering_vector(L, f)
    sol = omp(y, D, max_atoms=1)
    assert len(sol.atoms) == 1
    assert sol.atoms[0].index == 100
    assert sol.atoms[0].coef == pytest.approx(2.5)
    assert sol.residual_norm == pytest.approx(0.0, abs=1e-9)


def test_scale_invariant_support():
    L = 32
    D = build_dictionary(L, 0.0, 1.0, 8.0)
    y = tone_mixture(L, [0.1, 0.4], [1.0, 0.7])
    s1 = omp(y, D, max_atoms=2)
    s2 = omp(1e3 * y, D, max_atoms=2)
    assert sorted(a.index for a in s1.atoms) == sorted(a.index for a in s2.atoms)
    assert np.allclose(1e3 * np.sort_complex(s1.coefficients()),
                       np.sort_complex(s2.coefficients()))


def test_zero_input_and_argument_errors():
    D = build_dictionary(16, 0.0, 1.0, 4.0)
    sol = omp(np.zeros(16, dtype=complex), D, max_atoms=3)
    assert sol.atoms == () and sol.stop_reason == "zero input"
    with pytest.raises(ValueError):
        omp(np.zeros(0), D, max_atoms=1)
    with pytest.raises(ValueError):
        omp(np.ones(8), D, max_atoms=1)
    with pytest.raises(ValueError):
        omp(np.ones(16), D)


def test_residual_tol_stop():
    L = 64
    D = build_dictionary(L, 0.0, 1.0, 16.0)
    y = tone_mixture(L, [D.grid.freqs[64], D.grid.freqs[512]], [1.0, 1.0])
    sol = omp(y, D, residual_tol=1e-6)
    assert sol.stop_reason == "residual threshold"
    assert len(sol.atoms) == 2


def test_cond_guard_stops_before_singular_support():
    L = 16
    D = build_dictionary(L, 0.0, 1.0, 64.0)
    y = steering_vector(L, D.grid.freqs[5]) \
        + 1e-14 * steering_vector(L, D.grid.freqs[6])
    sol = omp(y, D, max_atoms=8, cond_limit=1e6)
    assert sol.stop_reason in ("ill-conditioned support", "repeated atom")


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_residual_history_monotone(data):
    L = 48
    D = build_dictionary(L, 0.0, 1.0, 8.0)
    K = data.draw(st.integers(1, 4))
    freqs = data.draw(st.lists(st.floats(0.0, 0.999), min_size=K, max_size=K,
                               unique=True))
    amps = [data.draw(st.floats(0.2, 3.0)) for _ in range(K)]
    y = tone_mixture(L, freqs, amps)
    if np.linalg.norm(y) == 0:
        return
    sol = omp(y, D, max_atoms=6)
    h = np.array(sol.residual_history)
    assert np.all(np.diff(h) <= 1e-9)


def test_off_grid_bias_within_half_step_then_refined():
    L = 64
    D = build_dictionary(L, 0.0, 1.0, 16.0)
    step = 1.0 / (16 * L)
    f_true = 0.31337
    y = steering_vector(L, f_true)
    sol = omp(y, D, max_atoms=1)
    assert abs(sol.atoms[0].freq - f_true) <= step / 2 + 1e-12
    f_hat = refine_frequencies(y, sol.frequencies(), half_width=0.5 / L)
    assert f_hat[0] == pytest.approx(f_true, abs=1e-9)


def test_refine_two_close_tones():
    L = 64
    truth = np.array([0.2501, 0.2742])  # 1.5 natural bins apart
    y = tone_mixture(L, truth, [1.0, 0.8])
    D = build_dictionary(L, 0.0, 1.0, 16.0)
    sol = omp(y, D, max_atoms=2)
    f_hat = np.sort(refine_frequencies(y, sol.frequencies(), half_width=0.5 / L))
    assert np.allclose(f_hat, truth, atol=1e-6)
    amps = least_squares_amplitudes(y, f_hat)
    assert np.allclose(np.abs(amps), [1.0, 0.8], atol=1e-5)


def test_least_squares_amplitudes_exact_for_known_freqs():
    L = 40
    truth_f = [0.11, 0.37, 0.8]
    truth_a = [1.0 + 0.5j, -0.3, 2.0j]
    y = tone_mixture(L, truth_f, truth_a)
    assert np.allclose(least_squares_amplitudes(y, truth_f), truth_a)
