"""Shift-variable invertibility analysis on doubled phase space."""

import numpy as np
import pytest

from metaplectic.symplectic_core import (
    SymplecticMatrix,
    admissible_shift_range,
    is_free,
    random_symplectic,
    shift_invertible,
    shift_perturb,
    shift_submatrix,
    wigner_split,
)
from metaplectic.metaplectic_numeric import (
    rihacek_projection,
    stft_projection,
    wigner_projection,
)


def test_shift_submatrix_block_selection():
    s = random_symplectic(3, 2)  # Sp(4) = doubled phase space for d = 1
    e = shift_submatrix(s)
    m = s.mat
    assert np.array_equal(e[:1, :1], m[0:1, 0:1])
    assert np.array_equal(e[:1, 1:], m[0:1, 2:3])
    assert np.array_equal(e[1:, :1], m[1:2, 0:1])
    assert np.array_equal(e[1:, 1:], m[1:2, 2:3])


def test_shift_submatrix_rejects_odd_block_count():
    with pytest.raises(ValueError, match="Sp\\(2d\\)"):
        shift_submatrix(random_symplectic(0, 1))


def test_wigner_matrix_shift_determinant_exact():
    for d in (1, 2):
        rep = shift_invertible(wigner_projection(d))
        assert rep.invertible
        assert rep.det == 2.0 ** (-2 * d)
        assert np.array_equal(rep.entries, 0.5 * np.eye(2 * d))
    rep3 = shift_invertible(wigner_projection(3))
    assert abs(rep3.det - 2.0**-6) < 1e-16


def test_rihacek_matrix_not_shift_invertible():
    rep = shift_invertible(rihacek_projection(1))
    assert not rep.invertible
    assert rep.det == 0.0
    assert rep.sigma_min == 0.0


def test_stft_matrix_is_shift_invertible():
    rep = shift_invertible(stft_projection(1))
    assert rep.invertible
    assert abs(abs(rep.det) - 1.0) < 1e-12


def test_admissible_range_wigner_and_rihacek():
    assert admissible_shift_range(wigner_projection(1)) == 1.0
    assert admissible_shift_range(rihacek_projection(1)) == np.inf


def test_shift_perturb_identities_and_freeness():
    s = rihacek_projection(1)
    for tau in (1e-1, 1e-2, 1e-3, 1e-4):
        s_tau, xi_tau, theta_tau = shift_perturb(s, tau)
        assert np.abs(xi_tau.mat @ s.mat - s_tau.mat).max() < 1e-10
        assert np.abs(s.mat @ theta_tau.mat - s_tau.mat).max() < 1e-10
        assert is_free(xi_tau)
        assert shift_invertible(s_tau).invertible
        # Theta never uses an interchange: its recomposition has the
        # lower-left-free structure of chirp/dilation/multiplier products
        assert np.abs(theta_tau.mat).max() < 10.0


def test_shift_perturb_converges_to_identity():
    s = rihacek_projection(1)
    gaps = []
    for tau in (1e-1, 1e-2, 1e-3, 1e-4):
        _, xi_tau, _ = shift_perturb(s, tau)
        gaps.append(np.abs(xi_tau.mat - np.eye(4)).max())
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3


def test_shift_perturb_rejects_out_of_range_tau():
    s = wigner_projection(1)  # admissible range is (0, 1)
    with pytest.raises(ValueError):
        shift_perturb(s, 1.5)
    with pytest.raises(ValueError):
        shift_perturb(s, 0.0)
    with pytest.raises(ValueError):
        shift_perturb(s, -0.25)
    s_tau, _, _ = shift_perturb(s, 0.5)
    assert shift_invertible(s_tau).invertible


def test_wigner_split_recomposes_and_det_one_coupling():
    for seed in (1, 2, 3, 4):
        for d in (1, 2):
            s = random_symplectic(seed, 2 * d)
            split = wigner_split(s)
            comp = split.compose()
            scale = max(1.0, np.abs(s.mat).max())
            assert np.abs(comp.mat - s.mat).max() < 1e-9 * scale
            assert abs(np.linalg.det(split.M) - 1.0) < 1e-9
            # the declared block-diagonal parts genuinely are block diagonal
            assert np.abs(split.Q_diag[:d, d:]).max() == 0.0
            assert np.abs(split.P_diag[d:, :d]).max() == 0.0


def test_wigner_split_of_wigner_matrix_has_trivial_chirps():
    split = wigner_split(wigner_projection(1))
    assert np.abs(split.Q_diag).max() == 0.0
    assert np.abs(split.P_diag).max() == 0.0
    assert abs(np.linalg.det(split.M) - 1.0) < 1e-12
