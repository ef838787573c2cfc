"""Small-matrix kernels against numpy oracles and exact cases."""

import numpy as np
import pytest

from gpsk.linalg import (determinant, frobenius_norm, is_unitary, mat_mul,
                         singular_values)
from gpsk.constellations import build_o, build_v3, real4_design


def _rand_c(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_mat_mul_identity_and_diag():
    rng = np.random.default_rng(0)
    x = _rand_c(rng, (2, 2))
    assert np.allclose(mat_mul(np.eye(2), x), x)
    d = np.diag([1j, 1j])
    assert np.allclose(mat_mul(d, d), np.diag([-1, -1]))


def test_mat_mul_unitary_inverse():
    rng = np.random.default_rng(1)
    a = _rand_c(rng, (2, 2))
    q, _ = np.linalg.qr(_rand_c(rng, (2, 2)))
    assert np.allclose(mat_mul(mat_mul(a, q), q.conj().T), a, atol=1e-12)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_mul(np.ones((2, 3)), np.ones((2, 3)))


def test_frobenius_norm_cases():
    assert frobenius_norm(np.zeros((4, 4))) == 0.0
    assert frobenius_norm(np.eye(2)) == pytest.approx(np.sqrt(2))
    q, _ = np.linalg.qr(_rand_c(np.random.default_rng(2), (8, 8)))
    assert frobenius_norm(q) == pytest.approx(np.sqrt(8))


def test_determinant_exact_cases():
    assert determinant(np.eye(4)) == pytest.approx(1.0)
    a, b = 0.6 + 0.3j, complex(np.sqrt(1 - 0.45), 0.0)
    su2 = np.array([[a, b], [-np.conj(b), np.conj(a)]])
    assert determinant(su2) == pytest.approx(1.0, abs=1e-12)


def test_determinant_design_difference():
    # S(s) - S(s') = S(ds), det = (sum ds_i^2)^2
    rng = np.random.default_rng(3)
    s, sp = rng.standard_normal(4), rng.standard_normal(4)
    d = determinant(real4_design(s) - real4_design(sp))
    assert d == pytest.approx(np.sum((s - sp) ** 2) ** 2, rel=1e-10)


def test_determinant_vs_numpy():
    rng = np.random.default_rng(4)
    for side in (2, 4, 8):
        for _ in range(50):
            a = _rand_c(rng, (side, side))
            assert determinant(a) == pytest.approx(np.linalg.det(a), rel=1e-10)


def test_determinant_singular():
    a = np.ones((4, 4), dtype=complex)
    assert abs(determinant(a)) < 1e-12


def test_singular_values_exact_cases():
    assert np.allclose(singular_values(np.eye(2)), [1.0, 1.0])
    assert np.allclose(singular_values(np.diag([3.0, 0.0])), [3.0, 0.0])


def test_singular_values_codeword_difference_scaled_unitary():
    v = build_o(4)
    d = v.codewords[0] - v.codewords[5]
    sv = singular_values(d)
    assert sv[0] == pytest.approx(sv[1], rel=1e-12)
    gram = d @ d.conj().T
    assert np.allclose(gram, gram[0, 0] * np.eye(2), atol=1e-12)


def test_singular_values_vs_numpy():
    rng = np.random.default_rng(5)
    for side in (2, 4, 8):
        for _ in range(30):
            a = _rand_c(rng, (side, side))
            want = np.linalg.svd(a, compute_uv=False)
            got = singular_values(a)
            assert np.allclose(got, want, atol=1e-9 * max(1.0, want[0]))


def test_singular_values_invariants():
    rng = np.random.default_rng(6)
    for side in (2, 4, 8):
        a = _rand_c(rng, (side, side))
        sv = singular_values(a)
        assert np.all(np.diff(sv) <= 1e-12)
        assert np.sum(sv ** 2) == pytest.approx(frobenius_norm(a) ** 2, rel=1e-10)
        assert abs(determinant(a)) == pytest.approx(np.prod(sv), rel=1e-9)


def test_singular_values_side_cap():
    with pytest.raises(ValueError):
        singular_values(np.eye(9))


def test_is_unitary():
    assert is_unitary(np.eye(8))
    assert not is_unitary(2 * np.eye(2))
    q, _ = np.linalg.qr(_rand_c(np.random.default_rng(7), (4, 4)))
    assert is_unitary(q)
    assert np.all(singular_values(q) == pytest.approx(1.0, abs=1e-9))


def test_is_unitary_whole_family():
    for cw in build_v3(5).codewords:
        assert is_unitary(cw)
