"""Family builders: sizes, roots, shell structure, designs, serialization."""

import numpy as np
import pytest

from gpsk.constellations import (Constellation, GpskClass, PskRing, RealShell,
                                 build_diag3, build_o, build_real8_product,
                                 build_v1, build_v2, build_v3, build_v4,
                                 design_basis, from_json, lift_real4,
                                 real4_design, real8_design, to_json, v1_root,
                                 v2_r, v3_shell_counts)
from gpsk.linalg import determinant, is_unitary

V3_SIZES = {3: 124, 4: 293, 5: 582, 6: 974, 7: 1640, 8: 2438, 9: 3510,
            10: 4898, 11: 6516, 12: 8433, 13: 10770}

V1_ROOTS = {4: 0.258819, 6: 0.284153, 8: 0.321263, 10: 0.355910, 12: 0.386318}


def test_ring_validation():
    with pytest.raises(ValueError):
        PskRing(1.5, 4)
    with pytest.raises(ValueError):
        PskRing(0.5, 0)
    with pytest.raises(ValueError):
        GpskClass(PskRing(1.0, 2), PskRing(0.5, 2))  # power 1.25
    with pytest.raises(ValueError):
        RealShell((0.5, 0.5, 0.5, 0.5), (1, 1, 1, 1))  # power 1, ok
        RealShell((0.9, 0.5, 0.5, 0.5), (1, 1, 1, 1))


def test_ring_points():
    ring = PskRing(0.5, 4, np.pi / 4)
    pts = ring.points()
    assert len(pts) == 4
    assert np.allclose(np.abs(pts), 0.5)
    assert pts[0] == pytest.approx(0.5 * np.exp(1j * np.pi / 4))


def test_build_o_sizes_and_entries():
    v = build_o(4)
    assert v.size == 16 and v.dimension == 2
    amp = np.sqrt(2) / 2
    # a-phase-major ordering: index = ka*n + kb
    for ka, kb in ((0, 0), (1, 3), (2, 2)):
        cw = v.codewords[ka * 4 + kb]
        assert cw[0, 0] == pytest.approx(amp * np.exp(2j * np.pi * ka / 4))
        assert cw[0, 1] == pytest.approx(amp * np.exp(2j * np.pi * kb / 4))
        assert cw[1, 0] == pytest.approx(-np.conj(cw[0, 1]))
        assert cw[1, 1] == pytest.approx(np.conj(cw[0, 0]))
    assert build_o(2).size == 4
    assert np.allclose(build_o(2).codewords.imag, 0)
    with pytest.raises(ValueError):
        build_o(1)


def test_v1_root_frozen_values():
    for n, want in V1_ROOTS.items():
        r = v1_root(n)
        assert r == pytest.approx(want, abs=1e-6)
        # root of the defining equation, residual at solver tolerance
        f = ((np.sqrt(2) / 2 - r) ** 2
             + (np.sqrt(2) / 2 - np.sqrt(1 - r * r)) ** 2
             - 4 * r * r * np.sin(2 * np.pi / n) ** 2)
        assert abs(f) < 1e-12


def test_build_v1_structure():
    v = build_v1(6)
    assert v.size == 72  # 2n^2
    assert len(v.shells) == 3
    amps = [(s.a_ring.amplitude, s.b_ring.amplitude) for s in v.shells]
    r = v1_root(6)
    assert amps[0] == pytest.approx((np.sqrt(2) / 2, np.sqrt(2) / 2))
    assert amps[1] == pytest.approx((r, np.sqrt(1 - r * r)))
    assert amps[2] == pytest.approx((np.sqrt(1 - r * r), r))
    with pytest.raises(ValueError):
        build_v1(5)
    with pytest.raises(ValueError):
        build_v1(2)


def test_v2_r_values():
    assert v2_r(4) == pytest.approx(0.383, abs=5e-4)
    assert v2_r(10) == pytest.approx(0.479, abs=5e-4)
    assert v2_r(64) == pytest.approx(0.659890, abs=1e-6)
    assert v2_r(10 ** 6) == pytest.approx(np.sqrt(2) / 2, abs=1e-5)


def test_build_v2_structure():
    n = 8
    m = n // 2
    v = build_v2(n)
    assert v.size == n * n
    assert len(v.shells) == 4
    assert all(s.size == m * m for s in v.shells)
    r = v2_r(n)
    q = np.sqrt(1 - r * r)
    pairs = [(s.a_ring, s.b_ring) for s in v.shells]
    assert pairs[0][0].amplitude == pytest.approx(r)
    assert pairs[0][1].amplitude == pytest.approx(q)
    assert pairs[0][1].phase_offset == pytest.approx(np.pi / m)
    assert pairs[1][0].amplitude == pytest.approx(q)
    assert pairs[1][0].phase_offset == pytest.approx(np.pi / m)
    assert pairs[2][0].amplitude == pytest.approx(q)
    assert pairs[2][0].phase_offset == pytest.approx(0.0)
    assert pairs[2][1].amplitude == pytest.approx(r)
    assert pairs[2][1].phase_offset == pytest.approx(np.pi / m)
    assert pairs[3][0].phase_offset == pytest.approx(np.pi / m)
    assert pairs[3][1].phase_offset == pytest.approx(0.0)
    with pytest.raises(ValueError):
        build_v2(7)


def test_v3_shell_counts():
    nk, mk = v3_shell_counts(3)
    assert nk == [1, 5, 10, 12]
    assert mk == [12, 10, 5, 1]
    assert sum(a * b for a, b in zip(nk, mk)) == 124
    nk, mk = v3_shell_counts(8)
    assert nk[0] == 1 and mk[-1] == 1
    assert sum(a * b for a, b in zip(nk, mk)) == 2438


def test_build_v3_sizes():
    for n in (3, 5, 13):
        assert build_v3(n).size == V3_SIZES[n]
    v = build_v3(10)
    assert v.size == 4898
    assert len(v.shells) == 11


def test_codewords_distinct():
    for v in (build_o(6), build_v1(6), build_v2(8), build_v3(4), build_v4(2)):
        flat = np.round(v.codewords.reshape(v.size, -1), 10)
        assert len(np.unique(flat, axis=0)) == v.size


def test_unitarity_all_families():
    builds = [build_o(5), build_v1(8), build_v2(6), build_v3(4), build_diag3(),
              lift_real4(build_o(4)), build_real8_product(build_o(4), build_o(4)),
              build_v4(2)]
    for v in builds:
        for cw in v.codewords:
            assert is_unitary(cw, tol=1e-12)


def test_real4_design_orthogonality():
    rng = np.random.default_rng(8)
    for _ in range(100):
        s = rng.standard_normal(4)
        m = real4_design(s)
        assert np.allclose(m @ m.T, np.sum(s * s) * np.eye(4), atol=1e-12)
    assert np.allclose(real4_design([1, 0, 0, 0]), np.eye(4))


def test_real8_design_properties():
    rng = np.random.default_rng(9)
    assert np.allclose(real8_design([1, 0, 0, 0, 0, 0, 0, 0]), np.eye(8))
    for _ in range(50):
        s = rng.standard_normal(8)
        m = real8_design(s)
        p = np.sum(s * s)
        assert np.allclose(m @ m.T, p * np.eye(8), atol=1e-11)
        assert abs(determinant(m)) == pytest.approx(p ** 4, rel=1e-9)
    u = rng.standard_normal(8)
    assert is_unitary(real8_design(u / np.linalg.norm(u)), tol=1e-10)


def test_design_basis_columns():
    for dim in (4, 8):
        basis = design_basis(dim)
        assert basis.shape == (dim, dim, dim)
        s = np.arange(1.0, dim + 1.0)
        want = real4_design(s) if dim == 4 else real8_design(s)
        assert np.allclose(sum(s[j] * basis[j] for j in range(dim)), want)


def test_lift_real4_identity_codeword():
    v = build_v3(4)
    lifted = lift_real4(v)
    # the k=n shell holds a codeword with a=1, b=0; its lift is I4
    where = np.flatnonzero((np.abs(v.params[:, 0] - 1) < 1e-12)
                           & (np.abs(v.params[:, 1]) < 1e-12))
    assert len(where) == 1
    assert np.allclose(lifted.codewords[where[0]], np.eye(4), atol=1e-12)
    assert lifted.size == v.size and lifted.dimension == 4
    assert lifted.shells == v.shells
    with pytest.raises(ValueError):
        lift_real4(lifted)


def test_real8_product_count():
    v = build_real8_product(build_o(4), build_o(4))
    assert v.size == 256 and v.dimension == 8
    assert len(v.shells) == 1
    with pytest.raises(ValueError):
        build_real8_product(build_o(4), lift_real4(build_o(4)))


def test_v4_sizes_and_packing():
    assert build_v4(1).size == 6
    v = build_v4(2)
    assert v.size == 103
    assert len(v.shells) == 7
    # packing guarantee: squared s-distance >= 4 sin^2(pi/4n), min attained
    d2 = np.sum((v.params[:, None, :] - v.params[None, :, :]) ** 2, axis=2)
    d2[np.diag_indices(103)] = np.inf
    floor = 4 * np.sin(np.pi / 8) ** 2
    assert d2.min() >= floor - 1e-12
    assert d2.min() == pytest.approx(floor, abs=1e-9)


def test_diag3():
    v = build_diag3()
    assert v.size == 3 and v.dimension == 2
    for k, cw in enumerate(v.codewords):
        assert np.allclose(cw, np.exp(2j * np.pi * k / 3) * np.eye(2))


def test_json_round_trip():
    v = build_v2(6)
    text = to_json(v)
    back = from_json(text)
    assert back.family == v.family and back.dimension == v.dimension
    assert np.array_equal(back.codewords, v.codewords)


def test_json_rejects_bad_shape():
    v = build_o(2)
    import json
    blob = json.loads(to_json(v))
    blob["codewords"][0] = blob["codewords"][0][:-1]
    with pytest.raises(ValueError):
        from_json(json.dumps(blob))


def test_codewords_read_only():
    v = build_o(4)
    with pytest.raises(ValueError):
        v.codewords[0, 0, 0] = 0
