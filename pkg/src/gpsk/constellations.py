"""Construction of generalized-PSK unitary constellations.

Families
--------
``O``              Alamouti-normalized PSK pairs, n^2 codewords, one shell.
``V1``             three-shell refinement of O with an inner ring whose
                   radius solves a distance-balancing equation, 2 n^2 codewords.
``V2``             four-shell family with a closed-form radius, n^2 codewords.
``V3``             (n+1)-shell family packing the unit sphere in C^2,
                   shell sizes chosen from a minimum-distance budget.
``V4``             8-dimensional packing of the unit sphere in C^4 through
                   a real orthogonal design, built shell by shell in polar
                   coordinates.
``diag3``          the three scaled-identity matrices {I, wI, w^2 I}, w = e^{2pi i/3}.
``real4-lift``     any 2-dim family lifted to 4x4 real orthogonal blocks.
``real8-product``  the product of two 2-dim families lifted to 8x8 blocks.

All codewords are unitary.  A 2-dim codeword is [[a, b], [-conj(b), conj(a)]]
with |a|^2 + |b|^2 = 1; a and b live on PSK rings (fixed amplitude, evenly
spaced phases).  The 4- and 8-dim families are real orthogonal designs in the
coefficient vector s, ``S(s) S(s)^T = (sum s_j^2) I``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PskRing",
    "GpskClass",
    "RealShell",
    "Constellation",
    "build_o",
    "v1_root",
    "build_v1",
    "v2_r",
    "build_v2",
    "v3_shell_counts",
    "build_v3",
    "build_diag3",
    "real4_design",
    "real8_design",
    "lift_real4",
    "build_real8_product",
    "build_v4",
    "to_json",
    "from_json",
]


@dataclass(frozen=True)
class PskRing:
    """A PSK ring: ``amplitude * exp(i(phase_offset + 2 pi k / count))``."""

    amplitude: float
    count: int
    phase_offset: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.amplitude <= 1.0:
            raise ValueError(f"ring amplitude must be in [0, 1], got {self.amplitude}")
        if self.count < 1:
            raise ValueError(f"ring needs at least one point, got count={self.count}")

    def points(self):
        k = np.arange(self.count)
        return self.amplitude * np.exp(1j * (self.phase_offset + 2 * np.pi * k / self.count))


@dataclass(frozen=True)
class GpskClass:
    """One shell of a 2-dim family: a PSK ring for a and one for b."""

    a_ring: PskRing
    b_ring: PskRing

    def __post_init__(self):
        power = self.a_ring.amplitude ** 2 + self.b_ring.amplitude ** 2
        if abs(power - 1.0) > 1e-12:
            raise ValueError(f"shell power {power} != 1")

    @property
    def size(self):
        return self.a_ring.count * self.b_ring.count


@dataclass(frozen=True)
class RealShell:
    """One shell of an 8-dim family: four coordinate rings in C^4."""

    amplitudes: tuple
    phase_counts: tuple
    phase_offsets: tuple = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.amplitudes) != 4 or len(self.phase_counts) != 4:
            raise ValueError("RealShell holds exactly four coordinate rings")
        if any(a < 0 for a in self.amplitudes):
            raise ValueError("ring amplitudes must be nonnegative")
        if any(c < 1 for c in self.phase_counts):
            raise ValueError("phase counts must be positive")
        power = sum(a * a for a in self.amplitudes)
        if abs(power - 1.0) > 1e-12:
            raise ValueError(f"shell power {power} != 1")

    @property
    def size(self):
        return int(np.prod(self.phase_counts))


@dataclass(frozen=True)
class Constellation:
    """An indexed family of unitary codeword blocks.

    Attributes
    ----------
    family : str
        One of O, V1, V2, V3, V4, diag3, real4-lift, real8-product.
    dimension : int
        Block side M (2, 4 or 8).
    codewords : ndarray
        (L, M, M) complex stack; row-major index order is shell by shell,
        a-phase-major then b-phase (gamma_1 ... gamma_4 lexicographic for V4).
    shells : tuple
        GpskClass entries for 2-dim and lifted families, RealShell for V4
        and products, empty when no shell structure applies (diag3).
    build_params : dict
        Construction inputs (n, radii, ...).
    params : ndarray or None
        Per-codeword coordinates used for closed-form distance work:
        (L, 2) complex (a, b) for SU(2)-type families, (L, 4) or (L, 8)
        real design coefficients for the lifted families.
    """

    family: str
    dimension: int
    codewords: np.ndarray
    shells: tuple = ()
    build_params: dict = field(default_factory=dict)
    params: np.ndarray = None

    def __post_init__(self):
        self.codewords.setflags(write=False)
        if self.params is not None:
            self.params.setflags(write=False)

    def __len__(self):
        return self.codewords.shape[0]

    @property
    def size(self):
        return self.codewords.shape[0]


def _su2_stack(ab):
    """Map (L, 2) complex (a, b) pairs to the (L, 2, 2) SU(2)-form stack."""
    a, b = ab[:, 0], ab[:, 1]
    out = np.empty((ab.shape[0], 2, 2), dtype=np.complex128)
    out[:, 0, 0] = a
    out[:, 0, 1] = b
    out[:, 1, 0] = -np.conj(b)
    out[:, 1, 1] = np.conj(a)
    return out


def _from_shells(family, shells, build_params):
    ab = []
    for shell in shells:
        pa = shell.a_ring.points()
        pb = shell.b_ring.points()
        grid_a = np.repeat(pa, len(pb))
        grid_b = np.tile(pb, len(pa))
        ab.append(np.stack([grid_a, grid_b], axis=1))
    ab = np.concatenate(ab, axis=0)
    return Constellation(
        family=family,
        dimension=2,
        codewords=_su2_stack(ab),
        shells=tuple(shells),
        build_params=build_params,
        params=ab,
    )


def build_o(n):
    """Alamouti-normalized PSK family: a, b over sqrt(2)/2 times n-th roots."""
    if n < 2:
        raise ValueError(f"build_o needs n >= 2, got {n}")
    r = np.sqrt(2) / 2
    shell = GpskClass(PskRing(r, n), PskRing(r, n))
    return _from_shells("O", [shell], {"n": n})


def v1_root(n, tol=1e-13):
    """Inner-ring radius of V1(n): the root in (0, sqrt(2)/2) of

        (sqrt2/2 - r)^2 + (sqrt2/2 - sqrt(1-r^2))^2 = 4 r^2 sin^2(2 pi / n).

    Bisection until both the bracket width and |f| fall below ``tol``;
    uniqueness of the sign change is checked on a 10^4-point grid.
    """
    if n < 4 or n % 2:
        raise ValueError(f"v1_root needs even n >= 4, got {n}")
    half = np.sqrt(2) / 2

    def f(r):
        return (half - r) ** 2 + (half - np.sqrt(1 - r * r)) ** 2 \
            - 4 * r * r * np.sin(2 * np.pi / n) ** 2

    grid = np.linspace(1e-9, half - 1e-9, 10_000)
    signs = np.sign(f(grid))
    changes = np.count_nonzero(np.diff(signs))
    if changes != 1:
        raise RuntimeError(f"expected a unique root, found {changes} sign changes")

    lo, hi = 1e-9, half - 1e-9
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo <= tol and abs(f(0.5 * (lo + hi))) <= tol:
            return 0.5 * (lo + hi)
    raise RuntimeError("bisection failed to reach tolerance")


def build_v1(n):
    """Three-shell family refining O(n); 2 n^2 codewords."""
    if n < 4 or n % 2:
        raise ValueError(f"build_v1 needs even n >= 4, got {n}")
    r = v1_root(n)
    half = np.sqrt(2) / 2
    outer = np.sqrt(1 - r * r)
    shells = [
        GpskClass(PskRing(half, n), PskRing(half, n)),
        GpskClass(PskRing(r, n // 2), PskRing(outer, n)),
        GpskClass(PskRing(outer, n), PskRing(r, n // 2)),
    ]
    return _from_shells("V1", shells, {"n": n, "r": r})


def v2_r(n):
    """Closed-form inner radius of V2(n), with m = n/2:

        r = 1 / sqrt(2 sin^2(pi/m) + 2 sqrt(2) sin(pi/m) + 2).
    """
    if n < 4 or n % 2:
        raise ValueError(f"v2_r needs even n >= 4, got {n}")
    s = np.sin(np.pi / (n // 2))
    return 1.0 / np.sqrt(2 * s * s + 2 * np.sqrt(2) * s + 2)


def build_v2(n):
    """Four-shell family with offset rings; n^2 codewords."""
    if n < 4 or n % 2:
        raise ValueError(f"build_v2 needs even n >= 4, got {n}")
    m = n // 2
    r = v2_r(n)
    outer = np.sqrt(1 - r * r)
    off = np.pi / m
    a1 = PskRing(r, m)
    a2 = PskRing(outer, m, off)
    a3 = PskRing(outer, m)
    a4 = PskRing(r, m, off)
    shells = [GpskClass(a1, a2), GpskClass(a2, a1), GpskClass(a3, a4), GpskClass(a4, a3)]
    return _from_shells("V2", shells, {"n": n, "r": r})


def v3_shell_counts(n):
    """Phase counts (N_k, M_k) for the n+1 shells of V3(n).

    Shell k has a-amplitude cos((n-k) pi / 2n) with N_k phases and
    b-amplitude sin((n-k) pi / 2n) with M_k phases, where the counts are
    the largest integers whose ring spacing keeps the chord at least
    2 sin(pi / 4n).  The end shells are degenerate: N_0 = 1 and M_n = 1.
    A 1e-9 epsilon inside the floor guards the exact-integer boundary
    (k = 0 and k = n give exactly 4n).
    """
    if n < 1:
        raise ValueError(f"v3_shell_counts needs n >= 1, got {n}")
    q = np.sin(np.pi / (4 * n))
    nk, mk = [], []
    for k in range(n + 1):
        half_angle = (n - k) * np.pi / (2 * n)
        if k == 0:
            nk.append(1)
        else:
            nk.append(int(np.floor(np.pi / np.arcsin(q / np.cos(half_angle)) + 1e-9)))
        if k == n:
            mk.append(1)
        else:
            mk.append(int(np.floor(np.pi / np.arcsin(q / np.sin(half_angle)) + 1e-9)))
    return nk, mk


def build_v3(n):
    """(n+1)-shell sphere packing in C^2; all phase offsets zero."""
    nk, mk = v3_shell_counts(n)
    shells = []
    for k in range(n + 1):
        half_angle = (n - k) * np.pi / (2 * n)
        # cos(pi/2) lands at +-1e-16 in floats; the exact value is in [0, 1]
        amp_a = float(np.clip(np.cos(half_angle), 0.0, 1.0))
        amp_b = float(np.clip(np.sin(half_angle), 0.0, 1.0))
        shells.append(GpskClass(PskRing(amp_a, nk[k]), PskRing(amp_b, mk[k])))
    return _from_shells("V3", shells, {"n": n})


def build_diag3():
    """{I, wI, w^2 I} with w = exp(2 pi i / 3); not of SU(2) form."""
    w = np.exp(2j * np.pi / 3)
    codewords = np.stack([np.eye(2) * w ** k for k in range(3)]).astype(np.complex128)
    return Constellation(family="diag3", dimension=2, codewords=codewords,
                         build_params={})


# --- real orthogonal designs ---------------------------------------------
# Encoded as signed 1-based coefficient indices: entry (i, k) = sign * s_j.

_DESIGN4 = np.array([
    [+1, +2, +3, +4],
    [-2, +1, -4, +3],
    [-3, +4, +1, -2],
    [-4, -3, +2, +1],
])

_DESIGN8 = np.array([
    [+1, +2, +3, +4, +5, +6, +7, +8],
    [-2, +1, +4, -3, +6, -5, -8, +7],
    [-3, -4, +1, +2, +7, +8, -5, -6],
    [-4, +3, -2, +1, +8, -7, +6, -5],
    [-5, -6, -7, -8, +1, +2, +3, +4],
    [-6, +5, -8, +7, -2, +1, -4, +3],
    [-7, +8, +5, -6, -3, +4, +1, -2],
    [-8, -7, +6, +5, -4, -3, +2, +1],
])


def _apply_design(design, svecs):
    svecs = np.atleast_2d(np.asarray(svecs, dtype=float))
    out = np.sign(design)[None, :, :] * svecs[:, np.abs(design) - 1]
    return out


def real4_design(s):
    """4x4 real orthogonal design in s = (s1..s4); S S^T = (sum s^2) I."""
    return _apply_design(_DESIGN4, s)[0]


def real8_design(s):
    """8x8 real orthogonal design in s = (s1..s8); S S^T = (sum s^2) I."""
    return _apply_design(_DESIGN8, s)[0]


def design_basis(dim):
    """The dim constant matrices E_j = S(e_j) of the dim-dim design."""
    design = _DESIGN4 if dim == 4 else _DESIGN8
    return _apply_design(design, np.eye(dim))


def lift_real4(source):
    """Lift a 2-dim family to 4x4 real orthogonal blocks.

    Codeword (a, b) maps to the design coefficients
    s = (Re a, Im a, Re b, Im b); ring radii are reused verbatim and the
    shell metadata is carried over.
    """
    if source.dimension != 2 or source.params is None:
        raise ValueError("lift_real4 needs a 2-dim shell-structured family")
    ab = source.params
    svecs = np.column_stack([ab[:, 0].real, ab[:, 0].imag, ab[:, 1].real, ab[:, 1].imag])
    codewords = _apply_design(_DESIGN4, svecs).astype(np.complex128)
    return Constellation(
        family="real4-lift",
        dimension=4,
        codewords=codewords,
        shells=source.shells,
        build_params={"source": source.family, **source.build_params},
        params=svecs,
    )


def build_real8_product(v, w):
    """Product of two 2-dim families on 8x8 real orthogonal blocks.

    The pair ((a, b), (c, d)) maps to
    s = (Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d) / sqrt(2);
    the v-index varies slower than the w-index.
    """
    if v.dimension != 2 or w.dimension != 2 or v.params is None or w.params is None:
        raise ValueError("build_real8_product needs two 2-dim shell-structured families")
    ab = np.repeat(v.params, len(w), axis=0)
    cd = np.tile(w.params, (len(v), 1))
    svecs = np.column_stack([
        ab[:, 0].real, ab[:, 0].imag, ab[:, 1].real, ab[:, 1].imag,
        cd[:, 0].real, cd[:, 0].imag, cd[:, 1].real, cd[:, 1].imag,
    ]) / np.sqrt(2)
    shells = []
    for sv in v.shells:
        for sw in w.shells:
            shells.append(RealShell(
                amplitudes=tuple(r.amplitude / np.sqrt(2) for r in
                                 (sv.a_ring, sv.b_ring, sw.a_ring, sw.b_ring)),
                phase_counts=(sv.a_ring.count, sv.b_ring.count,
                              sw.a_ring.count, sw.b_ring.count),
                phase_offsets=(sv.a_ring.phase_offset, sv.b_ring.phase_offset,
                               sw.a_ring.phase_offset, sw.b_ring.phase_offset),
            ))
    codewords = _apply_design(_DESIGN8, svecs).astype(np.complex128)
    return Constellation(
        family="real8-product",
        dimension=8,
        codewords=codewords,
        shells=tuple(shells),
        build_params={"factors": (v.family, w.family),
                      "n": None,
                      "factor_params": (v.build_params, w.build_params)},
        params=svecs,
    )


def _v4_largest_theta_count(residual, threshold):
    # Largest m >= 1 with residual * sin^2(pi/(4m)) strictly above the
    # threshold; 0 when even m = 1 fails (the theta level then collapses
    # to the single value 0).  Float equality counts as non-strict.
    m = 0
    while residual * np.sin(np.pi / (4 * (m + 1))) ** 2 > threshold * (1 + 1e-9):
        m += 1
    return m


def _v4_phase_count(amplitude, threshold):
    # Largest n_j >= 1 whose ring chord 2|z| sin(pi/n_j) stays strictly
    # above the distance budget; a dead coordinate (amplitude ~ 0) or a
    # tight one keeps the single phase point 0.
    k = 1
    while amplitude ** 2 * np.sin(np.pi / (k + 1)) ** 2 > threshold * (1 + 1e-9):
        k += 1
    return k


def build_v4(n):
    """8-dim polar-coordinate packing of the unit sphere in C^4.

    theta_1 runs over n+1 even values in [0, pi/2]; each deeper theta level
    gets the largest grid that keeps amplitude chords strictly above
    2 sin(pi/4n), and each coordinate gets the largest phase ring that does
    the same.  Minimum distance 2 sin(pi/4n) is attained across theta
    levels, giving diversity product sin(pi/4n).
    """
    if n < 1:
        raise ValueError(f"build_v4 needs n >= 1, got {n}")
    thr = np.sin(np.pi / (4 * n)) ** 2
    shells = []
    for k1 in range(n + 1):
        t1 = k1 * np.pi / (2 * n)
        m2 = _v4_largest_theta_count(np.sin(t1) ** 2, thr)
        for k2 in range(m2 + 1) if m2 else (0,):
            t2 = k2 * np.pi / (2 * m2) if m2 else 0.0
            res2 = np.sin(t1) ** 2 * np.sin(t2) ** 2
            m3 = _v4_largest_theta_count(res2, thr)
            for k3 in range(m3 + 1) if m3 else (0,):
                t3 = k3 * np.pi / (2 * m3) if m3 else 0.0
                amps = tuple(float(np.clip(a, 0.0, 1.0)) for a in (
                    np.cos(t1),
                    np.sin(t1) * np.cos(t2),
                    np.sin(t1) * np.sin(t2) * np.cos(t3),
                    np.sin(t1) * np.sin(t2) * np.sin(t3),
                ))
                counts = tuple(_v4_phase_count(a, thr) for a in amps)
                shells.append(RealShell(amplitudes=amps, phase_counts=counts))
    svecs = []
    for shell in shells:
        grids = [np.arange(c) * 2 * np.pi / c for c in shell.phase_counts]
        for g1 in grids[0]:
            for g2 in grids[1]:
                for g3 in grids[2]:
                    for g4 in grids[3]:
                        z = [a * np.exp(1j * g) for a, g in
                             zip(shell.amplitudes, (g1, g2, g3, g4))]
                        svecs.append([z[0].real, z[0].imag, z[1].real, z[1].imag,
                                      z[2].real, z[2].imag, z[3].real, z[3].imag])
    svecs = np.array(svecs)
    codewords = _apply_design(_DESIGN8, svecs).astype(np.complex128)
    return Constellation(
        family="V4",
        dimension=8,
        codewords=codewords,
        shells=tuple(shells),
        build_params={"n": n},
        params=svecs,
    )


# --- serialization ---------------------------------------------------------

def to_json(constellation):
    """Serialize to the interchange schema

    ``{family, n, M, L, codewords: [[[re, im], ...] row-major]}``.
    """
    cw = constellation.codewords
    flat = np.stack([cw.real.reshape(len(cw), -1), cw.imag.reshape(len(cw), -1)], axis=-1)
    return json.dumps({
        "family": constellation.family,
        "n": constellation.build_params.get("n"),
        "M": constellation.dimension,
        "L": constellation.size,
        "codewords": flat.tolist(),
    })


def from_json(text):
    """Rebuild a Constellation from :func:`to_json` output.

    Shell metadata and design coefficients are not part of the schema, so
    the result supports only generic (codeword-level) operations.
    """
    doc = json.loads(text)
    m = int(doc["M"])
    flat = np.asarray(doc["codewords"], dtype=float)
    if flat.shape != (doc["L"], m * m, 2):
        raise ValueError(f"malformed codeword array with shape {flat.shape}")
    codewords = (flat[..., 0] + 1j * flat[..., 1]).reshape(-1, m, m)
    params = doc.get("n")
    return Constellation(
        family=doc["family"],
        dimension=m,
        codewords=codewords,
        build_params={} if params is None else {"n": params},
    )
