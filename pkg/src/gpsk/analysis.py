"""Diversity products, rates, and pairwise/union error bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constellations import Constellation, v1_root, v2_r
from .linalg import determinant, singular_values

__all__ = [
    "DiversityReport",
    "FULLY_DIVERSE_TOL",
    "diversity_product",
    "rate",
    "v1_dp_terms",
    "v1_analytic_dp",
    "v2_dp_terms",
    "v2_analytic_dp",
    "v3_analytic_dp",
    "pairwise_bound",
    "union_bound_bler",
]

#: |det| threshold below which a codeword pair counts as non-diverse
FULLY_DIVERSE_TOL = 1e-10

#: refuse exact pair enumeration beyond this size
_MAX_PAIR_ENUM = 12_000

#: pairs sampled when cross-checking the closed-form distance against the
#: determinant route
_CROSS_CHECK_PAIRS = 1000

_BOUND_MODES = ("differential", "coherent", "noncoherent")


@dataclass(frozen=True)
class DiversityReport:
    """Result of a diversity-product scan.

    ``value`` is min over pairs of (1/2) |det(A - B)|^(1/M); ``witness``
    is a pair of indices attaining it; ``fully_diverse`` is True when the
    witness determinant magnitude exceeds ``FULLY_DIVERSE_TOL``.
    """

    value: float
    witness: tuple
    fully_diverse: bool


def _param_coords(constellation):
    # Real coordinate matrix in which squared Euclidean distance equals
    # |det(A - B)|^(2/M); None when the family carries no such structure.
    p = constellation.params
    if p is None:
        return None
    if np.iscomplexobj(p):
        return np.column_stack([p[:, 0].real, p[:, 0].imag, p[:, 1].real, p[:, 1].imag])
    return np.asarray(p, dtype=float)


def _min_distance(coords):
    # Chunked exact nearest-pair scan; returns (min squared distance, (i, j)).
    n = coords.shape[0]
    sq = np.sum(coords * coords, axis=1)
    best, pair = np.inf, (0, 1)
    step = 512
    for start in range(0, n, step):
        stop = min(start + step, n)
        block = sq[start:stop, None] + sq[None, :] - 2.0 * (coords[start:stop] @ coords.T)
        cols = np.arange(n)[None, :]
        rows = np.arange(start, stop)[:, None]
        block[cols <= rows] = np.inf
        k = int(np.argmin(block))
        i, j = divmod(k, n)
        if block[i, j] < best:
            best = float(block[i, j])
            pair = (start + i, j)
    return max(best, 0.0), pair


def diversity_product(constellation):
    """Exact diversity product over all codeword pairs.

    Families built by this package carry per-codeword coordinates in which
    every difference A - B is a scaled unitary matrix, so
    (1/2)|det(A - B)|^(1/M) is half the Euclidean coordinate distance; the
    scan then runs on coordinates and a random sample of pairs is
    cross-checked against the determinant route.  Without coordinates the
    determinant is evaluated for every pair directly.
    """
    L = constellation.size
    if L < 2:
        raise ValueError("diversity product needs at least two codewords")
    if L > _MAX_PAIR_ENUM:
        raise ValueError(f"refusing exact pair enumeration for L={L} > {_MAX_PAIR_ENUM}")
    m = constellation.dimension
    coords = _param_coords(constellation)
    cw = constellation.codewords

    if coords is not None:
        d2, (i, j) = _min_distance(coords)
        value = 0.5 * np.sqrt(d2)
        rng = np.random.default_rng(12345)
        n_check = min(_CROSS_CHECK_PAIRS, L * (L - 1) // 2)
        for _ in range(n_check):
            p = int(rng.integers(L))
            q = int(rng.integers(L - 1))
            q += q >= p
            via_det = 0.5 * abs(determinant(cw[p] - cw[q])) ** (1.0 / m)
            closed = 0.5 * np.linalg.norm(coords[p] - coords[q])
            if abs(via_det - closed) > 1e-9:
                raise RuntimeError(
                    f"closed-form distance disagrees with determinant at pair "
                    f"({p}, {q}): {closed} vs {via_det}"
                )
        det_mag = (2.0 * value) ** m
    else:
        if m > 2 and L > 2048:
            raise ValueError(
                "pairwise determinant scan too large; rebuild the family to "
                "recover its coordinate structure"
            )
        if m == 2:
            det_mag, (i, j) = np.inf, (0, 1)
            step = 256
            for start in range(0, L, step):
                stop = min(start + step, L)
                diff = cw[start:stop, None, :, :] - cw[None, :, :, :]
                mags = np.abs(diff[..., 0, 0] * diff[..., 1, 1]
                              - diff[..., 0, 1] * diff[..., 1, 0])
                cols = np.arange(L)[None, :]
                rows = np.arange(start, stop)[:, None]
                mags[cols <= rows] = np.inf
                k = int(np.argmin(mags))
                p, q = divmod(k, L)
                if mags[p, q] < det_mag:
                    det_mag, (i, j) = float(mags[p, q]), (start + p, q)
        else:
            det_mag, (i, j) = np.inf, (0, 1)
            for p in range(L - 1):
                for q in range(p + 1, L):
                    mag = abs(determinant(cw[p] - cw[q]))
                    if mag < det_mag:
                        det_mag, (i, j) = mag, (p, q)
        value = 0.5 * det_mag ** (1.0 / m)

    return DiversityReport(
        value=float(value),
        witness=(int(i), int(j)),
        fully_diverse=bool(det_mag > FULLY_DIVERSE_TOL),
    )


def rate(constellation):
    """Transmission rate log2(L) / M in bits per channel use."""
    return float(np.log2(constellation.size) / constellation.dimension)


def v1_dp_terms(n):
    """Analytic diversity-product candidates for V1(n).

    Returns (r, within-shell term (sqrt2/2) sin(pi/n), cross-shell term);
    the V1 diversity product is the smaller of the two terms.
    """
    r = v1_root(n)
    within = np.sqrt(2) / 2 * np.sin(np.pi / n)
    cross = 0.5 * np.sqrt((np.sqrt(2) / 2 - r) ** 2
                          + (np.sqrt(2) / 2 - np.sqrt(1.0 - r * r)) ** 2)
    return float(r), float(within), float(cross)


def v1_analytic_dp(n):
    """Closed-form diversity product of V1(n)."""
    _, within, cross = v1_dp_terms(n)
    return min(within, cross)


def v2_dp_terms(n):
    """Analytic diversity-product candidates for V2(n).

    Returns (r, r sin(2 pi / n), sin(pi / n)); with the closed-form r the
    V2 diversity product is the smaller of the two terms.
    """
    r = v2_r(n)
    return float(r), float(r * np.sin(2 * np.pi / n)), float(np.sin(np.pi / n))


def v2_analytic_dp(n):
    """Closed-form diversity product of V2(n): half the square root of the
    minimum squared distance over the four shell-pair cases."""
    m = n // 2
    r = v2_r(n)
    q = np.sqrt(1.0 - r * r)
    cases = (
        4.0 * r * r * np.sin(np.pi / m) ** 2,
        2.0 * (1.0 - 2.0 * r * q * np.cos(np.pi / m)),
        2.0 * (1.0 - 2.0 * r * q),
        4.0 * np.sin(np.pi / (2 * m)) ** 2,
    )
    return float(0.5 * np.sqrt(min(cases)))


def v3_analytic_dp(n):
    """Closed-form diversity product of V3(n)."""
    return float(np.sin(np.pi / (4 * n)))


def _phi_form(psi):
    m = psi.shape[0]
    return np.sqrt(2) / 2 * np.vstack([np.eye(m), psi])


def pairwise_bound(a, b, rho, n_rx, mode="differential"):
    """Pairwise block-error bound for mistaking codeword ``a`` for ``b``.

    mode='differential' uses the singular values d_m of A - B:

        1/2 prod_m [1 + rho^2 d_m^2 / (4 (1 + 2 rho))]^(-N)

    mode='coherent' replaces the SNR factor by rho T / (4 M) with T = M.
    mode='noncoherent' works on the stacked two-block forms
    Phi = (sqrt2/2) [I; Psi] (T = 2M) through the singular values of
    Phi_a* Phi_b.
    """
    if mode not in _BOUND_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_BOUND_MODES}")
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    m = a.shape[0]
    if mode == "noncoherent":
        t = 2 * m
        delta = singular_values(_phi_form(a).conj().T @ _phi_form(b))
        gain = (rho * t / m) ** 2 / (4.0 * (1.0 + rho * t / m))
        factors = 1.0 + gain * (1.0 - delta ** 2)
    else:
        delta = singular_values(a - b)
        if mode == "differential":
            gain = rho ** 2 / (4.0 * (1.0 + 2.0 * rho))
        else:
            gain = rho * m / (4.0 * m)
        factors = 1.0 + gain * delta ** 2
    return float(0.5 * np.prod(factors ** (-float(n_rx))))


def union_bound_bler(constellation, rho, n_rx, mode="differential"):
    """Union bound on BLER: worst transmitted codeword's sum of pairwise
    bounds, clamped to 1."""
    if mode not in _BOUND_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_BOUND_MODES}")
    L = constellation.size
    if L < 2:
        raise ValueError("union bound needs at least two codewords")
    if L > _MAX_PAIR_ENUM:
        raise ValueError(f"refusing union bound for L={L} > {_MAX_PAIR_ENUM}")
    m = constellation.dimension
    coords = _param_coords(constellation)
    if coords is not None:
        # every pair difference is scaled-unitary: all M singular values
        # equal the coordinate distance, and for the stacked two-block form
        # 1 - d_m^2 = (coordinate distance)^2 / 4
        sq = np.sum(coords * coords, axis=1)
        d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (coords @ coords.T), 0.0)
        if mode == "differential":
            gain = rho ** 2 / (4.0 * (1.0 + 2.0 * rho))
            factors = 1.0 + gain * d2
        elif mode == "coherent":
            # rho * T / (4 M) with T = M
            factors = 1.0 + (rho / 4.0) * d2
        else:
            t = 2 * m
            gain = (rho * t / m) ** 2 / (4.0 * (1.0 + rho * t / m))
            factors = 1.0 + gain * (d2 / 4.0)
        bounds = 0.5 * factors ** (-float(m * n_rx))
        np.fill_diagonal(bounds, 0.0)
        worst = float(np.max(np.sum(bounds, axis=1)))
    else:
        if L > 512:
            raise ValueError(
                "per-pair union bound too large without coordinate structure; "
                "rebuild the family with its constructor"
            )
        worst = 0.0
        cw = constellation.codewords
        for p in range(L):
            total = 0.0
            for q in range(L):
                if q != p:
                    total += pairwise_bound(cw[p], cw[q], rho, n_rx, mode)
            worst = max(worst, total)
    return min(worst, 1.0)
