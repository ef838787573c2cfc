"""Monte-Carlo block-error simulation of the differential scheme.

A frame sends an identity reference block followed by ``frame_len``
differentially encoded codewords over one Rayleigh channel realization:
R_t = sqrt(rho) S_t H + W_t with S_t = Psi_{l_t} S_{t-1}, S_0 = I.  The
receiver decodes each consecutive block pair without channel knowledge.

Frames are generated in fixed-size chunks, each seeded by
(seed, snr_index, chunk_index) with a fixed draw order (messages, then H,
then noise), so results are reproducible bit-for-bit regardless of the
worker count or decoder choice.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .decoders import exhaustive_batch, fast_real4_batch, fast_su2_batch, fast_v4_batch

__all__ = [
    "CHUNK_FRAMES",
    "MAX_BLOCKS_PER_POINT",
    "SimConfig",
    "BlerPoint",
    "sample_fading",
    "differential_encode",
    "transmit_block",
    "run_bler",
]

CHUNK_FRAMES = 512
MAX_BLOCKS_PER_POINT = 100_000

_FAST_FAMILIES = ("O", "V1", "V2", "V3", "real4-lift", "V4")


@dataclass(frozen=True)
class SimConfig:
    """Simulation setup for one constellation across a list of SNR points.

    ``blocks_per_point`` counts decoded codewords per SNR point (at least
    100 for a meaningful estimate, at most ``MAX_BLOCKS_PER_POINT``).
    ``decoder`` is "fast" (shell decoder, ring families only) or
    "exhaustive" (any family).
    """

    constellation: object
    n_rx: int
    snr_db_points: tuple
    blocks_per_point: int
    frame_len: int = 1
    seed: int = 0
    decoder: str = "fast"

    def __post_init__(self):
        object.__setattr__(self, "snr_db_points", tuple(float(s) for s in self.snr_db_points))
        if self.n_rx < 1:
            raise ValueError(f"need at least one receive antenna, got {self.n_rx}")
        if not self.snr_db_points:
            raise ValueError("need at least one SNR point")
        if not 100 <= self.blocks_per_point <= MAX_BLOCKS_PER_POINT:
            raise ValueError(
                f"blocks_per_point must be in [100, {MAX_BLOCKS_PER_POINT}], "
                f"got {self.blocks_per_point}")
        if self.frame_len < 1:
            raise ValueError(f"frame_len must be positive, got {self.frame_len}")
        if self.decoder not in ("fast", "exhaustive"):
            raise ValueError(f"decoder must be 'fast' or 'exhaustive', got {self.decoder!r}")
        if self.decoder == "fast" and self.constellation.family not in _FAST_FAMILIES:
            raise ValueError(
                f"no fast decoder for family {self.constellation.family!r}; "
                "use decoder='exhaustive'")


@dataclass(frozen=True)
class BlerPoint:
    """Estimated block-error rate at one SNR point with a 95% normal CI."""

    snr_db: float
    bler: float
    ci95_halfwidth: float
    trials: int
    errors: int


def _complex_normal(rng, shape):
    # CN(0, 1) entries: real and imaginary parts each N(0, 1/2)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(0.5)


def sample_fading(m, n_rx, rng):
    """One Rayleigh channel matrix, M x N with i.i.d. CN(0, 1) entries."""
    return _complex_normal(rng, (m, n_rx))


def differential_encode(constellation, indices):
    """Transmitted blocks [I, Psi_{i_1}, Psi_{i_2} Psi_{i_1}, ...]."""
    m = constellation.dimension
    out = np.empty((len(indices) + 1, m, m), dtype=np.complex128)
    out[0] = np.eye(m)
    for t, l in enumerate(indices):
        out[t + 1] = constellation.codewords[l] @ out[t]
    return out


def transmit_block(s, h, rho, rng):
    """Received block sqrt(rho) S H + W for one transmitted S."""
    s = np.asarray(s, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    return np.sqrt(rho) * (s @ h) + _complex_normal(rng, (s.shape[0], h.shape[1]))


def _decode_batch(x, y, constellation, decoder):
    if decoder == "exhaustive":
        return exhaustive_batch(x, y, constellation)[0]
    family = constellation.family
    if family == "real4-lift":
        return fast_real4_batch(x, y, constellation)[0]
    if family == "V4":
        return fast_v4_batch(x, y, constellation)[0]
    return fast_su2_batch(x, y, constellation)[0]


def _chunk_errors(config, snr_index, chunk_index, n_frames):
    rng = np.random.Generator(np.random.Philox(
        np.random.SeedSequence((config.seed, snr_index, chunk_index))))
    cw = config.constellation.codewords
    m = config.constellation.dimension
    n = config.n_rx
    t_len = config.frame_len
    rho = 10.0 ** (config.snr_db_points[snr_index] / 10.0)
    sqrt_rho = np.sqrt(rho)

    msgs = rng.integers(0, len(cw), size=(n_frames, t_len))
    h = _complex_normal(rng, (n_frames, m, n))
    w = _complex_normal(rng, (n_frames, t_len + 1, m, n))

    s = np.broadcast_to(np.eye(m, dtype=np.complex128), (n_frames, m, m))
    prev_r = sqrt_rho * h + w[:, 0]
    errors = 0
    for t in range(t_len):
        s = cw[msgs[:, t]] @ s
        cur_r = sqrt_rho * (s @ h) + w[:, t + 1]
        decoded = _decode_batch(prev_r, cur_r, config.constellation, config.decoder)
        errors += int(np.count_nonzero(decoded != msgs[:, t]))
        prev_r = cur_r
    return errors


def _resolve_workers(workers):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("GPSK_THREADS")
    if env:
        return max(1, int(env))
    return min(os.cpu_count() or 1, 8)


def run_bler(config, workers=None):
    """Estimate BLER at every configured SNR point.

    Chunks run on a thread pool (numpy releases the GIL in the hot paths);
    ``workers`` defaults to the GPSK_THREADS environment variable, then the
    CPU count capped at 8.  Returns one :class:`BlerPoint` per SNR point,
    in order.
    """
    frames_total = -(-config.blocks_per_point // config.frame_len)
    chunk_sizes = []
    left = frames_total
    while left > 0:
        take = min(CHUNK_FRAMES, left)
        chunk_sizes.append(take)
        left -= take
    trials = frames_total * config.frame_len

    tasks = [(si, ci, nf)
             for si in range(len(config.snr_db_points))
             for ci, nf in enumerate(chunk_sizes)]
    with ThreadPoolExecutor(max_workers=_resolve_workers(workers)) as pool:
        counts = list(pool.map(
            lambda args: _chunk_errors(config, *args), tasks))

    points = []
    per_point = len(chunk_sizes)
    for si, snr_db in enumerate(config.snr_db_points):
        errors = sum(counts[si * per_point:(si + 1) * per_point])
        p = errors / trials
        ci = 1.96 * np.sqrt(p * (1.0 - p) / trials)
        points.append(BlerPoint(snr_db=snr_db, bler=p, ci95_halfwidth=ci,
                                trials=trials, errors=errors))
    return points
