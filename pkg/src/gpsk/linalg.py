"""Dense complex matrix helpers for small (side <= 8) blocks.

Everything in this package works on plain numpy arrays of complex128.
Codeword blocks are square with side 2, 4 or 8; channel and noise
matrices may be rectangular.  The determinant and singular value
routines are self-contained so that their behaviour (pivoting order,
convergence threshold, sweep cap) is fixed and testable.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "mat_mul",
    "frobenius_norm",
    "determinant",
    "singular_values",
    "is_unitary",
]

#: sweep cap for the Jacobi eigenvalue iteration
JACOBI_MAX_SWEEPS = 100

#: relative off-diagonal mass at which the Jacobi iteration stops
JACOBI_TOL = 1e-12


def as_matrix(a):
    """Return ``a`` as a 2-D complex128 array (no copy when possible)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def mat_mul(a, b):
    """Matrix product with an explicit inner-dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def frobenius_norm(a):
    """Square root of the sum of squared entry magnitudes."""
    return float(np.linalg.norm(as_matrix(a)))


def determinant(a):
    """Determinant of a square matrix via partial-pivot elimination.

    For side 2 the closed form ``a*d - b*c`` is used.  Returns a complex
    scalar; an exactly singular pivot yields 0.
    """
    m = as_matrix(a)
    n, nc = m.shape
    if n != nc:
        raise ValueError(f"determinant needs a square matrix, got {m.shape}")
    if n == 1:
        return complex(m[0, 0])
    if n == 2:
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    m = m.copy()
    det = 1.0 + 0.0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if m[p, k] == 0:
            return 0.0j
        if p != k:
            m[[k, p]] = m[[p, k]]
            det = -det
        det *= m[k, k]
        m[k + 1:, k:] -= np.outer(m[k + 1:, k] / m[k, k], m[k, k:])
    return complex(det)


def _jacobi_eigvals(b):
    # Cyclic Jacobi on a Hermitian matrix; returns eigenvalues (unordered).
    b = b.copy()
    n = b.shape[0]
    scale = np.linalg.norm(b)
    if scale == 0:
        return np.zeros(n)
    for _ in range(JACOBI_MAX_SWEEPS):
        hollow = b.copy()
        np.fill_diagonal(hollow, 0.0)
        if np.linalg.norm(hollow) <= JACOBI_TOL * scale:
            return np.real(np.diag(b))
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = b[p, q]
                if abs(beta) <= 1e-15 * scale:
                    continue
                alpha = b[p, p].real
                gamma = b[q, q].real
                phase = beta / abs(beta)
                tau = (gamma - alpha) / (2.0 * abs(beta))
                t = np.sign(tau) if tau != 0 else 1.0
                t /= abs(tau) + np.hypot(1.0, tau)
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # unitary 2x2 block: diag(phase, 1) folded into a real Givens
                jpp, jpq = c * phase, s * phase
                jqp, jqq = -s, c
                col_p = b[:, p] * jpp + b[:, q] * jqp
                col_q = b[:, p] * jpq + b[:, q] * jqq
                b[:, p], b[:, q] = col_p, col_q
                row_p = np.conj(jpp) * b[p, :] + np.conj(jqp) * b[q, :]
                row_q = np.conj(jpq) * b[p, :] + np.conj(jqq) * b[q, :]
                b[p, :], b[q, :] = row_p, row_q
    raise RuntimeError(
        f"Jacobi iteration did not converge within {JACOBI_MAX_SWEEPS} sweeps"
    )


def singular_values(a):
    """Singular values of a square matrix of side <= 8, sorted descending.

    Computed as the square roots of the eigenvalues of ``A A*``, which are
    found by cyclic Jacobi sweeps run until the off-diagonal mass falls
    below 1e-12 of the matrix norm.  Raises ``RuntimeError`` if 100 sweeps
    do not converge.
    """
    m = as_matrix(a)
    n, nc = m.shape
    if n != nc:
        raise ValueError(f"singular_values needs a square matrix, got {m.shape}")
    if n > 8:
        raise ValueError(f"side {n} exceeds the supported maximum of 8")
    eig = _jacobi_eigvals(m @ m.conj().T)
    return np.sort(np.sqrt(np.clip(eig, 0.0, None)))[::-1]


def is_unitary(a, tol=1e-12):
    """True when ``||A* A - I||_F <= tol``."""
    m = as_matrix(a)
    n, nc = m.shape
    if n != nc:
        return False
    return float(np.linalg.norm(m.conj().T @ m - np.eye(n))) <= tol
