"""Dense complex/real linear algebra for sampling reconstruction and analysis.

Everything here is sized for desk-scale problems (matrices up to a few
hundred square): a cyclic Jacobi eigensolver for Hermitian matrices, singular
values through the Gram matrix, the pseudo-inverse ``(A* A)^-1 A*``, condition
numbers, and a power-iteration spectral norm for real weight matrices.

All functions are pure: inputs are never mutated and results are fresh
arrays, so values can be shared freely across threads.

Note on conditioning: singular values are computed via the Gram matrix, which
squares the condition number of the problem; at the sizes used here that is
an acceptable trade for simplicity.  ``condition_number`` returns
sigma_max/sigma_min of A itself: kappa(A* A) = kappa(A)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, SingularOperatorError

# Rank threshold: sigma_min > RANK_RTOL * sigma_max counts as invertible.
RANK_RTOL = 1e-10

_JACOBI_SWEEP_CAP = 100
_JACOBI_OFF_RTOL = 1e-12


@dataclass(frozen=True)
class EigResult:
    """Full Hermitian eigendecomposition, eigenvalues sorted descending."""

    eigenvalues: np.ndarray  # (n,) real, descending
    eigenvectors: np.ndarray  # (n, n) complex, unit-norm columns


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eig(a) -> EigResult:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps zero one off-diagonal entry at a time with a unitary 2x2 rotation
    (a phase twist to make the entry real, then the classic symmetric-Schur
    rotation).  Stops when the off-diagonal Frobenius norm falls below
    1e-12 * ||A||_F, capped at 100 sweeps.

    Raises ValueError for non-square or non-Hermitian input and
    ConvergenceError if the sweep cap is hit.
    """
    a = _as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {n}x{m}")
    fro = float(np.linalg.norm(a))
    if fro > 0.0 and float(np.linalg.norm(a - a.conj().T)) > 1e-12 * fro:
        raise ValueError("matrix is not Hermitian within 1e-12 relative asymmetry")

    # Work on the Hermitian average so fp asymmetry cannot accumulate.
    w = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return EigResult(np.array([w[0, 0].real]), v)

    off_tol = _JACOBI_OFF_RTOL * fro
    # Sweeps continue past the documented threshold down to the machine
    # floor (quadratic convergence makes that at most one extra sweep), so
    # exactly-zero eigenvalues of singular Gram matrices resolve to eps
    # scale instead of stalling near 1e-12 * ||A||.
    off_floor = 64.0 * np.finfo(np.float64).eps * fro
    elem_tol = off_floor / n if n else 0.0
    sweeps = 0
    prev_off = math.inf
    while True:
        off = _off_diagonal_norm(w)
        if fro == 0.0 or off <= off_floor:
            break
        if off <= off_tol and off >= 0.5 * prev_off:
            break  # below the documented threshold and no longer improving
        if sweeps >= _JACOBI_SWEEP_CAP:
            if off <= off_tol:
                break
            raise ConvergenceError(
                f"Jacobi sweep cap ({_JACOBI_SWEEP_CAP}) reached; "
                f"off-diagonal norm {off:.3e} > {off_tol:.3e}"
            )
        prev_off = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if abs(apq) <= elem_tol:
                    continue
                app = w[p, p].real
                aqq = w[q, q].real
                # Phase twist makes the pivot real; then symmetric Schur.
                phase = apq / abs(apq)
                r = abs(apq)
                tau = (aqq - app) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                j = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128,
                )
                w[:, [p, q]] = w[:, [p, q]] @ j
                w[[p, q], :] = j.conj().T @ w[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ j
                # Pin exact zeros/realness the rotation was built for.
                w[p, q] = 0.0
                w[q, p] = 0.0
                w[p, p] = w[p, p].real
                w[q, q] = w[q, q].real
        sweeps += 1

    eigenvalues = np.real(np.diag(w))
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = eigenvalues[order]
    vectors = v[:, order]
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    return EigResult(eigenvalues, vectors)


def singular_values(a) -> np.ndarray:
    """Singular values of ``a`` (descending), via the smaller Gram matrix.

    Returns min(rows, cols) values: the square roots of the eigenvalues of
    A* A (equivalently A A*; the smaller of the two is diagonalized).

    The Gram route cannot resolve singular values below ~sqrt(eps) relative
    to sigma_max; Gram eigenvalues under 1e-13 * lambda_max are therefore
    reported as exact zeros (they are indistinguishable from zero at this
    precision, and the rank threshold should treat them as such).
    """
    a = _as_matrix(a)
    rows, cols = a.shape
    gram = a @ a.conj().T if rows <= cols else a.conj().T @ a
    gram = 0.5 * (gram + gram.conj().T)
    eig = hermitian_eig(gram)
    lam = np.clip(eig.eigenvalues, 0.0, None)
    if lam.size and lam[0] > 0.0:
        lam[lam <= 1e-13 * lam[0]] = 0.0
    return np.sqrt(lam)


def pseudo_inverse(a) -> np.ndarray:
    """Moore-Penrose pseudo-inverse ``(A* A)^-1 A*`` for full-column-rank A.

    Raises SingularOperatorError (carrying sigma_min/sigma_max) when
    sigma_min <= 1e-10 * sigma_max.
    """
    a = _as_matrix(a)
    rows, cols = a.shape
    sigma = singular_values(a)
    s_max = float(sigma[0])
    # Full column rank needs cols <= rows and all `cols` singular values
    # above the threshold; singular_values returns min(rows, cols) of them.
    s_min = float(sigma[-1]) if cols <= rows else 0.0
    if cols > rows or s_max == 0.0 or s_min <= RANK_RTOL * s_max:
        raise SingularOperatorError(
            f"operator is not full column rank: sigma_min={s_min:.3e}, "
            f"sigma_max={s_max:.3e}",
            s_min,
            s_max,
        )
    gram = a.conj().T @ a
    gram = 0.5 * (gram + gram.conj().T)
    eig = hermitian_eig(gram)
    inv_gram = (eig.eigenvectors / eig.eigenvalues) @ eig.eigenvectors.conj().T
    return inv_gram @ a.conj().T


def condition_number(a) -> float:
    """sigma_max / sigma_min of ``a``; +inf when rank deficient at threshold."""
    a = _as_matrix(a)
    sigma = singular_values(a)
    s_max = float(sigma[0])
    if s_max == 0.0:
        raise ValueError("condition number of the zero matrix is undefined")
    s_min = float(sigma[-1])
    if s_min <= RANK_RTOL * s_max:
        return math.inf
    return s_max / s_min


def spectral_norm_real(w, rtol: float = 1e-8, max_iter: int = 20000) -> float:
    """Largest singular value of a real matrix by power iteration on WtW.

    Deterministic (fixed internal start vector); the Rayleigh estimate
    approaches sigma_max from below, so the result never exceeds the
    Frobenius norm.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={w.ndim}")
    if not np.all(np.isfinite(w)):
        raise ValueError("matrix entries must be finite")
    fro = float(np.linalg.norm(w))
    if fro == 0.0:
        return 0.0
    rng = np.random.default_rng(0x5bec7ca1)
    v = rng.standard_normal(w.shape[1])
    v /= np.linalg.norm(v)
    sigma = 0.0
    # Stop well below the requested accuracy; squares converge twice as fast.
    stop = min(rtol, 1e-10)
    for _ in range(max_iter):
        u = w @ v
        sigma_new = float(np.linalg.norm(u))
        if sigma_new == 0.0:
            # v landed in the null space; restart off a fresh direction.
            v = rng.standard_normal(w.shape[1])
            v /= np.linalg.norm(v)
            continue
        v = w.T @ u
        v /= np.linalg.norm(v)
        if abs(sigma_new - sigma) <= stop * sigma_new:
            return sigma_new
        sigma = sigma_new
    return sigma
