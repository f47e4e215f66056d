"""Dense complex linear algebra on the small fixed sizes used by this package.

Vectors and matrices are plain numpy arrays with dtype complex128: length-3
and length-9 vectors, 3x3 and 9x9 matrices.  The tensor-product index (i, j)
of a bipartite object always maps to the flat index 3*i + j, i.e. row-major
with the first factor outermost.  All functions are pure and accept anything
``np.asarray`` can turn into the right shape; NaN or infinite entries are
rejected.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NotHermitianError

#: Relative tolerance used by default when deciding numerical rank.
DEFAULT_RANK_TOL = 1e-8

#: Absolute entrywise tolerance for Hermiticity checks.
HERMITICITY_TOL = 1e-12


def _as_complex(x, shape, name):
    arr = np.asarray(x, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return arr


def _as_square(x, name):
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return arr


def kron_vec(u, v):
    """Tensor product of two 3-vectors: result[3*i + j] = u[i] * v[j]."""
    uu = _as_complex(u, (3,), "u")
    vv = _as_complex(v, (3,), "v")
    return np.kron(uu, vv)


def conj_vec(v):
    """Entrywise complex conjugate of a 3-vector."""
    return np.conj(_as_complex(v, (3,), "v"))


def partial_transpose_second(m):
    """Transpose the second tensor factor of a 9x9 matrix.

    Viewing the matrix as a 3x3 grid of 3x3 blocks, each block is replaced
    by its own transpose.  The operation is a linear involution and maps
    Hermitian matrices to Hermitian matrices.
    """
    mm = _as_complex(m, (9, 9), "m")
    return mm.reshape(3, 3, 3, 3).transpose(0, 3, 2, 1).reshape(9, 9)


def lu_det(m):
    """Determinant via LU factorization with partial pivoting.

    Row swaps are tracked explicitly so the sign of the result is exact.
    Singular input does not raise; it simply yields a value at roundoff
    distance from zero.
    """
    a = _as_square(m, "m").copy()
    n = a.shape[0]
    det = complex(1.0)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0:
            return complex(0.0)
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det *= a[k, k]
        if k < n - 1:
            a[k + 1 :, k] /= a[k, k]
            a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return complex(det)


def rank_with_tol(m, tol):
    """Numerical rank: number of singular values above tol * (largest one)."""
    if not (tol > 0):
        raise ValueError("tol must be positive")
    a = _as_square(m, "m")
    svals = np.linalg.svd(a, compute_uv=False)
    if svals[0] == 0:
        return 0
    return int(np.count_nonzero(svals > tol * svals[0]))


def herm_eig_min(m, tol=HERMITICITY_TOL):
    """Smallest eigenvalue of a Hermitian matrix by cyclic Jacobi rotations.

    The input must satisfy max|M - M^dagger| <= tol, otherwise
    NotHermitianError is raised.  Rotations are swept in a fixed cyclic
    order until the off-diagonal Frobenius norm drops below tol, which
    makes the result deterministic.
    """
    a = _as_square(m, "m")
    if float(np.abs(a - a.conj().T).max()) > tol:
        raise NotHermitianError(f"matrix is not Hermitian within {tol:g}")
    a = (a + a.conj().T) / 2.0
    n = a.shape[0]
    skip = tol / (4.0 * n)
    for _ in range(60):
        off = a.copy()
        np.fill_diagonal(off, 0.0)
        if float(np.linalg.norm(off)) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                phase = apq / abs(apq)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * np.conj(phase)
                a = rot.conj().T @ a @ rot
        a = (a + a.conj().T) / 2.0
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    return float(np.min(np.diag(a).real))


def expectation(w, v):
    """Real quadratic form <v|W|v> of a Hermitian matrix.

    W must be Hermitian within 1e-12.  The imaginary part of the raw
    result is checked against a scale-aware roundoff bound and then
    discarded.
    """
    wm = _as_square(w, "w")
    vv = _as_complex(v, (wm.shape[0],), "v")
    if float(np.abs(wm - wm.conj().T).max()) > HERMITICITY_TOL:
        raise NotHermitianError(f"matrix is not Hermitian within {HERMITICITY_TOL:g}")
    val = complex(np.vdot(vv, wm @ vv))
    bound = 1e-10 * (1.0 + float(np.vdot(vv, vv).real) * float(np.abs(wm).max()))
    if abs(val.imag) > bound:
        raise ArithmeticError(
            f"quadratic form has imaginary part {val.imag:g} beyond roundoff bound {bound:g}"
        )
    return float(val.real)
