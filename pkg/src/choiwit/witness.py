"""Witness construction, the detection functional and separable sanity sampling.

The witness for weights (a, b, c) is a real Hermitian 9x9 matrix with
diagonal (a, b, c, c, a, b, b, c, a) times an overall scale and entries
-scale at the flat positions (0,4), (0,8), (4,8) and their transposes.  The
scale is fixed to 1/(3(a+b+c)), which makes the trace equal to 1; on the
a+b+c = 2 slice this is the conventional 1/6 prefactor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidStateError
from .linalg import _as_complex, herm_eig_min
from .maps import MapParams, phi_apply

_OFFDIAG = ((0, 4), (0, 8), (4, 8))

#: Validation tolerances for density matrices; loose enough to accept
#: states read back from text files with 12 printed digits.
STATE_TOL = 1e-10


@dataclass(frozen=True)
class WitnessMatrix:
    """A witness matrix together with its weights and the applied scale."""

    mat: np.ndarray
    params: MapParams
    scale: float


@dataclass(frozen=True)
class DensityMatrix:
    """A 9x9 density matrix; construction validates the state invariants."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        try:
            m = _as_complex(self.mat, (9, 9), "state")
        except ValueError as exc:
            raise InvalidStateError(str(exc)) from exc
        if float(np.abs(m - m.conj().T).max()) > STATE_TOL:
            raise InvalidStateError("state is not Hermitian within 1e-10")
        if abs(complex(np.trace(m)) - 1.0) > STATE_TOL:
            raise InvalidStateError("state trace differs from 1 by more than 1e-10")
        sym = (m + m.conj().T) / 2.0
        if herm_eig_min(sym, tol=1e-12) < -STATE_TOL:
            raise InvalidStateError("state has an eigenvalue below -1e-10")
        object.__setattr__(self, "mat", m)


def max_ent_projector() -> np.ndarray:
    """Rank-one projector onto (|00> + |11> + |22>) / sqrt(3)."""
    omega = np.zeros(9, dtype=complex)
    omega[[0, 4, 8]] = 1.0 / np.sqrt(3.0)
    return np.outer(omega, omega.conj())


def witness_matrix(p: MapParams) -> WitnessMatrix:
    """Build the witness for weights p directly from its entry pattern."""
    scale = 1.0 / (3.0 * p.total)
    diag = np.array([p.a, p.b, p.c, p.c, p.a, p.b, p.b, p.c, p.a])
    mat = np.diag(diag).astype(complex) * scale
    for i, j in _OFFDIAG:
        mat[i, j] = -scale
        mat[j, i] = -scale
    return WitnessMatrix(mat=mat, params=p, scale=scale)


def witness_from_map(p: MapParams) -> WitnessMatrix:
    """Build the witness by applying the map across the maximally entangled projector.

    The projector is viewed as a 3x3 grid of 3x3 blocks and the map acts on
    the grid structure (the first tensor factor); this is the construction
    whose matrix matches witness_matrix entrywise.
    """
    proj = max_ent_projector().reshape(3, 3, 3, 3)
    out = np.empty_like(proj)
    for k in range(3):
        for l in range(3):
            out[:, k, :, l] = phi_apply(p, proj[:, k, :, l])
    return WitnessMatrix(
        mat=out.reshape(9, 9), params=p, scale=1.0 / (3.0 * p.total)
    )


def detect(w: WitnessMatrix, rho) -> float:
    """Expectation tr(W rho) of the witness in a state.

    Negative values mean the witness detects the state.  ``rho`` may be a
    DensityMatrix or anything that validates as one; InvalidStateError is
    raised otherwise.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    value = complex(np.trace(w.mat @ rho.mat))
    if abs(value.imag) > 1e-10:
        raise ArithmeticError(f"tr(W rho) has imaginary part {value.imag:g}")
    return float(value.real)


def separable_sample_check(w: WitnessMatrix, n: int, seed: int) -> float:
    """Minimum witness expectation over n random pure product states.

    Samples x and y independently and uniformly on the unit sphere of C^3
    (normalized complex Gaussians from numpy's default PCG64 generator;
    real parts drawn before imaginary parts, x before y) and returns
    min over samples of <x (x) y|W|x (x) y>.  Deterministic for fixed
    (n, seed).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    v = np.einsum("ni,nj->nij", x, y).reshape(n, 9)
    values = np.einsum("ni,ij,nj->n", v.conj(), w.mat, v).real
    return float(values.min())


def format_complex(z: complex, digits: int | None = None) -> str:
    """Render one complex number as re+imj / re-imj.

    With ``digits`` the two parts are printed in fixed-point with that many
    decimals (the state-file convention); without it the shortest general
    format is used.
    """
    z = complex(z)
    re = z.real + 0.0  # collapse -0.0 to 0.0
    im = z.imag + 0.0
    if digits is None:
        return f"{re:g}{im:+g}j"
    return f"{re:.{digits}f}{im:+.{digits}f}j"


def state_file_text(mat) -> str:
    """Serialize a 9x9 matrix as 9 lines of 9 complex entries, 12 decimals."""
    m = _as_complex(mat, (9, 9), "mat")
    return "\n".join(
        " ".join(format_complex(m[i, j], digits=12) for j in range(9))
        for i in range(9)
    ) + "\n"


def parse_state_text(text: str) -> DensityMatrix:
    """Parse the 9-line state format and validate the density invariants."""
    rows = [line for line in text.splitlines() if line.strip()]
    if len(rows) != 9:
        raise InvalidStateError(f"state file must have 9 nonempty lines, got {len(rows)}")
    mat = np.zeros((9, 9), dtype=complex)
    for i, line in enumerate(rows):
        entries = line.split()
        if len(entries) != 9:
            raise InvalidStateError(
                f"line {i + 1} must have 9 entries, got {len(entries)}"
            )
        for j, token in enumerate(entries):
            try:
                mat[i, j] = complex(token)
            except ValueError as exc:
                raise InvalidStateError(
                    f"line {i + 1}, entry {j + 1}: cannot parse {token!r}"
                ) from exc
    return DensityMatrix(mat)


def parse_state_file(path) -> DensityMatrix:
    """Read and validate a state file from disk."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_state_text(handle.read())
