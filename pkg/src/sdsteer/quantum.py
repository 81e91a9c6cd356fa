"""Small dense linear algebra for one and two qubits.

Matrices are plain ``numpy`` complex arrays. Basis conventions:

* single qubit: ``|0> = H``, ``|1> = V``;
* two qubits: ``|00>, |01>, |10>, |11>`` with the first factor leftmost
  (Alice first in ``rho_AB``).

A measurement along a unit Bloch direction ``n`` has outcome ``a = 0`` on the
``+n`` eigenprojector and ``a = 1`` on the ``-n`` one.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

ATOL = 1e-12
SPECTRAL_ATOL = 1e-9
PSD_FLOOR = -1e-10

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


class NotPhysicalError(ValueError):
    """Raised when an input fails a state or direction validity check."""


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def allclose(a: np.ndarray, b: np.ndarray, atol: float = ATOL) -> bool:
    """Entrywise absolute comparison; no relative slack."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost factor first."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def is_hermitian(m: np.ndarray, atol: float = ATOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and allclose(m, dagger(m), atol)


def is_unitary(m: np.ndarray, atol: float = ATOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and allclose(
        dagger(m) @ m, np.eye(m.shape[0]), atol
    )


# -- Bloch vectors ----------------------------------------------------------


def as_direction(n: Sequence[float], atol: float = ATOL) -> np.ndarray:
    """Return ``n`` as a float array, raising unless it has unit norm."""
    v = np.asarray(n, dtype=float).reshape(3)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > atol:
        raise NotPhysicalError(f"measurement direction must be unit norm, got |n| = {norm!r}")
    return v


def bloch_operator(n: Sequence[float]) -> np.ndarray:
    """``n . sigma`` for a real 3-vector."""
    x, y, z = np.asarray(n, dtype=float).reshape(3)
    return x * SX + y * SY + z * SZ


def qubit_state(bloch: Sequence[float]) -> np.ndarray:
    """Density matrix ``(I + r . sigma) / 2`` for a Bloch vector with ``|r| <= 1``."""
    r = np.asarray(bloch, dtype=float).reshape(3)
    norm = np.linalg.norm(r)
    if norm > 1 + ATOL:
        raise NotPhysicalError(f"Bloch vector outside the unit ball, |r| = {norm!r}")
    return (I2 + bloch_operator(r)) / 2


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Inverse of :func:`qubit_state`."""
    rho = np.asarray(rho)
    return np.array([np.trace(rho @ p).real for p in PAULIS])


def projector(direction: Sequence[float], outcome: int) -> np.ndarray:
    """Projector onto outcome ``outcome`` of a spin measurement along ``direction``.

    Outcome 0 is the ``+n`` eigenspace, outcome 1 the ``-n`` eigenspace.
    """
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    n = as_direction(direction)
    return (I2 + (-1) ** outcome * bloch_operator(n)) / 2


Z_PROJECTORS = (np.diag([1, 0]).astype(complex), np.diag([0, 1]).astype(complex))


# -- states ------------------------------------------------------------------


def is_density_matrix(rho: np.ndarray, atol: float = ATOL) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if not is_hermitian(rho, atol) or abs(np.trace(rho) - 1) > atol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= PSD_FLOOR)


def check_density_matrix(rho: np.ndarray, dim: int | None = None) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if dim is not None and rho.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} density matrix, got shape {rho.shape}")
    if not is_density_matrix(rho):
        raise NotPhysicalError("matrix is not a valid density matrix")
    return rho


def werner_state(eta: float) -> np.ndarray:
    """``eta |Phi+><Phi+| + (1 - eta) I/4`` on two qubits."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    return eta * np.outer(PHI_PLUS, PHI_PLUS.conj()) + (1 - eta) * np.eye(4, dtype=complex) / 4


def in_bell_tetrahedron(tx: float, ty: float, tz: float, atol: float = ATOL) -> bool:
    # Bell-basis eigenvalues of the Bell-diagonal state, times four.
    weights = (
        1 + tx - ty + tz,
        1 - tx + ty + tz,
        1 + tx + ty - tz,
        1 - tx - ty - tz,
    )
    return min(weights) >= -atol


def bell_diagonal_state(tx: float, ty: float, tz: float) -> np.ndarray:
    """``(I + sum_i t_i sigma_i (x) sigma_i) / 4``; raises outside the positivity tetrahedron."""
    if not in_bell_tetrahedron(tx, ty, tz):
        raise NotPhysicalError(f"(tx, ty, tz) = ({tx}, {ty}, {tz}) is outside the tetrahedron")
    rho = np.eye(4, dtype=complex)
    for t, p in zip((tx, ty, tz), PAULIS):
        rho = rho + t * np.kron(p, p)
    return rho / 4


def psd_sqrt(m: np.ndarray, floor: float = 1e-13) -> np.ndarray:
    """Square root of a Hermitian PSD matrix.

    Eigenvalues below ``floor`` are treated as zero so that rounding noise on a
    rank-deficient state does not turn into ``sqrt(1e-16) = 1e-8`` errors.
    """
    w, v = np.linalg.eigh(m)
    w = np.where(w < floor, 0.0, w)
    return (v * np.sqrt(w)) @ dagger(v)


def fidelity(target: np.ndarray, actual: np.ndarray) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(t) a sqrt(t)))**2``."""
    target = np.asarray(target, dtype=complex)
    actual = np.asarray(actual, dtype=complex)
    if target.shape != actual.shape:
        raise ValueError(f"dimension mismatch: {target.shape} vs {actual.shape}")
    # equivalently the squared trace norm of sqrt(target) sqrt(actual)
    sv = np.linalg.svd(psd_sqrt(target) @ psd_sqrt(actual), compute_uv=False)
    return float(np.sum(sv) ** 2)


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit state via the spin-flipped matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 matrix, got {rho.shape}")
    yy = np.kron(SY, SY)
    flipped = yy @ rho.conj() @ yy
    s = psd_sqrt(rho)
    r = s @ flipped @ s
    r = (r + dagger(r)) / 2
    lam = np.sort(np.sqrt(np.clip(np.linalg.eigvalsh(r), 0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def correlator(rho: np.ndarray, a: Sequence[float], b: Sequence[float]) -> float:
    """``<(a.sigma) (x) (b.sigma)>`` for unit directions ``a`` (Alice) and ``b`` (Bob)."""
    op = np.kron(bloch_operator(as_direction(a)), bloch_operator(as_direction(b)))
    return float(np.trace(np.asarray(rho) @ op).real)


# Werner-optimal CHSH settings in the x-z plane.
_R = 1 / np.sqrt(2)
CHSH_SETTINGS = (
    np.array([0.0, 0.0, 1.0]),
    np.array([1.0, 0.0, 0.0]),
    np.array([_R, 0.0, _R]),
    np.array([-_R, 0.0, _R]),
)


def chsh_parameter(rho: np.ndarray, settings: Sequence[Sequence[float]] = CHSH_SETTINGS) -> float:
    """``S = E(a0,b0) + E(a0,b1) + E(a1,b0) - E(a1,b1)``.

    ``settings`` is ``(a0, a1, b0, b1)``; the default pair of bases is optimal
    for states of the form ``eta |Phi+><Phi+| + (1 - eta) I/4``.
    """
    a0, a1, b0, b1 = settings
    return (
        correlator(rho, a0, b0)
        + correlator(rho, a0, b1)
        + correlator(rho, a1, b0)
        - correlator(rho, a1, b1)
    )


def max_eigenvalue_hermitian(m: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a Hermitian matrix and a unit eigenvector for it."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, atol=1e-10):
        raise ValueError("matrix is not Hermitian")
    w, v = np.linalg.eigh((m + dagger(m)) / 2)
    return float(w[-1]), v[:, -1]


def bloch_of_ket(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return bloch_vector(np.outer(psi, psi.conj()) / np.vdot(psi, psi).real)
