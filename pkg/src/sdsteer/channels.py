"""Subchannel families: dilation unitaries, intermediate subchannels, Kraus sets and gates.

For each supported setting count ``n`` the dilation is assembled from the gate
sequence

    U = (I (x) V3) . CNOT2 . (I (x) V2) . CNOT1 . (E (x) V1)

on (auxiliary, signal) with the auxiliary qubit as the left tensor factor.
``U`` has the block form ``[[A0, -A1], [A1, A0]]``; the intermediate
subchannels ``A0, A1`` are read off its left column of blocks and the Kraus
operators are ``K_ij = |i><i| A_j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .quantum import (
    I2,
    PSD_FLOOR,
    Z_PROJECTORS,
    allclose,
    dagger,
    is_unitary,
    projector,
)

SUPPORTED_SETTINGS = (2, 3, 4, 6, 10)

_S2 = np.sqrt(2)
_S3 = np.sqrt(3)
_S5 = np.sqrt(5)

CNOT1 = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)  # control: auxiliary (first) qubit
CNOT2 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)  # control: signal (second) qubit

V1 = np.array([[1, -1], [1, 1]], dtype=complex) / _S2
V2 = np.array([[1, 1], [-1, 1]], dtype=complex) / _S2
V3 = np.array([[1, -1], [1, 1]], dtype=complex) / _S2


def _rotation(c: float, s: float) -> np.ndarray:
    return np.array([[c, -s], [s, c]], dtype=complex)


def _e_matrix(n: int) -> np.ndarray:
    if n in (2, 3):
        return _rotation(np.cos(np.pi / 8), np.sin(np.pi / 8))
    if n in (4, 10):
        return _rotation(np.sqrt((3 + _S3) / 6), np.sqrt((3 - _S3) / 6))
    if n == 6:
        inner = np.sqrt(2 - 2 / _S5)
        return _rotation(np.sqrt(2 + inner) / 2, np.sqrt(2 - inner) / 2)
    raise ValueError(f"unsupported setting count n={n!r}; expected one of {SUPPORTED_SETTINGS}")


def _gates(n: int) -> tuple[np.ndarray, ...]:
    if n == 2:
        return (I2.copy(),)
    if n == 3:
        g2 = np.array([[1j + _S2, 1j], [1j, -1j + _S2]]) / 2
        g3 = np.array([[1j - _S2, -1j], [-1j, -(1j + _S2)]]) / 2
        return (I2.copy(), g2, g3)
    if n == 4:
        return (I2.copy(), np.diag([1, -1j]).astype(complex))
    if n == 6:
        g2 = np.array([[1, -1j], [1, 1j]]) / _S2
        g3 = np.array([[1, 1], [1j, -1j]]) / _S2
        return (I2.copy(), g2, g3)
    if n == 10:
        g2 = np.array(
            [
                [(1 + _S5 - 2j) / 4, -(1 - 1j) * (_S5 - 1) / (4 * _S2)],
                [(1 + 1j) * (_S5 - 1) / (4 * _S2), (1 + _S5 + 2j) / 4],
            ]
        )
        powers = [I2.copy(), g2]
        for _ in range(3):
            powers.append(powers[-1] @ g2)
        return tuple(powers)
    raise ValueError(f"unsupported setting count n={n!r}; expected one of {SUPPORTED_SETTINGS}")


def kraus_from_intermediate(A0: np.ndarray, A1: np.ndarray) -> dict[tuple[int, int], np.ndarray]:
    """``K_ij = |i><i| A_j`` keyed by ``(i, j)``."""
    return {(i, j): Z_PROJECTORS[i] @ A for i in (0, 1) for j, A in enumerate((A0, A1))}


def block_dilation(A0: np.ndarray, A1: np.ndarray) -> np.ndarray:
    return np.block([[A0, -A1], [A1, A0]])


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=complex)
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class SubchannelFamily:
    n: int
    E: np.ndarray
    V1: np.ndarray
    V2: np.ndarray
    V3: np.ndarray
    CNOT1: np.ndarray
    CNOT2: np.ndarray
    U: np.ndarray
    A0: np.ndarray
    A1: np.ndarray
    kraus: dict = field(repr=False)
    gates: tuple = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class BellDiagonalFamily:
    """Subchannels tailored to Bell-diagonal states (single gate, identity)."""

    A0: np.ndarray
    A1: np.ndarray
    kraus: dict = field(repr=False)

    @property
    def U(self) -> np.ndarray:
        return block_dilation(self.A0, self.A1)

    @property
    def gates(self) -> tuple:
        return (I2,)

    @property
    def m(self) -> int:
        return 1


def factorized_dilation(E: np.ndarray) -> np.ndarray:
    return (
        np.kron(I2, V3)
        @ CNOT2
        @ np.kron(I2, V2)
        @ CNOT1
        @ np.kron(E, V1)
    )


def build_family(n: int) -> SubchannelFamily:
    """Construct the subchannel family for ``n`` regularly spaced settings."""
    if n not in SUPPORTED_SETTINGS:
        raise ValueError(f"unsupported setting count n={n!r}; expected one of {SUPPORTED_SETTINGS}")
    E = _e_matrix(n)
    U = factorized_dilation(E)
    A0 = U[:2, :2]
    A1 = U[2:, :2]
    return SubchannelFamily(
        n=n,
        E=_frozen(E),
        V1=_frozen(V1),
        V2=_frozen(V2),
        V3=_frozen(V3),
        CNOT1=_frozen(CNOT1),
        CNOT2=_frozen(CNOT2),
        U=_frozen(U),
        A0=_frozen(A0),
        A1=_frozen(A1),
        kraus={k: _frozen(v) for k, v in kraus_from_intermediate(A0, A1).items()},
        gates=tuple(_frozen(g) for g in _gates(n)),
    )


def build_bell_diagonal_family() -> BellDiagonalFamily:
    A0 = np.array([[1 / _S2, 0], [0.5, 0.5]], dtype=complex)
    A1 = np.array([[0, 1 / _S2], [0.5, -0.5]], dtype=complex)
    return BellDiagonalFamily(
        A0=_frozen(A0),
        A1=_frozen(A1),
        kraus={k: _frozen(v) for k, v in kraus_from_intermediate(A0, A1).items()},
    )


# -- validation --------------------------------------------------------------


def choi_matrix(kraus: Sequence[np.ndarray]) -> np.ndarray:
    """Unnormalized Choi matrix ``sum_k (I (x) K)|Omega><Omega|(I (x) K)^dag``, ``|Omega> = sum_i |ii>``."""
    d = np.asarray(kraus[0]).shape[1]
    omega = np.eye(d, dtype=complex).reshape(d * d)
    out = 0
    for K in kraus:
        v = np.kron(np.eye(d), K) @ omega
        out = out + np.outer(v, v.conj())
    return out


@dataclass
class ValidationReport:
    completeness_defect: float
    max_effect_eigenvalues: list[float]
    subchannel_choi_min: list[float]
    channel_choi_min: float
    tolerance: float = 1e-10

    @property
    def trace_non_increasing(self) -> list[bool]:
        return [lam <= 1 + self.tolerance for lam in self.max_effect_eigenvalues]

    @property
    def completely_positive(self) -> bool:
        return min(self.subchannel_choi_min + [self.channel_choi_min]) >= PSD_FLOOR

    @property
    def valid(self) -> bool:
        return (
            self.completeness_defect <= 1e-12
            and all(self.trace_non_increasing)
            and self.completely_positive
        )


def validate_channel(kraus: Sequence[np.ndarray] | dict) -> ValidationReport:
    """Completeness, trace-non-increase and Choi positivity for a Kraus set."""
    if isinstance(kraus, dict):
        kraus = list(kraus.values())
    kraus = [np.asarray(K, dtype=complex) for K in kraus]
    shapes = {K.shape for K in kraus}
    if len(shapes) != 1:
        raise ValueError(f"Kraus operators have mismatched shapes: {sorted(shapes)}")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        raise ValueError(f"Kraus operators must be square, got {shape}")
    d = shape[0]
    effects = [dagger(K) @ K for K in kraus]
    total = sum(effects)
    return ValidationReport(
        completeness_defect=float(np.abs(total - np.eye(d)).max()),
        max_effect_eigenvalues=[float(np.linalg.eigvalsh(e).max()) for e in effects],
        subchannel_choi_min=[float(np.linalg.eigvalsh(choi_matrix([K])).min()) for K in kraus],
        channel_choi_min=float(np.linalg.eigvalsh(choi_matrix(kraus)).min()),
    )


@dataclass
class FamilyReport:
    """Structural defects of a family, all as max-entry norms."""

    channel: ValidationReport
    unitarity_defect: float
    block_form_defect: float
    block_consistency_defect: float
    kraus_defect: float
    factorization_defect: float | None
    gate_unitarity_defect: float
    first_gate_is_identity: bool

    def passed(self, atol: float = 1e-12) -> bool:
        defects = [
            self.channel.completeness_defect,
            self.unitarity_defect,
            self.block_form_defect,
            self.block_consistency_defect,
            self.kraus_defect,
            self.gate_unitarity_defect,
        ]
        if self.factorization_defect is not None:
            defects.append(self.factorization_defect)
        return (
            max(defects) <= atol
            and self.channel.completely_positive
            and all(self.channel.trace_non_increasing)
            and self.first_gate_is_identity
        )


def check_family(family: SubchannelFamily | BellDiagonalFamily) -> FamilyReport:
    U = np.asarray(family.U)
    A0, A1 = np.asarray(family.A0), np.asarray(family.A1)
    expected = kraus_from_intermediate(A0, A1)
    kraus_defect = max(float(np.abs(family.kraus[k] - expected[k]).max()) for k in expected)
    consistency = max(
        float(np.abs(dagger(A0) @ A0 + dagger(A1) @ A1 - I2).max()),
        float(np.abs(dagger(A0) @ A1 - dagger(A1) @ A0).max()),
    )
    factorization = None
    if isinstance(family, SubchannelFamily):
        factorization = float(np.abs(factorized_dilation(family.E) - U).max())
    return FamilyReport(
        channel=validate_channel(family.kraus),
        unitarity_defect=float(np.abs(dagger(U) @ U - np.eye(4)).max()),
        block_form_defect=float(np.abs(U - block_dilation(A0, A1)).max()),
        block_consistency_defect=consistency,
        kraus_defect=kraus_defect,
        factorization_defect=factorization,
        gate_unitarity_defect=max(
            float(np.abs(dagger(g) @ g - I2).max()) for g in family.gates
        ),
        first_gate_is_identity=bool(np.array_equal(family.gates[0], I2)),
    )


def _proportional_to(m: np.ndarray, target: np.ndarray, atol: float) -> bool:
    scale = np.trace(m).real  # target has unit trace
    return scale >= -atol and allclose(m, scale * target, atol)


def design_conditions_check(
    family: SubchannelFamily | BellDiagonalFamily,
    n0: Sequence[float],
    n1: Sequence[float],
    atol: float = 1e-10,
) -> bool:
    """Whether ``A_j^dag |b><b| A_j`` is proportional to the eigenprojector of ``n_b`` with outcome ``j``.

    Directions may be given with slight rounding; they are normalized first.
    """
    A0, A1 = np.asarray(family.A0), np.asarray(family.A1)
    dirs = [np.asarray(v, dtype=float) / np.linalg.norm(v) for v in (n0, n1)]
    for b, direction in enumerate(dirs):
        for j, A in enumerate((A0, A1)):
            conj = dagger(A) @ Z_PROJECTORS[b] @ A
            if not _proportional_to(conj, projector(direction, j), atol):
                return False
    return True


def is_valid_gate_set(gates: Sequence[np.ndarray]) -> bool:
    return all(is_unitary(g) for g in gates)


# -- JSON export -------------------------------------------------------------


def _encode(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _decode(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def family_to_dict(family: SubchannelFamily | BellDiagonalFamily) -> dict:
    doc: dict = {"kind": "bell-diagonal" if isinstance(family, BellDiagonalFamily) else "werner"}
    if isinstance(family, SubchannelFamily):
        doc["n"] = family.n
        for name in ("E", "V1", "V2", "V3", "CNOT1", "CNOT2"):
            doc[name] = _encode(getattr(family, name))
    doc["U"] = _encode(family.U)
    doc["A0"] = _encode(family.A0)
    doc["A1"] = _encode(family.A1)
    doc["kraus"] = {f"K{i}{j}": _encode(K) for (i, j), K in sorted(family.kraus.items())}
    doc["gates"] = [_encode(g) for g in family.gates]
    return doc


def family_to_json(family: SubchannelFamily | BellDiagonalFamily, indent: int | None = 2) -> str:
    return json.dumps(family_to_dict(family), indent=indent)


def matrices_from_json(text: str) -> dict:
    """Decode every matrix in an exported family document back to complex arrays."""
    doc = json.loads(text)
    out: dict = {}
    for key, value in doc.items():
        if key == "kraus":
            out[key] = {k: _decode(v) for k, v in value.items()}
        elif key == "gates":
            out[key] = [_decode(g) for g in value]
        elif isinstance(value, list):
            out[key] = _decode(value)
        else:
            out[key] = value
    return out
