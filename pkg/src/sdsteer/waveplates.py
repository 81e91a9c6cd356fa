"""Jones matrices for wave plates and checks that the reference plate settings realize the gates.

Two half-wave-plate matrices are provided. ``jones_hwp`` is the rotation form
``[[cos 2p, -sin 2p], [sin 2p, cos 2p]]`` used by the reference recipes;
``jones_hwp_physical`` is the usual retarder form
``[[cos 2p, sin 2p], [sin 2p, -cos 2p]]``. The ten-setting angle table only
reproduces its gates with the latter, so each recipe records which one it uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import build_family

HWP = "HWP"
QWP = "QWP"


def jones_hwp(phi: float) -> np.ndarray:
    c, s = np.cos(2 * phi), np.sin(2 * phi)
    return np.array([[c, -s], [s, c]], dtype=complex)


def jones_hwp_physical(phi: float) -> np.ndarray:
    c, s = np.cos(2 * phi), np.sin(2 * phi)
    return np.array([[c, s], [s, -c]], dtype=complex)


def jones_qwp(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    off = 0.5 * (1 - 1j) * np.sin(2 * phi)
    return np.array([[c * c + 1j * s * s, off], [off, 1j * c * c + s * s]], dtype=complex)


_HWP_FORMS = {"rotation": jones_hwp, "physical": jones_hwp_physical}


@dataclass(frozen=True)
class Plate:
    kind: str  # HWP or QWP
    angle: float  # radians

    def __post_init__(self):
        if self.kind not in (HWP, QWP):
            raise ValueError(f"unknown plate kind {self.kind!r}")
        if not np.isfinite(self.angle):
            raise ValueError("plate angle must be finite")


def compile_plates(seq: Sequence[Plate], hwp_form: str = "rotation") -> np.ndarray:
    """Jones matrix of plates traversed in order; the first plate is the right-most factor."""
    hwp = _HWP_FORMS[hwp_form]
    out = np.eye(2, dtype=complex)
    for plate in seq:
        j = hwp(plate.angle) if plate.kind == HWP else jones_qwp(plate.angle)
        out = j @ out
    return out


def _entry_candidates(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # |u_k - e^{i t} v_k|^2 = A_k - 2 Re(c_k e^{-i t}); the minimax over t sits at
    # a minimum of one term or a crossing of two.
    c = (u * v.conj()).ravel()
    A = (np.abs(u) ** 2 + np.abs(v) ** 2).ravel()
    cands = [0.0]
    cands.extend(np.angle(c[np.abs(c) > 0]))
    for k in range(len(c)):
        for l in range(k + 1, len(c)):
            delta = c[k] - c[l]
            if abs(delta) == 0:
                continue
            ratio = (A[k] - A[l]) / (2 * abs(delta))
            if abs(ratio) <= 1:
                psi = np.angle(delta)
                off = np.arccos(ratio)
                cands.extend((psi + off, psi - off))
    return np.array(cands)


def distance_up_to_phase(u: np.ndarray, v: np.ndarray) -> float:
    """``min_t max_ij |u - e^{i t} v|_ij`` evaluated exactly."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    t = _entry_candidates(u, v)
    diffs = np.abs(u[None] - np.exp(1j * t)[:, None, None] * v[None])
    return float(diffs.max(axis=(1, 2)).min())


def phase_comparable(u: np.ndarray, v: np.ndarray, atol: float = 1e-12) -> bool:
    """False when ``Tr(v^dag u) = 0`` and no global phase is singled out by the overlap."""
    return abs(np.trace(np.asarray(v).conj().T @ np.asarray(u))) > atol


@dataclass(frozen=True)
class Recipe:
    gate: int  # 1-based gate index
    plates: tuple[Plate, ...]
    hwp_form: str = "rotation"


def _deg(x: float) -> float:
    return float(np.deg2rad(x))


def _ten_setting(gate, q1, h, q2):
    return Recipe(gate, (Plate(QWP, _deg(q1)), Plate(HWP, _deg(h)), Plate(QWP, _deg(q2))), "physical")


RECIPES: dict[int, list[Recipe]] = {
    2: [],
    3: [
        Recipe(2, (Plate(QWP, -3 * np.pi / 8),)),
        Recipe(3, (Plate(QWP, -np.pi / 8),)),
    ],
    4: [Recipe(2, (Plate(QWP, np.pi / 2),))],
    # the QWP acts first; the opposite order does not reproduce g_2
    6: [
        Recipe(2, (Plate(QWP, 0.0), Plate(HWP, np.pi / 8))),
        Recipe(3, (Plate(QWP, -np.pi / 4), Plate(HWP, np.pi / 8))),
    ],
    # angles in degrees, rounded to 0.1 degree
    10: [
        _ten_setting(2, 25.6, 49.7, 40.8),
        _ten_setting(3, 8.8, 64.2, 57.6),
        _ten_setting(4, -32.4, 64.2, -81.2),
        _ten_setting(5, -49.2, 49.7, -64.4),
    ],
}

TOLERANCES = {2: 1e-9, 3: 1e-9, 4: 1e-9, 6: 1e-9, 10: 6e-3}


def verify_recipes(n: int) -> list[tuple[int, float]]:
    """``(gate index, distance up to phase)`` for every reference recipe of ``n``."""
    if n not in RECIPES:
        raise ValueError(f"no recipes for n={n!r}")
    gates = build_family(n).gates
    return [
        (r.gate, distance_up_to_phase(compile_plates(r.plates, r.hwp_form), gates[r.gate - 1]))
        for r in RECIPES[n]
    ]


def recipe_report(settings: Sequence[int] = (3, 4, 6, 10)) -> tuple[str, bool]:
    """Plain-text table ``n, gate, distance, tolerance, status`` and overall pass flag."""
    lines = [f"{'n':>3} {'gate':>5} {'distance':>12} {'tolerance':>10}  status"]
    ok = True
    for n in settings:
        tol = TOLERANCES[n]
        for gate, dist in verify_recipes(n):
            passed = dist < tol
            ok &= passed
            lines.append(f"{n:>3} {'g' + str(gate):>5} {dist:>12.3e} {tol:>10.0e}  {'pass' if passed else 'FAIL'}")
    return "\n".join(lines) + "\n", ok
