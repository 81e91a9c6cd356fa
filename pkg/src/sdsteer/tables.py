"""Reference tables: Alice's measurement directions and optimal single-qubit strategies.

Gate indices ``m`` are 1-based here, matching the labels ``g_1 .. g_M``.
Strategy strings list one rule per gate: ``0`` / ``1`` for a constant guess,
``b`` for ``j = b`` and ``b+1`` for ``j = b xor 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

S2 = np.sqrt(2)
S3 = np.sqrt(3)
S5 = np.sqrt(5)
S6 = np.sqrt(6)
S15 = np.sqrt(15)

# six-setting (icosahedron) components
ALPHA = np.sqrt(50 + 10 * S5) / 10
BETA = np.sqrt(50 - 10 * S5) / 10

# ten-setting (dodecahedron) components
_Q = S2 / (S15 - S3)
_W = (S5 - 1) / (2 * S3)
_U = (S5 - 1) / (2 * S6)
_V = 2 / (S15 - S3)

ALICE_DIRECTIONS: dict[int, dict[tuple[int, int], tuple[float, float, float]]] = {
    2: {
        (0, 1): (1 / S2, 0, 1 / S2),
        (1, 1): (-1 / S2, 0, 1 / S2),
    },
    3: {
        (0, 1): (1 / S2, 0, 1 / S2),
        (0, 2): (1 / S2, 0, 1 / S2),
        (0, 3): (0, 1, 0),
        (1, 1): (-1 / S2, 0, 1 / S2),
        (1, 2): (0, 1, 0),
        (1, 3): (-1 / S2, 0, 1 / S2),
    },
    4: {
        (0, 1): (S2 / S3, 0, 1 / S3),
        (0, 2): (0, -S2 / S3, 1 / S3),
        (1, 1): (-S2 / S3, 0, 1 / S3),
        (1, 2): (0, S2 / S3, 1 / S3),
    },
    6: {
        (0, 1): (ALPHA, 0, BETA),
        (0, 2): (0, -BETA, ALPHA),
        (0, 3): (BETA, -ALPHA, 0),
        (1, 1): (-ALPHA, 0, BETA),
        (1, 2): (0, -BETA, -ALPHA),
        (1, 3): (BETA, ALPHA, 0),
    },
    10: {
        (0, 1): (S2 / S3, 0, 1 / S3),
        (0, 2): (0, S2 / S3, 1 / S3),
        (0, 3): (-S5 / S6, 1 / S6, 0),
        (0, 4): (-_Q, -_Q, -_W),
        (0, 5): (1 / S6, -S5 / S6, 0),
        (1, 1): (-S2 / S3, 0, 1 / S3),
        (1, 2): (-_Q, -_Q, _W),
        (1, 3): (0, -S2 / S3, 1 / S3),
        (1, 4): (_U, -_U, _V),
        (1, 5): (-_U, _U, _V),
    },
}

# Bell-diagonal task: b = 0 -> -z, b = 1 -> +x.
BELL_DIAGONAL_DIRECTIONS = {
    (0, 1): (0.0, 0.0, -1.0),
    (1, 1): (1.0, 0.0, 0.0),
}


@dataclass(frozen=True)
class StrategyRow:
    strategy: str
    probe: tuple[float, float, float]
    per_gate: tuple[float, ...] | None
    average: float


def _rows(entries):
    out = []
    for strategy, probe, probs in entries:
        if isinstance(probs, tuple):
            out.append(StrategyRow(strategy, probe, probs, float(np.mean(probs))))
        else:
            out.append(StrategyRow(strategy, probe, None, probs))
    return out


_P2 = (1 + 1 / S2) / 2
_P3 = (1 + 1 / S3) / 2
_X6 = (15 + S5) / 20
_Y6 = (5 + S5) / 10
_A = 5 / 6
_B = 2 / 3
_C = (7 + S5) / 12
_D = (3 + S5) / 6

STRATEGY_TABLES: dict[int, list[StrategyRow]] = {
    2: _rows([
        ("0", (0, 0, 1), _P2),
        ("1", (0, 0, -1), _P2),
        ("b", (1, 0, 0), _P2),
        ("b+1", (-1, 0, 0), _P2),
    ]),
    3: _rows([
        ("0 0 0", (0, -1 / S3, S2 / S3), _P3),
        ("1 1 1", (0, 1 / S3, -S2 / S3), _P3),
        ("0 b b+1", (0, 1 / S3, S2 / S3), _P3),
        ("1 b+1 b", (0, -1 / S3, -S2 / S3), _P3),
        ("b b 1", (S2 / S3, 1 / S3, 0), _P3),
        ("b+1 b+1 0", (-S2 / S3, -1 / S3, 0), _P3),
        ("b 0 b", (S2 / S3, -1 / S3, 0), _P3),
        ("b+1 1 b+1", (-S2 / S3, 1 / S3, 0), _P3),
    ]),
    # both gates reach the same probability in the four-setting case
    4: _rows([
        ("0 0", (0, 0, 1), (_P3, _P3)),
        ("1 1", (0, 0, -1), (_P3, _P3)),
        ("b b", (1 / S2, 1 / S2, 0), (_P3, _P3)),
        ("b+1 b+1", (-1 / S2, -1 / S2, 0), (_P3, _P3)),
        ("b b+1", (1 / S2, -1 / S2, 0), (_P3, _P3)),
        ("b+1 b", (-1 / S2, 1 / S2, 0), (_P3, _P3)),
    ]),
    6: _rows([
        ("b b 0", (ALPHA, 0, BETA), (_X6, _Y6, _Y6)),
        ("b+1 b+1 1", (-ALPHA, 0, -BETA), (_X6, _Y6, _Y6)),
        ("b+1 b 1", (-ALPHA, 0, BETA), (_X6, _Y6, _Y6)),
        ("b b+1 0", (ALPHA, 0, -BETA), (_X6, _Y6, _Y6)),
        ("b 0 b", (BETA, ALPHA, 0), (_Y6, _Y6, _X6)),
        ("b+1 1 b+1", (-BETA, -ALPHA, 0), (_Y6, _Y6, _X6)),
        ("b+1 0 b", (-BETA, ALPHA, 0), (_Y6, _Y6, _X6)),
        ("b 1 b+1", (BETA, -ALPHA, 0), (_Y6, _Y6, _X6)),
        ("0 b b", (0, BETA, ALPHA), (_Y6, _X6, _Y6)),
        ("1 b+1 b+1", (0, -BETA, -ALPHA), (_Y6, _X6, _Y6)),
        ("0 b b+1", (0, -BETA, ALPHA), (_Y6, _X6, _Y6)),
        ("1 b+1 b", (0, BETA, -ALPHA), (_Y6, _X6, _Y6)),
    ]),
    10: _rows([
        ("b b b+1 b+1 0", (S2 / S3, 0, 1 / S3), (_A, _B, _C, _D, _B)),
        ("b b+1 b+1 0 b", (1 / S6, S5 / S6, 0), (_B, _C, _D, _B, _A)),
        ("b+1 b+1 0 b b", (-_Q, _Q, -_W), (_C, _D, _B, _A, _B)),
        ("b+1 0 b b b+1", (-S5 / S6, -1 / S6, 0), (_D, _B, _A, _B, _C)),
        ("0 b b b+1 b+1", (0, -S2 / S3, 1 / S3), (_B, _A, _B, _C, _D)),
        ("b+1 b+1 b b 1", (-S2 / S3, 0, -1 / S3), (_A, _B, _C, _D, _B)),
        ("b+1 b b 1 b+1", (-1 / S6, -S5 / S6, 0), (_B, _C, _D, _B, _A)),
        ("b b 1 b+1 b+1", (_Q, -_Q, _W), (_C, _D, _B, _A, _B)),
        ("b 1 b+1 b+1 b", (S5 / S6, 1 / S6, 0), (_D, _B, _A, _B, _C)),
        ("1 b+1 b+1 b b", (0, S2 / S3, -1 / S3), (_B, _A, _B, _C, _D)),
        ("b+1 0 0 0 b+1", (-S2 / S3, 0, 1 / S3), (_A, _C, _C, _B, _C)),
        ("0 0 0 b+1 b+1", (-_U, -_U, _V), (_C, _C, _B, _C, _A)),
        ("0 0 b+1 b+1 0", (_U, _U, _V), (_C, _B, _C, _A, _C)),
        ("0 b+1 b+1 0 0", (0, S2 / S3, 1 / S3), (_B, _C, _A, _C, _C)),
        ("b+1 b+1 0 0 0", (-_Q, _Q, _W), (_C, _A, _C, _C, _B)),
        ("b 1 1 1 b", (S2 / S3, 0, -1 / S3), (_A, _C, _C, _B, _C)),
        ("1 1 1 b b", (_U, _U, -_V), (_C, _C, _B, _C, _A)),
        ("1 1 b b 1", (-_U, -_U, -_V), (_C, _B, _C, _A, _C)),
        ("1 b b 1 1", (0, -S2 / S3, -1 / S3), (_B, _C, _A, _C, _C)),
        ("b b 1 1 1", (_Q, -_Q, -_W), (_C, _A, _C, _C, _B)),
    ]),
}
