"""Success probabilities of the single-qubit and two-qubit discrimination protocols.

Register order inside the dilation is (auxiliary, signal); the auxiliary
qubit starts in ``|0>`` and its z outcome is the branch index ``j``, the
signal z outcome is Bob's bit ``b``. In the two-qubit protocol Alice's qubit is
prepended, giving (Alice, auxiliary, signal) on eight dimensions.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np

from .channels import (
    BellDiagonalFamily,
    SubchannelFamily,
    build_bell_diagonal_family,
)
from .quantum import (
    KET0,
    Z_PROJECTORS,
    as_direction,
    bell_diagonal_state,
    bloch_of_ket,
    check_density_matrix,
    dagger,
    in_bell_tetrahedron,
    projector,
    qubit_state,
)
from .tables import ALICE_DIRECTIONS, BELL_DIAGONAL_DIRECTIONS

Family = SubchannelFamily | BellDiagonalFamily

TIE_ATOL = 1e-12


class Rule(enum.IntEnum):
    """How Bob turns his bit ``b`` into a guess of ``j`` for one gate."""

    CONST0 = 0
    CONST1 = 1
    SAME = 2  # j = b
    FLIP = 3  # j = b xor 1

    def guess(self, b: int) -> int:
        if self is Rule.CONST0:
            return 0
        if self is Rule.CONST1:
            return 1
        if self is Rule.SAME:
            return b
        return b ^ 1

    @property
    def label(self) -> str:
        return ("0", "1", "b", "b+1")[self]


_RULE_NAMES = {"0": Rule.CONST0, "1": Rule.CONST1, "b": Rule.SAME, "b+1": Rule.FLIP, "b^1": Rule.FLIP}


@dataclass(frozen=True)
class GuessStrategy:
    rules: tuple[Rule, ...]

    @classmethod
    def parse(cls, text: str) -> "GuessStrategy":
        """``"b b+1 0"`` -> (SAME, FLIP, CONST0)."""
        try:
            return cls(tuple(_RULE_NAMES[tok] for tok in text.replace(",", " ").split()))
        except KeyError as exc:
            raise ValueError(f"unknown rule {exc.args[0]!r} in strategy {text!r}") from None

    @classmethod
    def enumerate(cls, m: int):
        """All ``4**m`` strategies in lexicographic order of rule codes."""
        for combo in itertools.product(tuple(Rule), repeat=m):
            yield cls(combo)

    def guess(self, m: int, b: int) -> int:
        """Guess for 0-based gate index ``m`` and outcome ``b``."""
        return self.rules[m].guess(b)

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        return "(" + ", ".join(r.label for r in self.rules) + ")"


class AliceDirectionTable:
    """Alice's measurement direction for each announced ``(b, m)``, ``m`` 1-based."""

    def __init__(self, entries: Mapping[tuple[int, int], Sequence[float]]):
        self._dirs = {key: as_direction(v) for key, v in entries.items()}
        gates = sorted({m for _, m in self._dirs})
        if gates != list(range(1, len(gates) + 1)):
            raise ValueError(f"gate indices must be 1..M, got {gates}")
        missing = [(b, m) for b in (0, 1) for m in gates if (b, m) not in self._dirs]
        if missing:
            raise ValueError(f"direction table incomplete, missing {missing}")
        self.m = len(gates)

    def direction(self, b: int, m: int) -> np.ndarray:
        return self._dirs[(b, m)]

    def items(self):
        return sorted(self._dirs.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __getitem__(self, key: tuple[int, int]) -> np.ndarray:
        return self._dirs[key]


def alice_directions(n: int) -> AliceDirectionTable:
    if n not in ALICE_DIRECTIONS:
        raise ValueError(f"unsupported setting count n={n!r}")
    return AliceDirectionTable(ALICE_DIRECTIONS[n])


def bell_diagonal_directions() -> AliceDirectionTable:
    return AliceDirectionTable(BELL_DIAGONAL_DIRECTIONS)


@dataclass
class ProtocolResult:
    success_probability: float
    method: str = "exact"
    std_error: float = 0.0
    witness: Any = None

    def __post_init__(self):
        if self.method not in ("exact", "monte-carlo"):
            raise ValueError(f"unknown method {self.method!r}")
        if not -1e-12 <= self.success_probability <= 1 + 1e-12:
            raise ValueError(f"probability out of range: {self.success_probability}")
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")

    def __float__(self) -> float:
        return self.success_probability


@dataclass(frozen=True)
class Witness:
    strategy: GuessStrategy
    probe: np.ndarray  # Bloch vector of the optimal pure input


# -- single-qubit protocol ---------------------------------------------------


def _check_strategy(family: Family, strategy: GuessStrategy) -> None:
    if len(strategy) != family.m:
        raise ValueError(f"strategy has {len(strategy)} rules but the family has {family.m} gates")


def single_qubit_success_per_gate(family: Family, strategy: GuessStrategy, probe: np.ndarray) -> list[float]:
    """``sum_b Tr[U(|0><0| (x) g rho g^dag)U^dag (P_guess (x) P_b)]`` for each gate ``g``.

    ``probe`` is a 2x2 density matrix or a Bloch 3-vector.
    """
    _check_strategy(family, strategy)
    probe = np.asarray(probe)
    rho = qubit_state(probe) if probe.shape == (3,) else check_density_matrix(probe, 2)
    U = np.asarray(family.U)
    aux0 = np.outer(KET0, KET0)
    out = []
    for m, g in enumerate(family.gates):
        evolved = U @ np.kron(aux0, g @ rho @ dagger(g)) @ dagger(U)
        p = 0.0
        for b in (0, 1):
            effect = np.kron(Z_PROJECTORS[strategy.guess(m, b)], Z_PROJECTORS[b])
            p += np.trace(evolved @ effect).real
        out.append(float(p))
    return out


def single_qubit_success(family: Family, strategy: GuessStrategy, probe: np.ndarray) -> float:
    """Success probability averaged over the equiprobable gates."""
    return float(np.mean(single_qubit_success_per_gate(family, strategy, probe)))


def _rule_effects(family: Family) -> np.ndarray:
    """``W[r] = <0_aux| U^dag (sum_b P_{r(b)} (x) P_b) U |0_aux>`` for each rule, shape (4, 2, 2)."""
    U = np.asarray(family.U)
    out = np.empty((4, 2, 2), dtype=complex)
    for r in Rule:
        effect = sum(np.kron(Z_PROJECTORS[r.guess(b)], Z_PROJECTORS[b]) for b in (0, 1))
        out[r] = (dagger(U) @ effect @ U)[:2, :2]
    return out


def effective_observables(family: Family) -> tuple[list[GuessStrategy], np.ndarray]:
    """All strategies and their observables ``O_s`` with ``Tr[O_s rho]`` the success probability."""
    W = _rule_effects(family)
    gates = np.array(family.gates)
    # per-gate, per-rule pulled-back effect g^dag W g, shape (M, 4, 2, 2)
    per_gate = np.einsum("mji,rjk,mkl->mril", gates.conj(), W, gates)
    strategies = list(GuessStrategy.enumerate(family.m))
    codes = np.array([[int(r) for r in s.rules] for s in strategies])
    obs = per_gate[np.arange(family.m), codes].mean(axis=1)
    return strategies, obs


def single_qubit_bound(family: Family) -> ProtocolResult:
    """Best single-qubit success probability, maximized over strategies and probe states.

    For a fixed strategy the success is linear in the probe, so its maximum is
    the largest eigenvalue of the effective observable and is attained by a
    pure state. Ties go to the lexicographically first strategy.
    """
    strategies, obs = effective_observables(family)
    w, v = np.linalg.eigh(obs)
    top = w[:, -1]
    best = float(top.max())
    idx = int(np.flatnonzero(top >= best - TIE_ATOL)[0])
    probe = bloch_of_ket(v[idx, :, -1])
    return ProtocolResult(best, "exact", 0.0, Witness(strategies[idx], probe))


def fibonacci_sphere(count: int) -> np.ndarray:
    """``count`` nearly uniform unit vectors on the sphere, shape (count, 3)."""
    i = np.arange(count) + 0.5
    z = 1 - 2 * i / count
    r = np.sqrt(1 - z * z)
    theta = np.pi * (1 + np.sqrt(5)) * i
    return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])


def _kets(bloch: np.ndarray) -> np.ndarray:
    theta = np.arccos(np.clip(bloch[:, 2], -1, 1))
    phi = np.arctan2(bloch[:, 1], bloch[:, 0])
    return np.column_stack([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def single_qubit_bound_grid_oracle(family: Family, grid_size: int = 10_000, chunk: int = 2_000) -> float:
    """Brute-force lower bound: best strategy over a Fibonacci grid of pure probes.

    Each probe ket is pushed through ``g_m`` and ``U`` directly and the outcome
    distribution read from the output amplitudes; every strategy is then scored
    on every grid point. No effective observable or eigensolver is involved.
    """
    if grid_size < 1000:
        raise ValueError("grid_size must be at least 1000")
    U = np.asarray(family.U)
    M = family.m
    strategies = list(GuessStrategy.enumerate(M))
    codes = np.array([[int(r) for r in s.rules] for s in strategies])
    guesses = np.array([[r.guess(b) for b in (0, 1)] for r in Rule])  # (rule, b)
    grid = fibonacci_sphere(grid_size)
    best = -np.inf
    for start in range(0, grid_size, chunk):
        kets = _kets(grid[start : start + chunk])
        # per-gate rule scores, shape (M, 4, G)
        scores = np.empty((M, 4, len(kets)))
        for m, g in enumerate(family.gates):
            signal = kets @ np.asarray(g).T
            full = np.concatenate([signal, np.zeros_like(signal)], axis=1)  # aux |0> first
            probs = (np.abs(full @ U.T) ** 2).reshape(-1, 2, 2)  # (G, j, b)
            for r in Rule:
                scores[m, r] = probs[:, guesses[r, 0], 0] + probs[:, guesses[r, 1], 1]
        total = np.zeros((len(strategies), len(kets)))
        for m in range(M):
            total += scores[m, codes[:, m]]
        best = max(best, float(total.max()) / M)
    return best


# -- two-qubit protocol ------------------------------------------------------


def _embed(rho_ab: np.ndarray) -> np.ndarray:
    """``rho_AB (x) |0><0|_aux`` reordered to (Alice, auxiliary, signal)."""
    full = np.kron(rho_ab, np.outer(KET0, KET0)).reshape([2] * 6)
    return full.transpose(0, 2, 1, 3, 5, 4).reshape(8, 8)


def joint_outcome_probabilities(
    rho_ab: np.ndarray, family: Family, table: AliceDirectionTable
) -> dict[tuple[int, int, int, int], float]:
    """Probabilities of ``(a, j, b, m)`` with ``m`` 1-based and gates chosen uniformly.

    Alice measures along ``table.direction(b, m)`` after Bob announces ``b|g_m``.
    """
    rho_ab = check_density_matrix(rho_ab, 4)
    if table.m != family.m:
        raise ValueError(f"table covers {table.m} gates but the family has {family.m}")
    state = _embed(rho_ab)
    U = np.asarray(family.U)
    out: dict[tuple[int, int, int, int], float] = {}
    for idx, g in enumerate(family.gates):
        m = idx + 1
        op = np.kron(np.eye(2), U @ np.kron(np.eye(2), g))
        evolved = op @ state @ dagger(op)
        for b in (0, 1):
            direction = table.direction(b, m)
            for a in (0, 1):
                for j in (0, 1):
                    effect = np.kron(projector(direction, a), np.kron(Z_PROJECTORS[j], Z_PROJECTORS[b]))
                    out[(a, j, b, m)] = float(np.trace(evolved @ effect).real) / family.m
    return out


def two_qubit_success(
    rho_ab: np.ndarray, family: Family, table: AliceDirectionTable | None = None
) -> ProtocolResult:
    """Success probability when Alice measures along the announced direction and guesses ``j = a``."""
    if table is None:
        table = (
            bell_diagonal_directions()
            if isinstance(family, BellDiagonalFamily)
            else alice_directions(family.n)
        )
    joint = joint_outcome_probabilities(rho_ab, family, table)
    p = sum(prob for (a, j, _, _), prob in joint.items() if a == j)
    return ProtocolResult(float(min(max(p, 0.0), 1.0)), "exact")


def in_bell_triangle(tx: float, tz: float, atol: float = 1e-12) -> bool:
    """Positivity of the Bell-diagonal state with ``ty = tx``."""
    return in_bell_tetrahedron(tx, tx, tz, atol)


def bell_diagonal_success(tx: float, tz: float) -> ProtocolResult:
    """Two-qubit success for ``(tx, tx, tz)`` through the full protocol trace."""
    if not in_bell_triangle(tx, tz):
        raise ValueError(f"(tx, tz) = ({tx}, {tz}) lies outside the positivity triangle")
    rho = bell_diagonal_state(tx, tx, tz)
    return two_qubit_success(rho, build_bell_diagonal_family(), bell_diagonal_directions())


def bell_diagonal_bound() -> float:
    return single_qubit_bound(build_bell_diagonal_family()).success_probability
