"""Photon-counting emulation and Werner-visibility fitting.

Counts for every joint outcome ``(a, j, b, m)`` are independent Poisson
draws whose means are ``total_pairs`` times the exact outcome probability.
Only Poisson shot noise is modelled; there are no detector inefficiencies,
dark counts or accidentals. Random numbers come from
``numpy.random.default_rng(seed)`` (PCG64), one generator per run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .protocols import AliceDirectionTable, Family, alice_directions, joint_outcome_probabilities
from .quantum import check_density_matrix, fidelity, werner_state

GOLDEN = (np.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class CountRecord:
    a: int
    j: int
    b: int
    m: int
    counts: int

    def __post_init__(self):
        if self.counts < 0:
            raise ValueError("counts must be nonnegative")


@dataclass(frozen=True)
class EstimateResult:
    p_hat: float
    std_error: float
    total_counts: int
    records: tuple[CountRecord, ...] = ()


def draw_counts(
    rho_ab: np.ndarray,
    family: Family,
    table: AliceDirectionTable,
    total_pairs: int,
    rng: np.random.Generator,
) -> list[CountRecord]:
    joint = joint_outcome_probabilities(rho_ab, family, table)
    keys = sorted(joint)
    means = np.clip([joint[k] for k in keys], 0, None) * total_pairs
    counts = rng.poisson(means)
    return [CountRecord(*k, int(c)) for k, c in zip(keys, counts)]


def estimate_success(records) -> EstimateResult:
    """Success frequency ``N(a == j) / N`` with standard error ``sqrt(p(1-p)/N)``."""
    records = tuple(records)
    total = sum(r.counts for r in records)
    if total == 0:
        return EstimateResult(0.0, 0.0, 0, records)
    hits = sum(r.counts for r in records if r.a == r.j)
    p = hits / total
    return EstimateResult(p, float(np.sqrt(p * (1 - p) / total)), total, records)


def simulate_run(
    rho_ab: np.ndarray,
    family: Family,
    table: AliceDirectionTable | None = None,
    total_pairs: int = 62_500,
    seed: int = 0,
) -> EstimateResult:
    if total_pairs < 1:
        raise ValueError("total_pairs must be at least 1")
    if table is None:
        table = alice_directions(family.n)
    rng = np.random.default_rng(seed)
    return estimate_success(draw_counts(rho_ab, family, table, total_pairs, rng))


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-7) -> float:
    """Maximizer of a unimodal ``f`` on ``[lo, hi]``, to within ``tol``."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    # the optimum may sit on an endpoint of the interval
    return max((lo, x, hi), key=f)


def estimate_eta_by_fidelity(rho_e: np.ndarray) -> tuple[float, float]:
    """Werner visibility maximizing the fidelity with ``rho_e``, and that fidelity."""
    rho_e = check_density_matrix(rho_e, 4)
    eta = golden_section_max(lambda x: fidelity(werner_state(x), rho_e), 0.0, 1.0)
    return eta, fidelity(werner_state(eta), rho_e)
