import numpy as np
import pytest

from sdsteer.channels import SUPPORTED_SETTINGS, build_bell_diagonal_family
from sdsteer.protocols import (
    GuessStrategy,
    Rule,
    alice_directions,
    bell_diagonal_bound,
    bell_diagonal_success,
    joint_outcome_probabilities,
    single_qubit_bound,
    single_qubit_bound_grid_oracle,
    single_qubit_success,
    single_qubit_success_per_gate,
    two_qubit_success,
)
from sdsteer.quantum import Z_PROJECTORS, bell_diagonal_state, dagger, projector, qubit_state, werner_state
from sdsteer.steering import lhs_bound
from sdsteer.tables import STRATEGY_TABLES

from conftest import random_density

EXACT = {
    2: (1 + 1 / np.sqrt(2)) / 2,
    3: (1 + 1 / np.sqrt(3)) / 2,
    4: (1 + 1 / np.sqrt(3)) / 2,
    6: (7 + np.sqrt(5)) / 12,
    10: (13 + np.sqrt(5)) / 20,
}


def test_strategy_parsing():
    s = GuessStrategy.parse("b b+1 0")
    assert s.rules == (Rule.SAME, Rule.FLIP, Rule.CONST0)
    assert str(s) == "(b, b+1, 0)"
    assert [s.guess(1, b) for b in (0, 1)] == [1, 0]
    with pytest.raises(ValueError):
        GuessStrategy.parse("b x")
    assert len(list(GuessStrategy.enumerate(3))) == 64


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_exact_bound(n, families):
    assert single_qubit_bound(families[n]).success_probability == pytest.approx(EXACT[n], abs=1e-9)


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_bound_threshold(n, families):
    assert 2 * single_qubit_bound(families[n]).success_probability - 1 == pytest.approx(lhs_bound(n), abs=1e-9)


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_witness_attains_bound(n, families):
    res = single_qubit_bound(families[n])
    w = res.witness
    assert single_qubit_success(families[n], w.strategy, w.probe) == pytest.approx(res.success_probability, abs=1e-12)


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_grid_oracle_below_bound(n, families):
    exact = single_qubit_bound(families[n]).success_probability
    grid = single_qubit_bound_grid_oracle(families[n], 10_000)
    assert grid <= exact + 1e-12
    assert exact - grid < 1e-3


def test_grid_oracle_rejects_small_grid(families):
    with pytest.raises(ValueError):
        single_qubit_bound_grid_oracle(families[2], 10)


def test_bounds_non_increasing(families):
    values = [single_qubit_bound(families[n]).success_probability for n in SUPPORTED_SETTINGS]
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_strategy_tables(n, families):
    fam = families[n]
    for row in STRATEGY_TABLES[n]:
        strategy = GuessStrategy.parse(row.strategy)
        per_gate = single_qubit_success_per_gate(fam, strategy, np.array(row.probe, dtype=float))
        assert np.mean(per_gate) == pytest.approx(row.average, abs=1e-9), row.strategy
        if row.per_gate is not None:
            assert per_gate == pytest.approx(row.per_gate, abs=1e-9), row.strategy


def test_table_averages():
    assert STRATEGY_TABLES[6][0].average == pytest.approx((7 + np.sqrt(5)) / 12, abs=1e-12)
    assert STRATEGY_TABLES[10][0].average == pytest.approx((13 + np.sqrt(5)) / 20, abs=1e-12)


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_maximally_mixed_probe_averages_to_half(n, families):
    # constant-0 and constant-1 rules are complementary, as are SAME and FLIP
    fam = families[n]
    for strategy in list(GuessStrategy.enumerate(fam.m))[:64]:
        p = single_qubit_success(fam, strategy, np.eye(2) / 2)
        q = single_qubit_success(fam, GuessStrategy(tuple(Rule(r ^ 1) for r in strategy.rules)), np.eye(2) / 2)
        assert p + q == pytest.approx(1, abs=1e-12)


def test_strategy_length_mismatch(families):
    with pytest.raises(ValueError):
        single_qubit_success(families[3], GuessStrategy.parse("0 0"), (0, 0, 1))


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_werner_linearity(n, families):
    for eta in np.linspace(0, 1, 11):
        p = two_qubit_success(werner_state(eta), families[n]).success_probability
        assert p == pytest.approx(0.5 + eta / 2, abs=1e-9)


def test_werner_examples(families):
    assert two_qubit_success(werner_state(0.6), families[4]).success_probability == pytest.approx(0.8, abs=1e-12)


def _kraus_route(rho_ab, fam, table):
    # Alice's conditional states fed through K_jb-style Kraus operators A_j, no dilation
    total = 0.0
    for m, g in enumerate(fam.gates, start=1):
        for b in (0, 1):
            for j, A in enumerate((fam.A0, fam.A1)):
                alice = np.kron(projector(table.direction(b, m), j), np.eye(2))
                sig = np.kron(np.eye(2), g)
                cond = (alice @ rho_ab @ alice)
                bob = cond.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
                out = A @ g @ bob @ dagger(g) @ dagger(A)
                total += np.trace(Z_PROJECTORS[b] @ out).real
    return total / fam.m


@pytest.mark.parametrize("n", SUPPORTED_SETTINGS)
def test_two_qubit_matches_kraus_route(n, families):
    rng = np.random.default_rng(n)
    table = alice_directions(n)
    for _ in range(5):
        rho = random_density(rng, 4)
        got = two_qubit_success(rho, families[n], table).success_probability
        assert got == pytest.approx(_kraus_route(rho, families[n], table), abs=1e-12)


def test_joint_distribution_normalized(families):
    joint = joint_outcome_probabilities(werner_state(0.3), families[10], alice_directions(10))
    assert len(joint) == 2 * 2 * 2 * 5
    assert sum(joint.values()) == pytest.approx(1, abs=1e-12)


def test_table_gate_mismatch(families):
    with pytest.raises(ValueError):
        two_qubit_success(werner_state(0.5), families[6], alice_directions(4))


def test_bell_diagonal_closed_form():
    rng = np.random.default_rng(7)
    count = 0
    while count < 50:
        tx, tz = rng.uniform(-1, 1, 2)
        if abs(2 * tx) > 1 - tz:
            continue
        count += 1
        assert bell_diagonal_success(tx, tz).success_probability == pytest.approx((2 + tx - tz) / 4, abs=1e-10)


def test_bell_diagonal_boundary_and_bound():
    assert bell_diagonal_bound() == pytest.approx((1 + 1 / np.sqrt(2)) / 2, abs=1e-9)
    for tz in np.linspace(-1, 1, 21):
        edge = (1 - tz) / 2
        assert bell_diagonal_success(edge, tz).success_probability >= 0
        with pytest.raises(ValueError):
            bell_diagonal_success(edge + 1e-6, tz)
    w = single_qubit_bound(build_bell_diagonal_family()).witness
    assert str(w.strategy) == "(0)"


def test_bell_diagonal_full_trace_uses_state():
    rho = bell_diagonal_state(0.5, 0.5, -0.9)
    assert two_qubit_success(rho, build_bell_diagonal_family()).success_probability == pytest.approx(0.85)


def test_probe_as_bloch_or_matrix(families):
    s = GuessStrategy.parse("0 0")
    v = np.array([0.1, -0.4, 0.3])
    assert single_qubit_success(families[4], s, v) == pytest.approx(single_qubit_success(families[4], s, qubit_state(v)))
