"""Best achievable success with a single qubit and no entanglement.

For every guessing strategy the success probability is linear in the probe
state, so the optimum is the top eigenvalue of an effective observable. A
brute-force scan over ten thousand Bloch-sphere points confirms it.
"""

from sdsteer.channels import SUPPORTED_SETTINGS, build_family
from sdsteer.protocols import single_qubit_bound, single_qubit_bound_grid_oracle
from sdsteer.steering import lhs_bound

for n in SUPPORTED_SETTINGS:
    family = build_family(n)
    res = single_qubit_bound(family)
    grid = single_qubit_bound_grid_oracle(family, 10_000)
    w = res.witness
    print(
        f"n={n:<2} P_s={res.success_probability:.9f} grid={grid:.9f} "
        f"2P_s-1={2 * res.success_probability - 1:.6f} eta*={lhs_bound(n):.6f} "
        f"strategy={w.strategy} probe={w.probe.round(4)}"
    )
