"""Emulate a photon-counting run with Poisson shot noise.

Sixty-two thousand five hundred pairs give error bars around 0.002, the same
scale as a typical tabletop experiment. Repeating the run with different
seeds shows the reported standard error agrees with the actual spread.
"""

import numpy as np

from sdsteer.channels import build_family
from sdsteer.experiment import estimate_eta_by_fidelity, simulate_run
from sdsteer.quantum import werner_state

family = build_family(10)
runs = [simulate_run(werner_state(0.6), family, total_pairs=62_500, seed=s) for s in range(20)]
p = np.array([r.p_hat for r in runs])
print(f"exact 0.8, mean p_hat {p.mean():.5f}, spread {p.std(ddof=1):.5f}, reported {runs[0].std_error:.5f}")

noisy = werner_state(0.9) + 0.01 * np.diag([1, -1, -1, 1])
eta, fid = estimate_eta_by_fidelity(noisy)
print(f"Werner fit of a slightly distorted state: eta={eta:.5f} fidelity={fid:.5f}")
