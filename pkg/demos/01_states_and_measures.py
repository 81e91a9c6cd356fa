"""Werner states, their entanglement and their CHSH value.

A Werner state mixes the Bell state |Phi+> with white noise. Its visibility
eta controls everything downstream: concurrence switches on at eta = 1/3 and
the CHSH value crosses the classical limit 2 at eta = 1/sqrt(2).
"""

import numpy as np

from sdsteer.quantum import chsh_parameter, concurrence, fidelity, werner_state, PHI_PLUS

print(f"{'eta':>6} {'concurrence':>12} {'CHSH S':>8} {'F(Phi, rho)':>12}")
for eta in (0.0, 1 / 3, 0.436, 0.6, 1 / np.sqrt(2), 0.947, 1.0):
    rho = werner_state(eta)
    phi = np.outer(PHI_PLUS, PHI_PLUS.conj())
    print(f"{eta:6.3f} {concurrence(rho):12.4f} {chsh_parameter(rho):8.4f} {fidelity(phi, rho):12.4f}")
