"""Sweep the Werner visibility and see where the two-qubit protocol beats every single-qubit one.

With Alice measuring along the announced direction the success probability
is 1/2 + eta/2, so it overtakes the single-qubit bound exactly at the LHS
threshold eta*_n. Between eta*_10 ~ 0.524 and 0.683 the state is steerable
yet admits a local model for all projective measurements.
"""

import numpy as np

from sdsteer.steering import sweep_to_csv, sweep_werner

print(sweep_to_csv(sweep_werner(np.linspace(0.3, 0.8, 11), 10)))
