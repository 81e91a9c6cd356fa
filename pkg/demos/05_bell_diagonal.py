"""The Bell-diagonal variant with ty = tx and a single gate.

The full protocol trace reproduces (2 + tx - tz) / 4, which beats the
single-qubit bound (1 + 1/sqrt 2)/2 once tx - tz > sqrt 2.
"""

from sdsteer.protocols import bell_diagonal_bound, bell_diagonal_success

bound = bell_diagonal_bound()
print(f"single-qubit bound {bound:.6f}")
for tx, tz in [(0.0, 0.0), (0.4, -0.8), (0.45, -0.97), (0.9, -0.9)]:
    p = bell_diagonal_success(tx, tz).success_probability
    print(f"tx={tx:+.2f} tz={tz:+.2f} P={p:.6f} beats bound: {p > bound}")
