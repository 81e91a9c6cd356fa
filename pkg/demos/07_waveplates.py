"""Compile wave-plate sequences to Jones matrices and compare them with the gates.

Distances are taken up to a global phase. The ten-setting angles are given
to a tenth of a degree, which leaves a residual of order 1e-3. The listed
six-setting settings for g_3 produce g_3 sigma_z instead of g_3, so that row
reports a distance of 1.
"""

from sdsteer.waveplates import recipe_report

text, ok = recipe_report()
print(text)
print("all recipes within tolerance:", ok)
