"""Physical constants (Gaussian/CGS) and the potassium-39 reference numbers."""

import math

C_LIGHT = 2.99792458e10      # cm/s
HBAR = 1.054571817e-27       # erg s

# 39K D1 line reference values
K39_EINSTEIN_A = 2 * math.pi * 6.079e6   # rad/s, spontaneous emission rate
K39_GAMMA = K39_EINSTEIN_A / 6.0         # rad/s, base decay unit of the model
K39_WAVELENGTH = 769.9e-7                # cm
