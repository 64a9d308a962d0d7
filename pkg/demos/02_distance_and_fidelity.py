"""Trace distance, fidelity, and the purification-alignment machinery.

Run with: python demos/02_distance_and_fidelity.py
"""

import numpy as np

from privsq import (
    SystemLayout,
    fidelity,
    matched_extension,
    partial_trace,
    random_density,
    trace_distance,
    uhlmann_align,
)

layout = SystemLayout([("A", 3)])
rho = random_density(layout, rank=2, seed=10)
sigma = random_density(layout, rank=3, seed=11)

td = trace_distance(rho, sigma)
f = fidelity(rho, sigma)
print(f"trace distance T = {td:.6f}")
print(f"fidelity       F = {f:.6f}   (squared convention)")
print(f"sandwich check: 1 - sqrt(F) = {1 - np.sqrt(f):.6f} <= T <= "
      f"sqrt(1 - F) = {np.sqrt(1 - f):.6f}")

print()
print("Optimal purification alignment realizes the fidelity as an overlap:")
pair = uhlmann_align(rho, sigma)
overlap = abs(np.vdot(pair.phi_sigma.amplitudes, pair.phi_rho.amplitudes)) ** 2
print(f"  |<phi_sigma|phi_rho>|^2 = {overlap:.12f}")
print(f"  fidelity(rho, sigma)    = {f:.12f}")

print()
print("Matched extensions: given an extension of rho_A and a target sigma_A,")
print("build an extension of sigma_A at the same fidelity.")
lo_ab = SystemLayout([("A", 2), ("B", 2)])
rho_ab = random_density(lo_ab, rank=3, seed=12)
sigma_a = random_density(SystemLayout([("A", 2)]), rank=2, seed=13)
sigma_ab = matched_extension(rho_ab, sigma_a)
print("  marginal reproduced:",
      np.abs(partial_trace(sigma_ab, "A").matrix - sigma_a.matrix).max())
print(f"  F(rho_AB, sigma_AB) = {fidelity(rho_ab, sigma_ab):.10f}")
print(f"  F(rho_A,  sigma_A)  = {fidelity(partial_trace(rho_ab, 'A'), sigma_a):.10f}")
