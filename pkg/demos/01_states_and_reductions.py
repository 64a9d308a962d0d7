"""States on labeled tensor products: composition, reduction, purification,
and channel application.

Run with: python demos/01_states_and_reductions.py
"""

import numpy as np

from privsq import (
    Isometry,
    SystemLayout,
    apply_stinespring,
    haar_unitary,
    kron,
    partial_trace,
    permute_systems,
    purify,
    random_density,
)

print("-" * 70)
print("Layouts and composition")
print("-" * 70)

# A qubit A, a qutrit B.  The first listed system is the most significant
# index, so |i j> sits at flat index i*3 + j.
layout_a = SystemLayout([("A", 2)])
layout_b = SystemLayout([("B", 3)])
rho_a = random_density(layout_a, rank=2, seed=0)
rho_b = random_density(layout_b, rank=3, seed=1)
joint = kron(rho_a, rho_b)
print("joint layout:", joint.layout.systems, "dim", joint.dim)

print()
print("-" * 70)
print("Partial trace is label-driven and order-preserving")
print("-" * 70)
back = partial_trace(joint, "A")
print("recover rho_A after tracing B:", np.abs(back.matrix - rho_a.matrix).max())

swapped = permute_systems(joint, ("B", "A"))
print("swapped layout:", swapped.layout.labels)
print("spectrum unchanged:",
      np.allclose(np.linalg.eigvalsh(swapped.matrix), np.linalg.eigvalsh(joint.matrix)))

print()
print("-" * 70)
print("Purification: reference dimension equals the rank")
print("-" * 70)
rho = random_density(SystemLayout([("A", 4)]), rank=3, seed=2)
phi = purify(rho, "R")
print("purification lives on:", phi.layout.systems)
roundtrip = partial_trace(phi.density(), "A")
print("roundtrip deviation:", np.abs(roundtrip.matrix - rho.matrix).max())

print()
print("-" * 70)
print("Channels as isometric dilations")
print("-" * 70)
# A random isometry from a qubit into qutrit (x) qutrit; discarding the
# second output realizes a channel.
g = np.random.Generator(np.random.PCG64(3)).standard_normal((9, 2)) \
    + 1j * np.random.Generator(np.random.PCG64(4)).standard_normal((9, 2))
q, _ = np.linalg.qr(g)
v = Isometry(q[:, :2], SystemLayout([("A", 2)]), SystemLayout([("C", 3), ("F", 3)]))
out = apply_stinespring(rho_a, v, "A", discard="F")
print("output layout:", out.layout.systems)
print("trace preserved:", abs(out.matrix.trace().real - 1.0) < 1e-12)

print()
print("Haar unitaries are deterministic in the seed:")
print("same seed match:", np.array_equal(haar_unitary(3, 7), haar_unitary(3, 7)))
