"""Exterior algebra over a nilpotent frame: wedge, contraction, differential.

Shows the Chevalley-Eilenberg differential picking up the bracket relations
and verifies d compose d = 0 on a random form.
"""
import numpy as np

from nilkilling import (
    Form, adapted_frame, bigrade, contract, free_two_step_3, lie_diff,
    oneform, wedge,
)

L = free_two_step_3()
F = adapted_frame(L)
n = L.dim
e = np.eye(n)

w = wedge(oneform(e[:, 0]), oneform(e[:, 1]))
print("e1 ^ e2 =", w)
print("e1 contracted into it:", contract(e[:, 0], w))

for t in (3, 4, 5):
    print(f"d(e{t + 1}) =", lie_diff(L, F, oneform(e[:, t])))

rng = np.random.default_rng(0)
omega = Form(n, 2, rng.normal(size=15))
print("\nrandom 2-form omega, |d(d omega))| =",
      lie_diff(L, F, lie_diff(L, F, omega)).norm())
for l in range(3):
    print(f"bigrade {l} ({l} v-legs): norm {bigrade(F, omega, l).norm():.3f}")
