"""De Rham decomposition: recovering factors from a scrambled direct sum.

Builds R^2 + h3 + h5, hides the block structure behind a random orthogonal
change of user basis, and decomposes it back into the abelian block plus
irreducible factors with their analysis flags.
"""
import numpy as np

from nilkilling import (
    MetricLieAlgebra, decompose, direct_sum, euclidean, heisenberg,
    killing_dimensions,
)

L = direct_sum([euclidean(2), heisenberg(1), heisenberg(2)])
rng = np.random.default_rng(0)
q, _ = np.linalg.qr(rng.normal(size=(L.dim, L.dim)))
brackets = np.einsum("ia,jb,ijk->abk", q, q, L.structure_constants)
c = np.einsum("abk,kc->abc", brackets, np.linalg.inv(q).T)
scrambled = MetricLieAlgebra(L.dim, list(L.basis_names), c,
                             q.T @ L.gram @ q, name="scrambled")

dec = decompose(scrambled)
print(f"abelian dimension d = {dec.d}")
for i, f in enumerate(dec.factors):
    print(f"factor {i}: dim {f.dim} (v={f.frame.nv}, z={f.frame.nz}), "
          f"complex={f.has_complex_structure}, "
          f"naturally reductive={f.naturally_reductive}")

print("killing dims (original): ", killing_dimensions(L)[:2])
print("killing dims (scrambled):", killing_dimensions(scrambled)[:2])
