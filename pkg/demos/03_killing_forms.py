"""Solving the invariant Killing equation two ways.

Runs the brute-force nullspace solver against the structured solvers (which
go through the de Rham decomposition) on a handful of algebras and prints
the dimensions plus the paper-formula prediction dim = C(d,k) + r.
"""
from nilkilling import (
    adapted_frame, complex_heisenberg, direct_sum, euclidean, free_two_step_3,
    heisenberg, killing_dimensions, killing_nullspace_brute, solve_killing2,
    solve_killing3,
)

algebras = [
    heisenberg(1),
    heisenberg(2),
    complex_heisenberg(1.0),
    free_two_step_3(),
    direct_sum([euclidean(3), heisenberg(1)]),
    direct_sum([heisenberg(1), heisenberg(1)]),
]

print(f"{'algebra':<14} {'k':>2} {'brute':>6} {'structured':>11} {'formula':>8}")
for L in algebras:
    F = adapted_frame(L)
    dims = killing_dimensions(L)
    for k, solver in ((2, solve_killing2), (3, solve_killing3)):
        brute = killing_nullspace_brute(L, F, k).dim
        structured = solver(L)[0].dim
        print(f"{L.name:<14} {k:>2} {brute:>6} {structured:>11} "
              f"{dims[k - 2]:>8}")

print("\nKilling 3-form of h3 (the volume form):")
print(killing_nullspace_brute(heisenberg(1),
                              adapted_frame(heisenberg(1)), 3).basis[0])
