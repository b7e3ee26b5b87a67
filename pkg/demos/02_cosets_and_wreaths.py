"""Permutation bookkeeping: the stabilizer of psi_n, coset representatives,
and block partitions with their wreath-product stabilizers."""

from math import factorial

from normcrit import permcosets as pc
from normcrit.symmetrization import psi

for n in range(2, 7):
    G = pc.stabilizer_psi(n)
    fixing = sum(1 for s in pc.all_permutations(n) if pc.act(s, psi(n)) == psi(n))
    reps = pc.coset_reps_C(n)
    print(f"n={n}: |Stab(psi)|={len(G.elements()):3d} (brute force {fixing:3d}), "
          f"n!/|Stab|={factorial(n) // len(G.elements()):3d}, coset reps kept {len(reps)}")

print()
for n, m in ((4, 2), (6, 2), (6, 3)):
    parts = pc.partitions_P(n, m)
    print(f"P({n},{m}): {len(parts)} partitions into {m} blocks of {n // m}, "
          f"stabilizer of the blocked psi_{m} has order {pc.wreath_order(n, m)}")
    print("   first:", parts[0])
