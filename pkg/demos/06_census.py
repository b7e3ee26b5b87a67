"""Counting normal irreducible polynomials, by formula and by brute force.

For each (q, n) the exhaustive census counts exact normals (N) and
criterion-certified ones (N'); the closed formula uses q-cyclotomic cosets.
"""

from normcrit.census import census_exhaustive, count_normal_formula, cyclotomic_cosets, format_table

rows = [census_exhaustive(q, n, mode="both") for q, n in ((2, 4), (2, 5), (2, 6), (3, 4), (4, 3), (4, 4), (8, 4))]
print(format_table(rows))
print()
for r in rows:
    print(f"q={r.q} n={r.n}: formula {r.N_formula}, exact {r.N_exact}, violations {r.violations}")

print("\ncoset sizes for q=2, t=5:", cyclotomic_cosets(2, 5).coset_sizes)
print("N(17,6) by formula:", count_normal_formula(17, 6))
