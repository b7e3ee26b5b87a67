"""Symmetrized products in x_0..x_{n-1}: Delta, Phi and Theta.

Delta_n (the circulant determinant) factors into Theta_{n,m} over divisors
m of n; here the factorisation is checked by computing Delta two ways.
"""

from normcrit import symmetrization as sym
from normcrit.ntheory import divisors

for n in range(1, 6):
    D = sym.delta_det(n)
    print(f"n={n}: Delta has {len(D):4d} terms, degree {D.degree()}, equal to factored form: {D == sym.delta_factored(n)}")

print()
for n in (4, 6):
    for m in divisors(n):
        if m == 6:
            continue
        T = sym.theta_big(n, m)
        print(f"Theta({n},{m}): degree {T.degree()} (expected {sym.theta_degree(n, m)}), {len(T)} terms")
