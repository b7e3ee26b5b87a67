"""Exact arithmetic over Z[zeta_m] and sparse multivariate polynomials.

Builds the circulant form x_0 + zeta x_1 + ... in CYC(n), takes its norm-like
product over the Galois conjugates, and shows the result has integer
coefficients once cast back to Z.
"""

from normcrit.exactalg import CYC, SparsePoly, cast_to_int, cyc_polynomial, product, root_power
from normcrit.symmetrization import psi

for m in (3, 4, 6, 12):
    print(f"cyclotomic polynomial {m}: coefficients {cyc_polynomial(m)}")

z = root_power(5, 1)
print("zeta_5^5 =", z * z * z * z * z)
total = root_power(5, 0)
for k in range(1, 5):
    total = total + root_power(5, k)
print("1 + zeta + ... + zeta^4 =", total)

n = 4
ring = CYC(n)
forms = [SparsePoly.linear([root_power(n, j * k) for k in range(n)], ring) for j in (1, 3)]
norm = cast_to_int(product(forms))
print(f"\nproduct over primitive 4th roots:\n  {norm}")
print("matches psi(4):", norm == psi(4))
