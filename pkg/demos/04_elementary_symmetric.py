"""Rewriting symmetrized products in the elementary symmetric polynomials.

theta_{n,m} lives in Z[s_1..s_n]; it is weighted homogeneous, reduces
mod p to the characteristic-p version, and expands back to Theta_{n,m}.
"""

from normcrit import elemsym
from normcrit.symmetrization import theta_big

for n, m in ((2, 2), (3, 3), (4, 2), (4, 4)):
    print(f"theta({n},{m}) = {elemsym.theta_small(n, m)}")

h = elemsym.theta_small(5, 5)
print(f"\ntheta(5,5): {len(h)} terms, weighted degrees {sorted(h.weighted_degrees())}")
print("leading terms:", h.sorted_terms()[:2])
print("expands back to Theta(5,5):", h.to_symmetric() == theta_big(5, 5))

print("\nh_2 over F_2 (mod-2 version):", elemsym.h_p(2, 2))
print("h_3 in characteristic 0:", elemsym.h_char0(3))
print("cache directory:", elemsym.default_cache_dir())
