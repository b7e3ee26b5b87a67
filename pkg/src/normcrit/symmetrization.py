"""Integer polynomials Delta_n, Psi_n, Phi_n, Theta_{n,m} and Sigma_n.

Phi_6 and Theta_{6,6} (degree 120, 60 quadratic-in-sextic factors) are out of
reach; they are refused unless ``large=True`` is passed explicitly.
"""

from functools import lru_cache
from itertools import permutations

from . import permcosets as pc
from .errors import NotDivisor, RefusedTooLarge
from .exactalg import CYC, ZZ, SparsePoly, cast_to_int, product, root_power
from .ntheory import divisors, units


def _parity(perm):
    seen, sign = [False] * len(perm), 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def delta_det(n):
    """Circulant determinant with first row X_0..X_{n-1}, by permutation expansion.

    Row i of the matrix is (X_{-i}, X_{1-i}, ..., X_{n-1-i}) with indices mod n.
    """
    terms = {}
    for perm in permutations(range(n)):
        exps = [0] * n
        for i, j in enumerate(perm):
            exps[(j - i) % n] += 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + _parity(perm)
    return SparsePoly(n, ZZ, terms)


def block_sums(n, m):
    """Y_i = sum of X_a over a in I_i = {i, i+m, ...}, as polynomials in n variables."""
    return [SparsePoly.linear([1 if a % m == i else 0 for a in range(n)]) for i in range(m)]


@lru_cache(maxsize=None)
def delta_factored(n):
    """Delta_n as the product over m | n of Psi_m evaluated at block sums."""
    return product([psi(m).substitute(block_sums(n, m)) for m in divisors(n)])


def delta(n):
    if n < 1:
        raise ValueError("n must be positive")
    return delta_det(n)


@lru_cache(maxsize=None)
def psi(n):
    """prod over units i of sum_j e_n^(ij) X_j, computed in Z[e_n] and cast to Z."""
    if n < 1:
        raise ValueError("n must be positive")
    ring = CYC(n)
    forms = [SparsePoly.linear([root_power(n, i * j) for j in range(n)], ring) for i in units(n)]
    return cast_to_int(product(forms))


def _check_large(n, large, what):
    if n >= 6 and not large:
        raise RefusedTooLarge(f"{what} for n={n} is refused (pass large=True to force)")


@lru_cache(maxsize=None)
def _phi(n):
    base = psi(n)
    return product([pc.act(s, base) for s in pc.coset_reps_C(n)])


def phi(n, large=False):
    """Symmetrization of Psi_n over S_n."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_large(n, large, "Phi_n")
    return _phi(n)


def phi_randomized(n, rng):
    """Phi_n built from a randomly chosen valid coset system (for choice-independence checks)."""
    base = psi(n)
    return product([pc.act(s, base) for s in pc.coset_reps_C(n, rng=rng)])


def theta_factors(n, m, rng=None):
    """The factors phi_P(Phi_m(Y_0..Y_{m-1})), one per partition P in P_{n,m}."""
    if m < 1 or n % m:
        raise NotDivisor(f"{m} does not divide {n}")
    phim = _phi(m) if rng is None else phi_randomized(m, rng)
    blocked = phim.substitute(block_sums(n, m))
    return [pc.act(pc.block_perm(P, n, m, rng=rng), blocked) for P in pc.partitions_P(n, m)]


@lru_cache(maxsize=None)
def _theta_big(n, m):
    return product(theta_factors(n, m))


def theta_big(n, m, large=False):
    """Theta_{n,m}: the symmetrization of Psi_m at block sums."""
    if m < 1 or n % m:
        raise NotDivisor(f"{m} does not divide {n}")
    _check_large(m, large, "Theta_{n,m}")
    return _theta_big(n, m)


def theta_big_randomized(n, m, rng):
    if m < 1 or n % m:
        raise NotDivisor(f"{m} does not divide {n}")
    _check_large(m, False, "Theta_{n,m}")
    return product(theta_factors(n, m, rng=rng))


def sigma(n, large=False):
    """Sigma_n = prod over m | n of Theta_{n,m}; a symmetrization of Delta_n."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_large(n, large, "Sigma_n")
    return product([theta_big(n, m, large=large) for m in divisors(n)])


def theta_degree(n, m):
    """phi(m) * |C_m| * |P_{n,m}|."""
    return len(units(m)) * len(pc.coset_reps_C(m)) * pc.count_partitions_P(n, m) if m > 1 else pc.count_partitions_P(n, m)
