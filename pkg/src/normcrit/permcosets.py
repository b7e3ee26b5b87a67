"""Permutations of {0..n-1}, the stabilizers of Psi_n and of the blocked
Psi_m, and explicit coset representative systems.

A permutation is a tuple ``images`` with ``images[i] == sigma(i)``.  It acts
on polynomials by X_i -> X_{sigma(i)}, which is a left action:
``act(compose(s, t), p) == act(s, act(t, p))``.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial, gcd
import random

from .errors import InvalidPartition, NotDivisor
from .ntheory import totient, units


def identity(n):
    return tuple(range(n))


def compose(s, t):
    """The permutation s∘t (apply t first)."""
    return tuple(s[i] for i in t)


def inverse(s):
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def is_permutation(s):
    return sorted(s) == list(range(len(s)))


def act(sigma, p):
    """Apply ``sigma`` to the polynomial ``p`` by permuting its variables."""
    return p.permute(sigma)


@dataclass(frozen=True)
class AffinePerm:
    """x -> a*x + b on Z/nZ."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if gcd(self.a, self.n) != 1:
            raise ValueError(f"{self.a} is not a unit mod {self.n}")

    def images(self):
        return tuple((self.a * x + self.b) % self.n for x in range(self.n))


@dataclass(frozen=True)
class PsiStabilizer:
    """Stab(Psi_n) in S_n: trivial for n <= 2, AGL(1, Z/nZ) otherwise."""

    n: int

    @property
    def kind(self):
        return "TRIVIAL" if self.n <= 2 else "AGL1"

    @property
    def order(self):
        return 1 if self.n <= 2 else self.n * totient(self.n)

    def __contains__(self, sigma):
        n = self.n
        if len(sigma) != n:
            return False
        if n <= 2:
            return tuple(sigma) == identity(n)
        b = sigma[0]
        a = (sigma[1] - b) % n
        if gcd(a, n) != 1:
            return False
        return all(sigma[x] == (a * x + b) % n for x in range(n))

    def elements(self):
        if self.n <= 2:
            return [identity(self.n)]
        return [AffinePerm(self.n, a, b).images() for a in units(self.n) for b in range(self.n)]


def stabilizer_psi(n):
    if n < 1:
        raise ValueError("n must be positive")
    return PsiStabilizer(n)


@dataclass(frozen=True)
class CosetSystem:
    """Left coset representatives ``reps`` of a subgroup of order ``group_order``."""

    group_order: int
    reps: tuple

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)


def _perm_on_subset(subset_images, n):
    """Extend a partial map {i: j} on a subset to a permutation of range(n) fixing the rest."""
    out = list(range(n))
    for i, j in subset_images.items():
        out[i] = j
    return tuple(out)


def coset_reps_C(n, rng=None):
    """Representatives of the left cosets of Stab(Psi_n) in S_n.

    For n > 2 every representative fixes 0: sigma_P * alpha with P running over
    the phi(n)-subsets of {1..n-1}, sigma_P sending the units onto P, and
    alpha in S_{units minus {1}} x S_{non-units}.  sigma_P is the order-preserving
    choice unless ``rng`` is given, in which case a random valid sigma_P is
    drawn for each P (the product over the system does not depend on it).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        return CosetSystem(1, tuple(permutations(range(n))))
    p1 = [i for i in range(1, n) if gcd(i, n) == 1]
    p2 = [i for i in range(1, n) if gcd(i, n) > 1]
    rest1 = p1[1:]
    alphas = []
    for img1 in permutations(rest1):
        for img2 in permutations(p2):
            alphas.append(_perm_on_subset({**dict(zip(rest1, img1)), **dict(zip(p2, img2))}, n))
    reps = []
    for P in combinations(range(1, n), len(p1)):
        comp = [i for i in range(1, n) if i not in P]
        if rng is None:
            sigma_p = _perm_on_subset({**dict(zip(p1, P)), **dict(zip(p2, comp))}, n)
        else:
            P_sh, c_sh = list(P), list(comp)
            rng.shuffle(P_sh)
            rng.shuffle(c_sh)
            sigma_p = _perm_on_subset({**dict(zip(p1, P_sh)), **dict(zip(p2, c_sh))}, n)
        reps.extend(compose(sigma_p, alpha) for alpha in alphas)
    return CosetSystem(n * totient(n), tuple(reps))


@dataclass(frozen=True)
class BlockPartition:
    """m disjoint parts of {0..n-1}, each of size n/m, sorted by minimum element."""

    parts: tuple

    @classmethod
    def from_parts(cls, parts):
        return cls(tuple(sorted(tuple(sorted(p)) for p in parts)))

    @property
    def n(self):
        return sum(len(p) for p in self.parts)

    @property
    def m(self):
        return len(self.parts)


def partitions_P(n, m):
    """All unordered partitions of {0..n-1} into m parts of size n/m."""
    if m < 1 or n % m:
        raise NotDivisor(f"{m} does not divide {n}")
    size = n // m
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(BlockPartition(tuple(acc)))
            return
        first, others = remaining[0], remaining[1:]
        for rest in combinations(others, size - 1):
            part = (first,) + rest
            left = [x for x in others if x not in rest]
            rec(left, acc + [part])

    rec(list(range(n)), [])
    return out


def count_partitions_P(n, m):
    size = n // m
    return factorial(n) // (factorial(size) ** m * factorial(m))


def blocks(n, m):
    """I_i = {i, i+m, i+2m, ...} for 0 <= i < m."""
    return [tuple(range(i, n, m)) for i in range(m)]


def block_perm(partition, n, m, rng=None):
    """Permutation sending block I_i onto the i-th part, order-preservingly.

    With ``rng`` the parts are matched to blocks in a random order and each
    block is mapped by a random bijection; any such choice is a valid coset
    representative.
    """
    parts = partition.parts if isinstance(partition, BlockPartition) else tuple(partition)
    size = n // m if m and n % m == 0 else 0
    if not size or len(parts) != m or any(len(p) != size for p in parts):
        raise InvalidPartition(f"not a partition of {n} into {m} parts")
    if sorted(x for p in parts for x in p) != list(range(n)):
        raise InvalidPartition(f"parts do not cover 0..{n - 1}")
    parts = sorted(tuple(sorted(p)) for p in parts)
    if rng is not None:
        parts = [rng.sample(p, len(p)) for p in parts]
        rng.shuffle(parts)
    out = [0] * n
    for block, part in zip(blocks(n, m), parts):
        for x, y in zip(block, part):
            out[x] = y
    return tuple(out)


def in_wreath_stabilizer(sigma, m):
    """Membership in Stab(Psi_m) wr S_{n/m}: sigma permutes the blocks I_i,
    and the induced block permutation lies in Stab(Psi_m)."""
    n = len(sigma)
    if n % m:
        return False
    induced = [None] * m
    for x in range(n):
        i, j = x % m, sigma[x] % m
        if induced[i] is None:
            induced[i] = j
        elif induced[i] != j:
            return False
    return tuple(induced) in stabilizer_psi(m)


def wreath_order(n, m):
    return stabilizer_psi(m).order * factorial(n // m) ** m


def all_permutations(n):
    return permutations(range(n))


def random_permutation(n, rng=random):
    s = list(range(n))
    rng.shuffle(s)
    return tuple(s)
