"""Small integer helpers. Inputs here are tiny (n <= a few hundred), so
trial division is plenty."""

from functools import lru_cache
from math import gcd


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def divisors(n):
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def prime_factors(n):
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def units(n):
    """Representatives 0 <= i < n of (Z/nZ)^x; ``units(1) == (0,)``."""
    if n == 1:
        return (0,)
    return tuple(i for i in range(1, n) if gcd(i, n) == 1)


def totient(n):
    return len(units(n))


def prime_power(q):
    """Return ``(p, k)`` with ``q == p**k``, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    if q != 1:
        raise ValueError(f"{q * p**k} is not a prime power")
    return p, k


def split_p_part(n, p):
    """Write n = p^e * t with p not dividing t; returns (e, t)."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def multiplicative_order(q, d):
    """Order of q in (Z/dZ)^x by direct power iteration; order 1 when d == 1."""
    if d == 1:
        return 1
    x, k = q % d, 1
    while x != 1:
        x = x * q % d
        k += 1
    return k
