"""Finite fields F_p < F_q < F_{q^n}, irreducibility, Frobenius conjugates,
the circulant normality test and the coefficient criterion.

Elements of F_q are ints in [0, q): the coefficient vector over F_p in the
basis 1, t, ..., t^(k-1) of F_p[t]/(modulus), packed little-endian base p.
The prime subfield is therefore {0, ..., p-1} with its usual arithmetic.

Univariate polynomials over F_q are little-endian lists of such ints.
F_{q^n} is always realized as F_q[X]/(f) for the irreducible f under test,
so r = X mod f is a root and its conjugates are r^(q^i).
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product as iproduct
import re

import numpy as np

from .elemsym import eval_epoly, h_char0, h_p
from .errors import CharMismatch, NotIrreducible, NotPrime
from .ntheory import is_prime, prime_factors, prime_power

MAX_Q = 4096


# ---------------------------------------------------------------------------
# F_q


class FieldCtx:
    """F_q with q = p^k, defined by a monic irreducible ``modulus`` over F_p.

    Arithmetic goes through precomputed q x q tables (q <= 4096).
    """

    def __init__(self, p, k, modulus):
        self.p, self.k, self.q = p, k, p**k
        self.modulus = tuple(modulus)
        q = self.q
        digits = [self._digits(x) for x in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(x, q):
                s = self._pack([(a + b) % p for a, b in zip(digits[x], digits[y])])
                m = self._pack(_fp_mulmod(digits[x], digits[y], self.modulus, p))
                add[x, y] = add[y, x] = s
                mul[x, y] = mul[y, x] = m
        self.ADD, self.MUL = add, mul
        self.NEG = np.array([int(np.where(add[x] == 0)[0][0]) for x in range(q)], dtype=np.int64)
        self.SUB = add[:, self.NEG]
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.where(mul[x] == 1)[0][0])
        self.INV = inv
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = self.NEG.tolist()
        self._inv = inv.tolist()

    def _digits(self, x):
        out = []
        for _ in range(self.k):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def _pack(self, digits):
        x = 0
        for d in reversed(list(digits)[: self.k]):
            x = x * self.p + d
        return x

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def elements(self):
        return range(self.q)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            e >>= 1
        return r

    def from_int(self, c):
        """Image of the integer c in the prime subfield."""
        return c % self.p


def _fp_mulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1) if k else [0]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
    return prod[:k]


@lru_cache(maxsize=None)
def make_field(p, k=1):
    """F_{p^k} defined by the lexicographically least monic irreducible of degree k.

    Candidates X^k + c_1 X^(k-1) + ... + c_k are scanned in lex order of
    (c_1, ..., c_k).  For k = 1 the modulus is X.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    if p**k > MAX_Q:
        raise ValueError(f"q = {p**k} exceeds the table limit {MAX_Q}")
    if k == 1:
        return FieldCtx(p, 1, (0, 1))
    base = make_field(p, 1)
    for cs in iproduct(range(p), repeat=k):
        f = MonicPoly(base, cs)
        if is_irreducible(f):
            return FieldCtx(p, k, tuple(reversed(cs)) + (1,))
    raise AssertionError("no irreducible polynomial found")


def field_of_order(q):
    p, k = prime_power(q)
    return make_field(p, k)


# ---------------------------------------------------------------------------
# polynomials over F_q (little-endian lists)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return _trim(out)


def _psub(F, a, b):
    return _padd(F, a, [F.neg(y) for y in b])


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _pdivmod(F, a, b):
    a = list(a)
    _trim(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = F.mul(c, inv)
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return _trim(quot), _trim(a[:db])


def _pmod(F, a, b):
    return _pdivmod(F, a, b)[1]


def _pgcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(F, a, b)
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(x, inv) for x in a]
    return a


def _ppowmod(F, base, e, f):
    result = [1]
    base = _pmod(F, base, f)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), f)
        e >>= 1
        if e:
            base = _pmod(F, _pmul(F, base, base), f)
    return result


@dataclass(frozen=True)
class MonicPoly:
    """X^n + a_1 X^(n-1) + ... + a_n over ``ctx``; ``coeffs == (a_1, ..., a_n)``."""

    ctx: FieldCtx
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("degree must be at least 1")
        if any(not 0 <= c < self.ctx.q for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.ctx.q})")

    @property
    def degree(self):
        return len(self.coeffs)

    def little_endian(self):
        return list(reversed(self.coeffs)) + [1]

    def __str__(self):
        n = self.degree
        parts = [f"x^{n}" if n > 1 else "x"]
        for i, c in enumerate(self.coeffs, start=1):
            d = n - i
            if not c:
                continue
            mono = "" if d == 0 else "x" if d == 1 else f"x^{d}"
            if d == 0:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)


_TERM = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")


def parse_poly(text, ctx):
    """Parse ``x^4+x^3+1`` or a coefficient list ``a_1,...,a_n`` into a MonicPoly.

    Coefficients are field elements written as integers in [0, q).
    """
    s = text.replace(" ", "").lower()
    if "x" not in s:
        return MonicPoly(ctx, [int(c) for c in s.split(",") if c != ""])
    coeffs = {}
    for term in s.replace("-", "+-").split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        term = term.lstrip("-")
        mt = _TERM.match(term)
        if not mt or (mt.group(1) is None and mt.group(2) is None):
            raise ValueError(f"cannot parse term {term!r}")
        c = int(mt.group(1)) if mt.group(1) is not None else 1
        if c >= ctx.q:
            raise ValueError(f"coefficient {c} is not an element of F_{ctx.q}")
        if neg:
            c = ctx.neg(c)
        d = 0 if mt.group(2) is None else int(mt.group(3) or 1)
        coeffs[d] = ctx.add(coeffs.get(d, 0), c)
    n = max(d for d, c in coeffs.items() if c) if any(coeffs.values()) else 0
    if coeffs.get(n) != 1 or n < 1:
        raise ValueError("polynomial must be monic of degree >= 1")
    return MonicPoly(ctx, [coeffs.get(n - i, 0) for i in range(1, n + 1)])


def is_irreducible(f):
    """Rabin's test: X^(q^n) = X mod f and gcd(X^(q^(n/t)) - X, f) = 1 for primes t | n."""
    F, n = f.ctx, f.degree
    if n == 1:
        return True
    fl = f.little_endian()
    x = [0, 1]
    powers = {0: x}
    cur = x
    for i in range(1, n + 1):
        cur = _ppowmod(F, cur, F.q, fl)
        powers[i] = cur
    if _trim(list(powers[n])) != _pmod(F, x, fl):
        return False
    for t in prime_factors(n):
        g = _pgcd(F, _psub(F, powers[n // t], x), fl)
        if len(g) != 1:
            return False
    return True


def monic_polys(ctx, n):
    """All monic degree-n polynomials, in lex order of (a_1, ..., a_n)."""
    for cs in iproduct(range(ctx.q), repeat=n):
        yield MonicPoly(ctx, cs)


# ---------------------------------------------------------------------------
# F_{q^n} = F_q[X]/(f)


class ExtField:
    """Residue ring F_q[X]/(f); a field when f is irreducible.  Elements are n-tuples."""

    def __init__(self, f):
        self.f = f
        self.F = f.ctx
        self.n = f.degree
        self._fl = f.little_endian()

    def _norm(self, a):
        a = list(a) + [0] * (self.n - len(a))
        return tuple(a[: self.n])

    def zero(self):
        return (0,) * self.n

    def one(self):
        return self._norm([1])

    def embed(self, c):
        return self._norm([c])

    def add(self, a, b):
        F = self.F
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.F
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        return self._norm(_pmod(self.F, _pmul(self.F, _trim(list(a)), _trim(list(b))), self._fl))

    def pow(self, a, e):
        return self._norm(_ppowmod(self.F, _trim(list(a)), e, self._fl))

    def inv(self, a):
        F = self.F
        r0, r1 = list(self._fl), _trim(list(a))
        if not r1:
            raise ZeroDivisionError("inverse of 0")
        s0, s1 = [], [1]
        while r1:
            qt, rem = _pdivmod(F, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(F, s0, _pmul(F, qt, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("not invertible modulo f")
        c = F.inv(r0[0])
        return self._norm(_pmod(F, [F.mul(c, x) for x in s0], self._fl))

    def is_zero(self, a):
        return not any(a)

    def generator(self):
        """The class of X."""
        return self._norm(_pmod(self.F, [0, 1], self._fl))


def conjugates(f):
    """(r, r^q, ..., r^(q^(n-1))) with r = X mod f, in F_q[X]/(f)."""
    if not is_irreducible(f):
        raise NotIrreducible(str(f))
    K = ExtField(f)
    r = K.generator()
    out = [r]
    for _ in range(f.degree - 1):
        out.append(K.pow(out[-1], f.ctx.q))
    return out


def circulant_det(values, K):
    """det of the circulant with first row ``values`` (row i = shift right by i)."""
    n = len(values)
    M = [[values[(j - i) % n] for j in range(n)] for i in range(n)]
    det = K.one()
    for c in range(n):
        piv = next((r for r in range(c, n) if not K.is_zero(M[r][c])), None)
        if piv is None:
            return K.zero()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = K.sub(K.zero(), det)
        pv = M[c][c]
        det = K.mul(det, pv)
        inv = K.inv(pv)
        for r in range(c + 1, n):
            if K.is_zero(M[r][c]):
                continue
            factor = K.mul(M[r][c], inv)
            M[r] = [K.sub(M[r][j], K.mul(factor, M[c][j])) if j >= c else M[r][j] for j in range(n)]
    return det


def is_normal_exact(f):
    """Delta_n(r_0, ..., r_{n-1}) != 0 for the Frobenius conjugates of a root of f."""
    conj = conjugates(f)
    return not ExtField(f).is_zero(circulant_det(conj, ExtField(f)))


def all_perm_delta_check(f):
    """Whether Delta_n(r_sigma(0), ..., r_sigma(n-1)) != 0 for every sigma in S_n."""
    conj = conjugates(f)
    K = ExtField(f)
    return all(not K.is_zero(circulant_det([conj[i] for i in s], K)) for s in permutations(range(f.degree)))


# ---------------------------------------------------------------------------
# the coefficient criterion

CERTIFIED_NORMAL = "CERTIFIED_NORMAL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class NormalityVerdict:
    irreducible: bool
    exact_normal: object  # bool, or None when f is reducible
    criterion: object  # CERTIFIED_NORMAL / INCONCLUSIVE, or None when f is reducible
    h_value: object  # field element, or None when f is reducible
    variant: str = "pary"

    def as_dict(self):
        return {
            "irreducible": self.irreducible,
            "exact_normal": self.exact_normal,
            "criterion": self.criterion,
            "h_value": self.h_value,
            "variant": self.variant,
        }


def criterion_poly(f, variant, use_cache=True, cache_dir=None):
    if variant == "char0":
        return h_char0(f.degree, use_cache, cache_dir)
    if variant == "pary":
        return h_p(f.ctx.p, f.degree, use_cache, cache_dir)
    raise ValueError(f"unknown variant {variant!r}")


def check_criterion(f, variant="pary", use_cache=True, cache_dir=None):
    """Evaluate h_n (``char0``) or h_{p,n} (``pary``) at (a_1, ..., a_n).

    A nonzero value certifies normality of an irreducible f.
    """
    h = criterion_poly(f, variant, use_cache, cache_dir)
    if not is_irreducible(f):
        return NormalityVerdict(False, None, None, None, variant)
    value = eval_epoly(h, f.coeffs, f.ctx)
    verdict = CERTIFIED_NORMAL if value else INCONCLUSIVE
    return NormalityVerdict(True, is_normal_exact(f), verdict, value, variant)


# ---------------------------------------------------------------------------
# batched kernels (numpy); one row per polynomial


def index_to_coeffs(q, n, idx):
    """Rows (a_1, ..., a_n) for candidate indices, a_1 the most significant base-q digit."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty((len(idx), n), dtype=np.int64)
    rest = idx.copy()
    for i in range(n - 1, -1, -1):
        out[:, i] = rest % q
        rest //= q
    return out


def coeffs_to_index(q, A):
    idx = np.zeros(A.shape[0], dtype=np.int64)
    for i in range(A.shape[1]):
        idx = idx * q + A[:, i]
    return idx


def _batch_polymul(F, a, b):
    """Product of monic-or-not little-endian coefficient rows (no reduction)."""
    la, lb = a.shape[-1], b.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (la + lb - 1,), dtype=np.int64)
    for i in range(la):
        for j in range(lb):
            out[..., i + j] = F.ADD[out[..., i + j], F.MUL[a[..., i], b[..., j]]]
    return out


def reducible_mask(F, n):
    """Boolean array over all q^n monic degree-n polynomials: True where reducible.

    Marks every product g*h of monic g, h with 1 <= deg g <= n/2.
    """
    q = F.q
    mask = np.zeros(q**n, dtype=bool)
    for d in range(1, n // 2 + 1):
        G = index_to_coeffs(q, d, np.arange(q**d))
        H = index_to_coeffs(q, n - d, np.arange(q ** (n - d)))
        gl = np.concatenate([G[:, ::-1], np.ones((len(G), 1), dtype=np.int64)], axis=1)
        hl = np.concatenate([H[:, ::-1], np.ones((len(H), 1), dtype=np.int64)], axis=1)
        for row in gl:
            prod = _batch_polymul(F, row[None, :], hl)
            A = prod[:, :-1][:, ::-1]
            mask[coeffs_to_index(q, A)] = True
    return mask


class _BatchExt:
    """Arithmetic in F_q[X]/(f_b) for a batch of monic moduli, one per row."""

    def __init__(self, F, A):
        self.F = F
        self.n = A.shape[1]
        self.flow = A[:, ::-1]  # f_0 .. f_{n-1}, little-endian, leading 1 implicit

    def reduce(self, prod, fl):
        F, n = self.F, self.n
        prod = prod.copy()
        for k in range(prod.shape[-1] - 1, n - 1, -1):
            c = prod[..., k]
            for j in range(n):
                prod[..., k - n + j] = F.SUB[prod[..., k - n + j], F.MUL[c, fl[..., j]]]
        return prod[..., :n]

    def mul(self, a, b, fl):
        return self.reduce(_batch_polymul(self.F, a, b), fl)

    def pow(self, a, e, fl):
        result = np.zeros_like(a)
        result[..., 0] = 1
        while e:
            if e & 1:
                result = self.mul(result, a, fl)
            e >>= 1
            if e:
                a = self.mul(a, a, fl)
        return result


def batch_conjugates(F, A):
    """Array (B, n, n): conjugate i of the root X mod f_b as coordinates over F_q."""
    B, n = A.shape
    ext = _BatchExt(F, A)
    fl = ext.flow
    x = np.zeros((B, max(n, 2)), dtype=np.int64)
    x[:, 1] = 1
    r = ext.reduce(x, fl) if n >= 2 else F.NEG[A[:, :1]]
    out = np.empty((B, n, n), dtype=np.int64)
    out[:, 0] = r
    for i in range(1, n):
        out[:, i] = ext.pow(out[:, i - 1], F.q, fl)
    return out


def batch_normal_exact(F, A):
    """For irreducible rows of A, whether Delta_n of the conjugates is nonzero.

    Fraction-free elimination: row_r <- pivot*row_r - M[r,c]*row_c keeps the
    zero pattern of the determinant, so no inverses are needed.
    """
    B, n = A.shape
    if B == 0:
        return np.zeros(0, dtype=bool)
    ext = _BatchExt(F, A)
    conj = batch_conjugates(F, A)
    cols = np.array([[(j - i) % n for j in range(n)] for i in range(n)])
    M = conj[:, cols]  # (B, n, n, n)
    fl4 = ext.flow[:, None, None, :]
    alive = np.ones(B, dtype=bool)
    rows_b = np.arange(B)
    for c in range(n):
        nz = np.any(M[:, c:, c, :] != 0, axis=-1)
        has = nz.any(axis=1)
        alive &= has
        piv = np.argmax(nz, axis=1) + c
        perm = np.tile(np.arange(n), (B, 1))
        perm[rows_b, c] = piv
        perm[rows_b, piv] = c
        M = M[rows_b[:, None], perm]
        if c == n - 1:
            break
        pivot = M[:, c, c][:, None, None, :]
        low = M[:, c + 1 :, c:, :]
        lead = M[:, c + 1 :, c : c + 1, :]
        top = M[:, c : c + 1, c:, :]
        t1 = ext.mul(np.broadcast_to(pivot, low.shape), low, fl4)
        t2 = ext.mul(np.broadcast_to(lead, low.shape), np.broadcast_to(top, low.shape), fl4)
        M = M.copy()
        M[:, c + 1 :, c:, :] = F.SUB[t1, t2]
    return alive


def batch_eval_epoly(h, F, A):
    """Values of h at each row of A, as F_q elements."""
    B, n = A.shape
    if h.char and h.char != F.p:
        raise CharMismatch(f"char-{h.char} polynomial evaluated over characteristic {F.p}")
    maxe = max((max(e) for e in h.terms), default=0)
    pw = np.zeros((F.q, maxe + 1), dtype=np.int64)
    pw[:, 0] = 1
    for e in range(1, maxe + 1):
        pw[:, e] = F.MUL[pw[:, e - 1], np.arange(F.q)]
    total = np.zeros(B, dtype=np.int64)
    for e, c in h.terms.items():
        cm = c % F.p
        if not cm:
            continue
        v = np.full(B, cm, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                v = F.MUL[v, pw[A[:, i], k]]
        total = F.ADD[total, v]
    return total
