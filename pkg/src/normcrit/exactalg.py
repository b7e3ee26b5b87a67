"""Exact sparse multivariate polynomials over Z, Z/pZ and Z[e_m].

Monomials are packed into one Python int, ``BITS`` bits per variable with
X_0 in the most significant field, so that

* multiplying monomials is adding keys, and
* numeric order of keys is lexicographic order with X_0 > X_1 > ...

Coefficients are plain ints for ``ZZ`` and ``GF(p)`` (kept in ``[0, p)``)
and :class:`CycInteger` for ``CYC(m)``.  All arithmetic is exact.
"""

from dataclasses import dataclass
from functools import lru_cache
import heapq

from .errors import (
    ArityMismatch,
    DivideByZero,
    NotDivisible,
    NotPrime,
    NotRationalInteger,
    RingMismatch,
)
from .ntheory import divisors, is_prime, totient

BITS = 16
MAX_EXP = (1 << BITS) - 1


# ---------------------------------------------------------------------------
# univariate integer polynomials (little-endian coefficient tuples)


def _upoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _upoly_divmod_monic(a, b):
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [0], a
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return quot, a[:db] or [0]


@lru_cache(maxsize=None)
def cyc_polynomial(m):
    """The m-th cyclotomic polynomial as a little-endian tuple of ints.

    Computed as (x^m - 1) divided exactly by the product of the cyclotomic
    polynomials of the proper divisors of m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in divisors(m)[:-1]:
        den = _upoly_mul(den, cyc_polynomial(d))
    quot, rem = _upoly_divmod_monic(num, den)
    assert not any(rem)
    return tuple(quot)


@lru_cache(maxsize=None)
def _power_table(m):
    """Coordinates of x^k mod cyc_polynomial(m) for 0 <= k < 2*phi(m)."""
    phi = cyc_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(max(2 * deg, m)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


class CycInteger:
    """Element of Z[e_m] in the power basis 1, e_m, ..., e_m^(phi(m)-1)."""

    __slots__ = ("m", "coords")

    def __init__(self, m, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != totient(m):
            raise ValueError(f"CYC({m}) elements need {totient(m)} coordinates")
        self.m = m
        self.coords = coords

    @classmethod
    def from_int(cls, m, c):
        return cls(m, (c,) + (0,) * (totient(m) - 1))

    def _coerce(self, other):
        if isinstance(other, CycInteger):
            if other.m != self.m:
                raise RingMismatch(f"CYC({self.m}) vs CYC({other.m})")
            return other.coords
        if isinstance(other, int):
            return (other,) + (0,) * (len(self.coords) - 1)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return CycInteger(self.m, [x + y for x, y in zip(self.coords, c)])

    __radd__ = __add__

    def __neg__(self):
        return CycInteger(self.m, [-x for x in self.coords])

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return CycInteger(self.m, [x - y for x, y in zip(self.coords, c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInteger(self.m, [x * other for x in self.coords])
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        deg = len(self.coords)
        table = _power_table(self.m)
        out = [0] * deg
        for i, x in enumerate(self.coords):
            if not x:
                continue
            for j, y in enumerate(c):
                if y:
                    xy = x * y
                    for k, t in enumerate(table[i + j]):
                        if t:
                            out[k] += xy * t
        return CycInteger(self.m, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self.coords == tuple(c)

    def __hash__(self):
        return hash((self.m, self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_rational_integer(self):
        return not any(self.coords[1:])

    def __repr__(self):
        return f"CycInteger({self.m}, {self.coords})"


def root_power(m, k):
    """e_m^(k mod m) reduced modulo the m-th cyclotomic polynomial."""
    return CycInteger(m, _power_table(m)[k % m])


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class Ring:
    kind: str  # "INT", "MODP" or "CYC"
    modulus: int = 0

    def __str__(self):
        return self.kind if self.kind == "INT" else f"{self.kind}({self.modulus})"

    @property
    def characteristic(self):
        return self.modulus if self.kind == "MODP" else 0

    def coerce(self, c):
        if self.kind == "INT":
            return int(c)
        if self.kind == "MODP":
            return int(c) % self.modulus
        if isinstance(c, CycInteger):
            if c.m != self.modulus:
                raise RingMismatch(f"CYC({c.m}) coefficient in {self}")
            return c
        return CycInteger.from_int(self.modulus, int(c))

    def one(self):
        return self.coerce(1)


ZZ = Ring("INT")


def GF(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return Ring("MODP", p)


def CYC(m):
    if m < 1:
        raise ValueError("conductor must be positive")
    return Ring("CYC", m)


def parse_ring(text):
    """Inverse of ``str(ring)``: ``INT``, ``MODP(p)`` or ``CYC(m)``."""
    if text == "INT":
        return ZZ
    kind, _, rest = text.partition("(")
    if kind == "MODP":
        return GF(int(rest.rstrip(")")))
    if kind == "CYC":
        return CYC(int(rest.rstrip(")")))
    raise ValueError(f"unknown ring {text!r}")


# ---------------------------------------------------------------------------
# monomial packing


def pack(exps):
    key = 0
    for e in exps:
        if e < 0 or e > MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key = (key << BITS) | e
    return key


def unpack(key, nvars):
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & MAX_EXP
        key >>= BITS
    return tuple(out)


class SparsePoly:
    """Immutable sparse polynomial in X_0..X_{nvars-1} over ``ring``.

    ``terms`` maps exponent tuples to coefficients; zero coefficients are
    dropped.  Iteration (:meth:`terms`) is in decreasing lex order, so the
    first term is the lex-leading one.
    """

    __slots__ = ("nvars", "ring", "_t", "_maxexp")

    def __init__(self, nvars, ring=ZZ, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        self.ring = ring
        self._maxexp = None
        t = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"monomial {exps} in {nvars} variables")
            k = pack(exps)
            t[k] = t.get(k, 0) + ring.coerce(c)
        self._t = _cleanup(t, ring)

    @classmethod
    def _raw(cls, nvars, ring, packed):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.ring = ring
        obj._t = packed
        obj._maxexp = None
        return obj

    @classmethod
    def var(cls, i, nvars, ring=ZZ):
        if not 0 <= i < nvars:
            raise ArityMismatch(f"X_{i} outside {nvars} variables")
        return cls._raw(nvars, ring, {1 << (BITS * (nvars - 1 - i)): ring.one()})

    @classmethod
    def const(cls, c, nvars, ring=ZZ):
        return cls._raw(nvars, ring, _cleanup({0: ring.coerce(c)}, ring))

    @classmethod
    def linear(cls, coeffs, ring=ZZ):
        """sum_i coeffs[i] * X_i."""
        n = len(coeffs)
        t = {1 << (BITS * (n - 1 - i)): ring.coerce(c) for i, c in enumerate(coeffs)}
        return cls._raw(n, ring, _cleanup(t, ring))

    # -- inspection -------------------------------------------------------
    def terms(self):
        n = self.nvars
        for k in sorted(self._t, reverse=True):
            yield unpack(k, n), self._t[k]

    def as_dict(self):
        return {unpack(k, self.nvars): c for k, c in self._t.items()}

    def coeff(self, exps):
        return self._t.get(pack(exps), 0)

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def leading_term(self):
        if not self._t:
            return None
        k = max(self._t)
        return unpack(k, self.nvars), self._t[k]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return max(sum(unpack(k, self.nvars)) for k in self._t)

    def is_homogeneous(self):
        return len({sum(unpack(k, self.nvars)) for k in self._t}) <= 1

    def max_exponent(self):
        if self._maxexp is None:
            m = 0
            for k in self._t:
                while k:
                    m = max(m, k & MAX_EXP)
                    k >>= BITS
            self._maxexp = m
        return self._maxexp

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, SparsePoly):
            raise TypeError("SparsePoly expected")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, (int, CycInteger)):
            return SparsePoly.const(other, self.nvars, self.ring)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        t = dict(self._t)
        get = t.get
        for k, c in other._t.items():
            t[k] = get(k, 0) + c
        return SparsePoly._raw(self.nvars, self.ring, _cleanup(t, self.ring))

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, self.ring, _cleanup({k: -c for k, c in self._t.items()}, self.ring))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, CycInteger)):
            c = self.ring.coerce(other)
            return SparsePoly._raw(self.nvars, self.ring, _cleanup({k: v * c for k, v in self._t.items()}, self.ring))
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if self.max_exponent() + other.max_exponent() > MAX_EXP:
            raise OverflowError("exponent exceeds packing width")
        out = {}
        get = out.get
        bitems = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bitems:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return SparsePoly._raw(self.nvars, self.ring, _cleanup(out, self.ring))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(1, self.nvars, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.ring == other.ring and self._t == other._t
        if isinstance(other, int):
            return self == SparsePoly.const(other, self.nvars, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, self.ring, frozenset(self._t.items())))

    # -- variable manipulation --------------------------------------------
    def permute(self, images):
        """Substitute X_i -> X_{images[i]}."""
        n = self.nvars
        if len(images) != n:
            raise ArityMismatch(f"permutation of length {len(images)} on {n} variables")
        shifts = [BITS * (n - 1 - images[i]) for i in range(n)]
        src = [BITS * (n - 1 - i) for i in range(n)]
        pairs = list(zip(src, shifts))
        t = {}
        for k, c in self._t.items():
            nk = 0
            for s, d in pairs:
                nk |= ((k >> s) & MAX_EXP) << d
            t[nk] = c
        return SparsePoly._raw(n, self.ring, t)

    def substitute(self, images):
        """Compose: replace X_i by the polynomial ``images[i]``.

        All images must share one ring and arity (the result's).
        """
        if len(images) != self.nvars:
            raise ArityMismatch(f"{len(images)} images for {self.nvars} variables")
        ref = images[0]
        for im in images:
            ref._check(im)
        if self.ring != ref.ring:
            raise RingMismatch(f"{self.ring} vs {ref.ring}")
        powers = [{0: SparsePoly.const(1, ref.nvars, ref.ring)} for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        acc = {}
        get = acc.get
        for exps, c in self.terms():
            term = SparsePoly.const(c, ref.nvars, ref.ring)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            for k, v in term._t.items():
                acc[k] = get(k, 0) + v
        return SparsePoly._raw(ref.nvars, ref.ring, _cleanup(acc, ref.ring))

    def evaluate(self, point):
        """Evaluate at ``point`` using the coefficients' own arithmetic."""
        if len(point) != self.nvars:
            raise ArityMismatch("point has wrong length")
        total = 0
        for exps, c in self.terms():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * x**e
            total = total + v
        return total

    # -- text serialization -----------------------------------------------
    def to_text(self):
        """One term per line, ``coeff e0 e1 ... e(n-1)``, lex order."""
        lines = []
        for exps, c in self.terms():
            cs = " ".join(str(x) for x in c.coords) if isinstance(c, CycInteger) else str(c)
            lines.append(f"{cs} " + " ".join(map(str, exps)))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text, nvars, ring=ZZ):
        terms = {}
        width = totient(ring.modulus) if ring.kind == "CYC" else 1
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if len(parts) != width + nvars:
                raise ArityMismatch(f"bad term line {line!r}")
            nums = [int(x) for x in parts]
            c = CycInteger(ring.modulus, nums[:width]) if ring.kind == "CYC" else nums[0]
            exps = tuple(nums[width:])
            if exps in terms:
                raise ValueError(f"duplicate monomial {exps}")
            terms[exps] = c
        return cls(nvars, ring, terms)

    def to_json_dict(self):
        def enc(c):
            return [str(x) for x in c.coords] if isinstance(c, CycInteger) else str(c)

        return {
            "nvars": self.nvars,
            "ring": str(self.ring),
            "terms": [{"e": list(e), "c": enc(c)} for e, c in self.terms()],
        }

    @classmethod
    def from_json_dict(cls, doc):
        ring = parse_ring(doc["ring"])
        terms = {}
        for t in doc["terms"]:
            c = t["c"]
            terms[tuple(t["e"])] = CycInteger(ring.modulus, [int(x) for x in c]) if isinstance(c, list) else int(c)
        return cls(doc["nvars"], ring, terms)

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.ring}, {len(self)} terms)"

    def __str__(self):
        if not self._t:
            return "0"
        out = []
        for exps, c in self.terms():
            mono = "*".join(f"X{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            cs = str(c)
            if mono:
                if cs == "1":
                    cs = ""
                elif cs == "-1":
                    cs = "-"
                else:
                    cs += "*"
            out.append(cs + mono)
        return " + ".join(out).replace("+ -", "- ")


def _cleanup(t, ring):
    if ring.kind == "MODP":
        p = ring.modulus
        return {k: c % p for k, c in t.items() if c % p}
    return {k: c for k, c in t.items() if c}


# ---------------------------------------------------------------------------
# module-level operations


def poly_arith(a, b, op):
    if op == "add":
        a._check(b)
        return a + b
    if op == "mul":
        a._check(b)
        return a * b
    raise ValueError(f"unknown op {op!r}")


def product(factors, one=None):
    """Multiply a list of polynomials.

    Folds left after sorting by term count, so each step multiplies the
    growing accumulator by one small factor; this is much cheaper than a
    balanced tree once products become dense.
    """
    factors = sorted(factors, key=len)
    if not factors:
        if one is None:
            raise ValueError("empty product needs an explicit one")
        return one
    acc = factors[0]
    for f in factors[1:]:
        acc = acc * f
    return acc


def poly_exact_divide(a, b):
    """Return q with a == b*q over the coefficient ring, else raise NotDivisible."""
    a._check(b)
    if a.ring.kind == "CYC":
        raise RingMismatch("exact division is defined over INT and MODP only")
    if b.is_zero():
        raise DivideByZero("division by the zero polynomial")
    ring, n = a.ring, a.nvars
    lk = max(b._t)
    lc = b._t[lk]
    lexp = unpack(lk, n)
    inv = pow(lc, -1, ring.modulus) if ring.kind == "MODP" else None
    rest = [(k, c) for k, c in b._t.items() if k != lk]

    r = dict(a._t)
    heap = [-k for k in r]
    heapq.heapify(heap)
    q = {}
    while heap:
        k = -heapq.heappop(heap)
        c = r.get(k, 0)
        if ring.kind == "MODP":
            c %= ring.modulus
        if not c:
            r.pop(k, None)
            continue
        # stale duplicates of k may remain in the heap; they are dropped above
        r.pop(k)
        exps = unpack(k, n)
        if any(x < y for x, y in zip(exps, lexp)):
            raise NotDivisible("leading monomial not divisible")
        if inv is not None:
            qc = c * inv % ring.modulus
        else:
            qc, rem = divmod(c, lc)
            if rem:
                raise NotDivisible("leading coefficient not divisible")
        dk = k - lk
        q[dk] = qc
        for kb, cb in rest:
            nk = dk + kb
            if nk not in r:
                heapq.heappush(heap, -nk)
            r[nk] = r.get(nk, 0) - qc * cb
    return SparsePoly._raw(n, ring, _cleanup(q, ring))


def cast_to_int(p):
    """Project a CYC(m) polynomial with rational-integer coefficients to ZZ."""
    if p.ring.kind != "CYC":
        raise RingMismatch("cast_to_int expects a CYC polynomial")
    t = {}
    for k, c in p._t.items():
        if not c.is_rational_integer():
            raise NotRationalInteger(unpack(k, p.nvars), c)
        t[k] = c.coords[0]
    return SparsePoly._raw(p.nvars, ZZ, _cleanup(t, ZZ))


def reduce_mod_p(p, prime):
    if p.ring.kind != "INT":
        raise RingMismatch("reduce_mod_p expects an INT polynomial")
    ring = GF(prime)
    return SparsePoly._raw(p.nvars, ring, _cleanup(dict(p._t), ring))


def change_ring(p, ring):
    """Re-embed an INT polynomial into ``ring`` (MODP reduces, CYC embeds)."""
    if p.ring.kind != "INT":
        raise RingMismatch("change_ring expects an INT polynomial")
    return SparsePoly._raw(p.nvars, ring, _cleanup({k: ring.coerce(c) for k, c in p._t.items()}, ring))
