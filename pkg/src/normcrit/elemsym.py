"""Rewriting symmetric polynomials in the elementary symmetric generators.

The reduction is the classical one: read the lex-leading coefficient c of
X^lam (lam weakly decreasing), subtract c * s_1^(lam_1-lam_2) ... s_n^lam_n,
repeat.  A symmetric polynomial is determined by its coefficients on sorted
exponent vectors, so the loop only tracks those.  Products of the s_i are
expanded lazily on sorted exponents too, by repeated multiplication with a
single s_k:

    [X^kappa] (f * s_k) = sum over k-subsets S of [X^sort(kappa - 1_S)] f

which is valid for any symmetric f.  Expansions are memoized per exponent
vector of s, so shared prefixes are paid for once.
"""

from functools import lru_cache
from itertools import combinations
from math import factorial
import hashlib
import json
import os
from pathlib import Path
import tempfile

import numpy as np

from .errors import CacheCorrupt, CharMismatch, NotDivisor, NotPrime, NotSymmetric, RefusedTooLarge, RingMismatch
from .exactalg import ZZ, GF, SparsePoly
from .ntheory import divisors, is_prime, split_p_part
from .symmetrization import theta_big


# ---------------------------------------------------------------------------
# EPoly


class EPoly:
    """Polynomial in s_1..s_n with integer (char 0) or mod-p coefficients."""

    __slots__ = ("n", "char", "terms")

    def __init__(self, n, terms=None, char=0):
        self.n = n
        self.char = char
        t = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} for {n} generators")
            c = int(c) % char if char else int(c)
            if c:
                t[e] = t.get(e, 0) + c
        if char:
            t = {e: c % char for e, c in t.items() if c % char}
        else:
            t = {e: c for e, c in t.items() if c}
        self.terms = t

    @classmethod
    def gen(cls, i, n, char=0):
        """The generator s_i (1-based)."""
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1}, char)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EPoly):
            return NotImplemented
        return (self.n, self.char, self.terms) == (other.n, other.char, other.terms)

    def __hash__(self):
        return hash((self.n, self.char, frozenset(self.terms.items())))

    def __mul__(self, other):
        if self.n != other.n or self.char != other.char:
            raise CharMismatch("EPoly operands differ in arity or characteristic")
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return EPoly(self.n, out, self.char)

    def __add__(self, other):
        if self.n != other.n or self.char != other.char:
            raise CharMismatch("EPoly operands differ in arity or characteristic")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return EPoly(self.n, out, self.char)

    def __neg__(self):
        return EPoly(self.n, {e: -c for e, c in self.terms.items()}, self.char)

    def __sub__(self, other):
        return self + (-other)

    def reduce_mod_p(self, p):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if self.char and self.char != p:
            raise CharMismatch(f"cannot reduce a char-{self.char} polynomial mod {p}")
        return EPoly(self.n, self.terms, p)

    @staticmethod
    def weight(e):
        return sum((i + 1) * x for i, x in enumerate(e))

    def weighted_degrees(self):
        return {self.weight(e) for e in self.terms}

    def weighted_degree(self):
        ws = self.weighted_degrees()
        return max(ws) if ws else -1

    def sorted_terms(self):
        """Graded-lex: by total degree, then lex, both descending."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def lex_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def to_text(self):
        return "".join(f"{c} " + " ".join(map(str, e)) + "\n" for e, c in self.lex_terms())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"s{i + 1}" + (f"^{x}" if x > 1 else "") for i, x in enumerate(e) if x)
            cs = str(c)
            if mono:
                cs = "" if cs == "1" else "-" if cs == "-1" else cs + "*"
            parts.append(cs + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"EPoly(n={self.n}, char={self.char}, {len(self)} terms)"

    def evaluate(self, values):
        """Integer evaluation at s_i = values[i-1] (reduced mod char if char > 0)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v *= x**k
            total += v
        return total % self.char if self.char else total

    def to_symmetric(self, ring=None):
        """Expand into X_0..X_{n-1} by substituting s_i -> e_i(X) (Horner, s_1 outermost)."""
        ring = ring or (GF(self.char) if self.char else ZZ)
        n = self.n
        es = [elementary(i, n, ring) for i in range(1, n + 1)]
        one = SparsePoly.const(1, n, ring)

        def horner(terms, j):
            # terms: {exponent tuple over s_{j+1}..s_n: coeff}
            if j == n:
                (c,) = terms.values()
                return one * c
            groups = {}
            for e, c in terms.items():
                groups.setdefault(e[0], {})[e[1:]] = c
            acc = None
            for k in range(max(groups), -1, -1):
                if acc is not None:
                    acc = acc * es[j]
                if k in groups:
                    inner = horner(groups[k], j + 1)
                    acc = inner if acc is None else acc + inner
            return acc

        if not self.terms:
            return SparsePoly(n, ring)
        return horner(self.terms, 0)


def elementary(i, n, ring=ZZ):
    """e_i(X_0..X_{n-1}) as a SparsePoly."""
    terms = {}
    for S in combinations(range(n), i):
        e = [0] * n
        for j in S:
            e[j] = 1
        terms[tuple(e)] = 1
    return SparsePoly(n, ring, terms)


# ---------------------------------------------------------------------------
# sorted-exponent (monomial symmetric) machinery


@lru_cache(maxsize=None)
def partitions_of(w, n):
    """Partitions of w into at most n parts, as length-n tuples, lex decreasing."""
    out = []

    def rec(remaining, slots, cap, acc):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(acc))
            return
        hi = min(cap, remaining)
        for x in range(hi, -1, -1):
            if x * slots < remaining:
                break
            rec(remaining - x, slots - 1, x, acc + [x])

    rec(w, n, w, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _index(w, n):
    return {lam: i for i, lam in enumerate(partitions_of(w, n))}


@lru_cache(maxsize=None)
def _pieri_gather(w, k, n):
    """Index matrix for multiplication by e_k from weight w to weight w+k."""
    src = _index(w, n)
    sentinel = len(src)
    subsets = list(combinations(range(n), k))
    targets = partitions_of(w + k, n)
    G = np.full((len(targets), len(subsets)), sentinel, dtype=np.int64)
    for r, kappa in enumerate(targets):
        for c, S in enumerate(subsets):
            v = list(kappa)
            ok = True
            for j in S:
                v[j] -= 1
                if v[j] < 0:
                    ok = False
                    break
            if ok:
                G[r, c] = src[tuple(sorted(v, reverse=True))]
    return G


def pieri(vec, w, k, n):
    """Sorted-exponent coefficients of f * e_k, f given at weight w."""
    ext = np.empty(len(vec) + 1, dtype=object)
    ext[:-1] = vec
    ext[-1] = 0
    G = _pieri_gather(w, k, n)
    if G.shape[1] == 0:
        return np.zeros(G.shape[0], dtype=object)
    return ext[G].sum(axis=1)


class _EMonomialTable:
    """Memoized sorted-exponent expansions of s^d in n variables."""

    def __init__(self, n):
        self.n = n
        self.memo = {(0,) * n: np.array([1], dtype=object)}

    def get(self, d):
        d = tuple(d)
        vec = self.memo.get(d)
        if vec is not None:
            return vec
        k = max(i for i, x in enumerate(d) if x) + 1
        prev = list(d)
        prev[k - 1] -= 1
        prev = tuple(prev)
        vec = pieri(self.get(prev), EPoly.weight(prev), k, self.n)
        self.memo[d] = vec
        return vec


_TABLES = {}


def _table(n):
    if n not in _TABLES:
        _TABLES[n] = _EMonomialTable(n)
    return _TABLES[n]


def check_symmetric(p):
    """Raise NotSymmetric unless p is invariant under all permutations of its variables."""
    sorted_coeff = {}
    for exps, c in p.as_dict().items():
        key = tuple(sorted(exps, reverse=True))
        prev = sorted_coeff.setdefault(key, c)
        if prev != c:
            raise NotSymmetric(f"coefficients differ within the orbit of {key}")
    expected = sum(_orbit_size(lam) for lam in sorted_coeff)
    if expected != len(p):
        raise NotSymmetric("some permuted monomials are missing")
    return sorted_coeff


def _orbit_size(lam):
    size = factorial(len(lam))
    counts = {}
    for x in lam:
        counts[x] = counts.get(x, 0) + 1
    for c in counts.values():
        size //= factorial(c)
    return size


def _reduce_homogeneous(coeffs, w, n):
    """Elementary-basis coefficients of a homogeneous symmetric polynomial of degree w."""
    parts = partitions_of(w, n)
    R = np.zeros(len(parts), dtype=object)
    idx = _index(w, n)
    for lam, c in coeffs.items():
        R[idx[lam]] = c
    table = _table(n)
    out = {}
    for i, lam in enumerate(parts):
        c = R[i]
        if not c:
            continue
        d = tuple(lam[j] - (lam[j + 1] if j + 1 < n else 0) for j in range(n))
        E = table.get(d)
        # E is supported on partitions lex <= lam, with coefficient 1 at lam
        R[i:] -= c * E[i:]
        out[d] = c
    return out


def to_elementary(p, check=True):
    """theta with theta(e_1(X), ..., e_n(X)) == p, for symmetric p over INT or MODP."""
    if p.ring.kind not in ("INT", "MODP"):
        raise RingMismatch("to_elementary expects INT or MODP coefficients")
    n = p.nvars
    if check:
        coeffs = check_symmetric(p)
    else:
        coeffs = {e: c for e, c in p.as_dict().items() if list(e) == sorted(e, reverse=True)}
    by_degree = {}
    for lam, c in coeffs.items():
        by_degree.setdefault(sum(lam), {})[lam] = c
    terms = {}
    for w, part in by_degree.items():
        terms.update(_reduce_homogeneous(part, w, n))
    return EPoly(n, terms, p.ring.characteristic)


def from_elementary_sorted(h):
    """Sorted-exponent coefficients of h(e_1, ..., e_n), by degree: {w: {lam: c}}."""
    table = _table(h.n)
    acc = {}
    for e, c in h.terms.items():
        w = EPoly.weight(e)
        vec = table.get(e)
        if w in acc:
            acc[w] = acc[w] + c * vec
        else:
            acc[w] = c * vec
    out = {}
    for w, vec in acc.items():
        parts = partitions_of(w, h.n)
        mod = h.char
        d = {lam: (int(v) % mod if mod else int(v)) for lam, v in zip(parts, vec)}
        out[w] = {lam: v for lam, v in d.items() if v}
    return out


# ---------------------------------------------------------------------------
# theta tables and cache

CACHE_ENV = "NORMCRIT_CACHE"


def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "normcrit"


def cache_path(n, m, char=0, cache_dir=None):
    return Path(cache_dir or default_cache_dir()) / f"theta_n{n}_m{m}_c{char}.json"


def _terms_payload(h):
    return [{"e": list(e), "c": str(c)} for e, c in h.sorted_terms()]


def _digest(terms):
    blob = json.dumps(terms, separators=(",", ":"), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def dump_theta(h, m):
    terms = _terms_payload(h)
    doc = {
        "n": h.n,
        "m": m,
        "char": h.char,
        "weighted_degree": h.weighted_degree(),
        "term_count": len(terms),
        "sha256": _digest(terms),
        "terms": terms,
    }
    return json.dumps(doc, indent=1) + "\n"


def load_theta(text, n=None, m=None, char=None):
    try:
        doc = json.loads(text)
        terms = doc["terms"]
        if _digest(terms) != doc["sha256"]:
            raise CacheCorrupt("checksum mismatch")
        if len(terms) != doc["term_count"]:
            raise CacheCorrupt("term count mismatch")
        for key, want in (("n", n), ("m", m), ("char", char)):
            if want is not None and doc[key] != want:
                raise CacheCorrupt(f"header field {key} is {doc[key]}, expected {want}")
        h = EPoly(doc["n"], {tuple(t["e"]): int(t["c"]) for t in terms}, doc["char"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CacheCorrupt):
            raise
        raise CacheCorrupt(f"unreadable cache file: {exc}") from exc
    if len(h) != doc["term_count"] or (terms and h.weighted_degree() != doc["weighted_degree"]):
        raise CacheCorrupt("envelope does not match terms")
    return h


def _atomic_write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_MEMO = {}


def _check_nm(n, m):
    if m < 1 or n % m:
        raise NotDivisor(f"{m} does not divide {n}")
    if m >= 6:
        raise RefusedTooLarge(f"theta_{{{n},{m}}} needs Phi_{m}, which is out of reach")


def theta_small(n, m, use_cache=True, cache_dir=None):
    """theta_{n,m} in characteristic 0, from the disk cache when present."""
    _check_nm(n, m)
    key = (n, m, 0)
    if key in _MEMO:
        return _MEMO[key]
    path = cache_path(n, m, 0, cache_dir)
    if use_cache and path.exists():
        h = load_theta(path.read_text(), n, m, 0)
    else:
        h = to_elementary(theta_big(n, m), check=n <= 5)
        if use_cache:
            _atomic_write(path, dump_theta(h, m))
    _MEMO[key] = h
    return h


def theta_mod_p(n, m, p, use_cache=True, cache_dir=None):
    """Reduction of theta_{n,m} modulo p (always derived from char 0)."""
    key = (n, m, p)
    if key in _MEMO:
        return _MEMO[key]
    path = cache_path(n, m, p, cache_dir)
    if use_cache and path.exists():
        h = load_theta(path.read_text(), n, m, p)
    else:
        h = theta_small(n, m, use_cache, cache_dir).reduce_mod_p(p)
        if use_cache:
            _atomic_write(path, dump_theta(h, m))
    _MEMO[key] = h
    return h


def clear_memo():
    _MEMO.clear()


def h_char0(n, use_cache=True, cache_dir=None):
    """h_n = product of theta_{n,m} over m | n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n >= 6:
        raise RefusedTooLarge(f"h_{n} needs theta_{{{n},{n}}}")
    acc = EPoly(n, {(0,) * n: 1})
    for m in divisors(n):
        acc = acc * theta_small(n, m, use_cache, cache_dir)
    return acc


def h_p_available(p, n):
    _, m = split_p_part(n, p)
    return all(l < 6 for l in divisors(m))


def h_p(p, n, use_cache=True, cache_dir=None):
    """h_{p,n} = product over l | m of theta_{n,l} mod p, where n = p^e * m, p not dividing m."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    _, m = split_p_part(n, p)
    if not h_p_available(p, n):
        raise RefusedTooLarge(f"h_{{{p},{n}}} needs theta_{{{n},{m}}}")
    acc = EPoly(n, {(0,) * n: 1}, p)
    for l in divisors(m):
        acc = acc * theta_mod_p(n, l, p, use_cache, cache_dir)
    return acc


def eval_epoly(h, a, field):
    """Evaluate h at s_i = a[i-1] in ``field`` (see gfkit.FieldCtx)."""
    if len(a) != h.n:
        raise ValueError(f"need {h.n} values, got {len(a)}")
    if h.char and h.char != field.p:
        raise CharMismatch(f"char-{h.char} polynomial evaluated over characteristic {field.p}")
    p = field.p
    powers = [[1] for _ in a]
    total = 0
    for e, c in h.terms.items():
        cm = c % p
        if not cm:
            continue
        v = cm
        for i, k in enumerate(e):
            if k:
                pw = powers[i]
                while len(pw) <= k:
                    pw.append(field.mul(pw[-1], a[i]))
                v = field.mul(v, pw[k])
                if not v:
                    break
        total = field.add(total, v)
    return total
