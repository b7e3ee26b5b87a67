"""Counting normal polynomials: the closed formula N(q, n) and an exhaustive
census over all q^n monic polynomials of degree n.

The census counts, among irreducible candidates,

* ``N_exact``: those whose conjugates give a nonzero circulant determinant;
* ``N_prime``: those with h_{p,n}(a_1, ..., a_n) != 0;
* ``violations``: those certified by h_{p,n} yet not normal (must be 0).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd, prod
import json
import os
from pathlib import Path
import time

import numpy as np

from . import gfkit
from .elemsym import h_p, h_p_available
from .errors import BudgetExceeded, NotCoprime, RefusedTooLarge
from .ntheory import divisors, multiplicative_order, prime_power, split_p_part, totient

DEFAULT_BUDGET = 2**25
CHUNK = 2**20


@dataclass(frozen=True)
class CycloCosetData:
    q: int
    t: int
    orbits: tuple
    coset_sizes: tuple
    orders: dict = field(hash=False)  # d -> o_d(q), for d | t
    totients: dict = field(hash=False)  # d -> phi(d)

    def size_multiset_from_orders(self):
        out = []
        for d in divisors(self.t):
            o = self.orders[d]
            out.extend([o] * (self.totients[d] // o))
        return tuple(sorted(out))


def cyclotomic_cosets(q, t):
    """Orbits of Z/tZ under x -> q*x."""
    if t < 1 or gcd(q, t) != 1:
        raise NotCoprime(f"gcd({q}, {t}) != 1")
    seen, orbits = set(), []
    for x in range(t):
        if x in seen:
            continue
        orbit, y = [], x
        while y not in seen:
            seen.add(y)
            orbit.append(y)
            y = y * q % t
        orbits.append(tuple(orbit))
    sizes = tuple(sorted(len(o) for o in orbits))
    orders = {d: multiplicative_order(q, d) for d in divisors(t)}
    tots = {d: totient(d) for d in divisors(t)}
    return CycloCosetData(q, t, tuple(orbits), sizes, orders, tots)


def count_normal_formula(q, n):
    """N(q, n) = q^((p^e - 1) t) / n * prod_i (q^(d_i) - 1), n = p^e t, p not dividing t."""
    p, _ = prime_power(q)
    e, t = split_p_part(n, p)
    data = cyclotomic_cosets(q, t)
    num = q ** ((p**e - 1) * t) * prod(q**d - 1 for d in data.coset_sizes)
    if num % n:
        raise AssertionError(f"N({q},{n}) is not an integer")
    return num // n


def count_normal_formula_by_orders(q, n):
    """The same count written with o_d(q) and phi(d) over d | t."""
    p, _ = prime_power(q)
    e, t = split_p_part(n, p)
    data = cyclotomic_cosets(q, t)
    num = q ** ((p**e - 1) * t)
    for d in divisors(t):
        o = data.orders[d]
        num *= (q**o - 1) ** (data.totients[d] // o)
    return num // n


@dataclass
class CensusRow:
    q: int
    n: int
    mode: str
    N_formula: int
    N_exact: object = None
    N_prime: object = None
    violations: object = None
    candidates: int = 0
    irreducible: int = 0
    elapsed: float = 0.0

    def as_dict(self, timing=False):
        d = asdict(self)
        if not timing:
            d.pop("elapsed")
        return d

    def to_json(self, timing=False):
        return json.dumps(self.as_dict(timing), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


MODES = ("exact", "criterion", "both")


def _chunk_counts(q, n, mode, start, stop, irreducible, use_cache=True, cache_dir=None):
    """Counts over candidate indices [start, stop); ``irreducible`` is the mask slice."""
    F = gfkit.field_of_order(q)
    idx = np.arange(start, stop, dtype=np.int64)[irreducible]
    A = gfkit.index_to_coeffs(q, n, idx)
    out = {"irreducible": int(len(idx)), "N_exact": 0, "N_prime": 0, "violations": 0}
    exact = crit = None
    if mode in ("exact", "both"):
        exact = gfkit.batch_normal_exact(F, A)
        out["N_exact"] = int(exact.sum())
    if mode in ("criterion", "both"):
        crit = gfkit.batch_eval_epoly(h_p(F.p, n, use_cache, cache_dir), F, A) != 0
        out["N_prime"] = int(crit.sum())
    if exact is not None and crit is not None:
        out["violations"] = int((crit & ~exact).sum())
    return out


def _merge(total, part):
    for k, v in part.items():
        total[k] = total.get(k, 0) + v


def census_exhaustive(
    q, n, mode="both", budget=DEFAULT_BUDGET, workers=1, checkpoint=None, chunk=CHUNK, use_cache=True, cache_dir=None
):
    """Enumerate all monic degree-n polynomials over F_q in lex order of (a_1..a_n).

    ``checkpoint`` names a JSON file updated after every chunk; an existing
    file for the same (q, n, mode) is resumed.  Totals do not depend on
    ``workers`` or ``chunk``.
    """
    mode = mode.lower()
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    F = gfkit.field_of_order(q)
    total_cands = q**n
    if mode in ("criterion", "both") and not h_p_available(F.p, n):
        raise RefusedTooLarge(f"h_{{{F.p},{n}}} is out of reach (needs theta_{{{n},6}})")
    if total_cands > budget:
        raise BudgetExceeded(f"{q}^{n} = {total_cands} candidates exceeds budget {budget}")
    if mode in ("criterion", "both"):
        h_p(F.p, n, use_cache, cache_dir)  # build before forking workers
    t0 = time.perf_counter()
    formula = count_normal_formula(q, n)
    irreducible = ~gfkit.reducible_mask(F, n)

    counts, offset = {}, 0
    ck = Path(checkpoint) if checkpoint else None
    if ck and ck.exists():
        state = json.loads(ck.read_text())
        if (state["q"], state["n"], state["mode"]) == (q, n, mode):
            counts, offset = state["counts"], state["offset"]

    ranges = [(s, min(s + chunk, total_cands)) for s in range(offset, total_cands, chunk)]

    def save(upto):
        if ck:
            tmp = ck.with_suffix(ck.suffix + ".tmp")
            tmp.write_text(json.dumps({"q": q, "n": n, "mode": mode, "offset": upto, "counts": counts}))
            os.replace(tmp, ck)

    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk_counts, q, n, mode, a, b, irreducible[a:b], use_cache, cache_dir) for a, b in ranges]
            for (a, b), fut in zip(ranges, futures):
                _merge(counts, fut.result())
                save(b)
    else:
        for a, b in ranges:
            _merge(counts, _chunk_counts(q, n, mode, a, b, irreducible[a:b], use_cache, cache_dir))
            save(b)

    row = CensusRow(
        q=q,
        n=n,
        mode=mode,
        N_formula=formula,
        N_exact=counts.get("N_exact", 0) if mode != "criterion" else None,
        N_prime=counts.get("N_prime", 0) if mode != "exact" else None,
        violations=counts.get("violations", 0) if mode == "both" else None,
        candidates=total_cands,
        irreducible=counts.get("irreducible", 0),
        elapsed=time.perf_counter() - t0,
    )
    if mode == "both" and row.N_exact != row.N_formula:
        raise AssertionError(f"N({q},{n}): formula {row.N_formula} != exhaustive {row.N_exact}")
    return row


def format_table(rows):
    """Plain-text table with the columns q, n, N, N'."""
    lines = [f"{'q':>3} {'n':>2} {'N':>10} {chr(78) + chr(39):>10}"]
    for r in rows:
        N = r.N_exact if r.N_exact is not None else r.N_formula
        Np = "" if r.N_prime is None else r.N_prime
        lines.append(f"{r.q:>3} {r.n:>2} {N:>10} {Np:>10}")
    return "\n".join(lines) + "\n"
