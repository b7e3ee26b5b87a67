import json
import random
from itertools import product as iproduct

import numpy as np
import pytest

from normcrit import elemsym
from normcrit.elemsym import (
    EPoly,
    elementary,
    eval_epoly,
    h_char0,
    h_p,
    h_p_available,
    theta_mod_p,
    theta_small,
    to_elementary,
)
from normcrit.errors import CacheCorrupt, CharMismatch, NotSymmetric, RefusedTooLarge
from normcrit.exactalg import GF, SparsePoly
from normcrit.gfkit import batch_eval_epoly, field_of_order, index_to_coeffs, make_field
from normcrit.ntheory import divisors
from normcrit.symmetrization import phi, theta_big

from golden import THETA_FINGERPRINTS, THETA_SMALL, fragment_terms, parse_s

SMALL_PAIRS = [(n, m) for n in range(1, 7) for m in divisors(n) if m < 6 and (n, m) not in [(6, 2), (6, 3), (5, 5)]]


def s(i, n):
    return EPoly.gen(i, n)


def V(n):
    return [SparsePoly.var(i, n) for i in range(n)]


@pytest.mark.parametrize("nm", sorted(THETA_SMALL))
def test_theta_small_matches_published(nm):
    assert theta_small(*nm) == parse_s(THETA_SMALL[nm], nm[0])


def test_to_elementary_examples():
    x = V(2)
    assert to_elementary(phi(2)) == -(s(1, 2) * s(1, 2)) + EPoly(2, {(0, 1): 4})
    assert to_elementary(sum(V(4)[1:], V(4)[0])) == s(1, 4)
    assert to_elementary(x[0] ** 2 + x[1] ** 2) == EPoly(2, {(2, 0): 1, (0, 1): -2})


@pytest.mark.parametrize("n", [3, 4, 5])
def test_newton_power_sums(n):
    x = V(n)
    p2 = sum((xi**2 for xi in x[1:]), x[0] ** 2)
    p3 = sum((xi**3 for xi in x[1:]), x[0] ** 3)
    e = [0] * n
    assert to_elementary(p2) == EPoly(n, {tuple([2] + e[1:]): 1, tuple([0, 1] + e[2:]): -2})
    want = {tuple([3] + e[1:]): 1, tuple([1, 1] + e[2:]): -3, tuple([0, 0, 1] + e[3:]): 3}
    assert to_elementary(p3) == EPoly(n, want)


def test_to_elementary_mod_p():
    x = [SparsePoly.var(i, 2, GF(3)) for i in range(2)]
    assert to_elementary((x[0] - x[1]) ** 2) == EPoly(2, {(2, 0): 1, (0, 1): 2}, 3)


def test_not_symmetric():
    x = V(3)
    with pytest.raises(NotSymmetric):
        to_elementary(x[0] ** 2 + x[1])
    with pytest.raises(NotSymmetric):
        to_elementary(x[0] * x[1] + x[1] * x[2])


@pytest.mark.parametrize("nm", sorted(THETA_FINGERPRINTS))
def test_large_theta_fingerprints(nm):
    count, head, tail = THETA_FINGERPRINTS[nm]
    h = theta_small(*nm)
    assert len(h) == count
    head_terms = fragment_terms(head, nm[0])
    assert dict(h.sorted_terms()[: len(head_terms)]) == head_terms
    for e, c in fragment_terms(tail, nm[0]).items():
        assert h.terms[e] == c


@pytest.mark.parametrize("nm", SMALL_PAIRS + [(5, 5), (6, 2)])
def test_reconstruction_by_expansion(nm):
    assert theta_small(*nm).to_symmetric() == theta_big(*nm)


def test_reconstruction_theta63_at_random_points():
    h, T = theta_small(6, 3), theta_big(6, 3)
    rng = random.Random(63)
    es = [elementary(i, 6) for i in range(1, 7)]
    for _ in range(6):
        pt = [rng.randrange(-9, 10) for _ in range(6)]
        assert h.evaluate([e.evaluate(pt) for e in es]) == T.evaluate(pt)


@pytest.mark.parametrize("nm", SMALL_PAIRS + [(5, 5), (6, 2), (6, 3)])
def test_weighted_homogeneity(nm):
    h = theta_small(*nm)
    assert h.weighted_degrees() == {theta_big(*nm).degree()}


def test_weights_of_published_terms():
    assert EPoly.weight((24, 0, 0, 0, 0)) == EPoly.weight((0, 6, 1, 1, 1)) == 24


@pytest.mark.parametrize("nm", [(4, 2), (4, 4), (5, 5), (6, 3)])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_mod_p_compatibility(nm, p):
    h = theta_small(*nm)
    hp = theta_mod_p(*nm, p)
    assert hp == h.reduce_mod_p(p)
    rng = random.Random(p)
    for _ in range(20):
        a = [rng.randrange(p) for _ in range(nm[0])]
        assert hp.evaluate(a) % p == h.evaluate(a) % p


def test_h_char0_examples():
    assert h_char0(1) == s(1, 1)
    assert h_char0(2) == s(1, 2) * parse_s("-s_1^2+4s_2", 2)
    assert h_char0(4).weighted_degrees() == {13}
    with pytest.raises(RefusedTooLarge):
        h_char0(6)


def test_h_p_examples():
    assert h_p(2, 4) == EPoly(4, {(1, 0, 0, 0): 1}, 2)
    assert h_p(2, 3) == EPoly(3, {(3, 0, 0): 1, (1, 1, 0): 1}, 2)
    assert h_p(2, 6) == (theta_small(6, 1) * theta_small(6, 3)).reduce_mod_p(2)
    assert h_p(3, 6) == (theta_small(6, 1) * theta_small(6, 2)).reduce_mod_p(3)
    assert h_p_available(2, 6) and h_p_available(3, 6)
    for p in (5, 7, 11, 13):
        assert not h_p_available(p, 6)
        with pytest.raises(RefusedTooLarge):
            h_p(p, 6)


def test_eval_epoly_examples():
    F5 = make_field(5)
    assert eval_epoly(parse_s("-s_1^2+4s_2", 2), [1, 1], F5) == 3
    assert eval_epoly(s(1, 3), [0, 4, 2], F5) == 0
    assert eval_epoly(h_p(2, 4), [1, 0, 0, 1], make_field(2)) == 1
    with pytest.raises(CharMismatch):
        eval_epoly(h_p(2, 4), [1, 0, 0, 1], F5)


@pytest.mark.parametrize("q, n", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3), (4, 4), (5, 3), (5, 5), (7, 3)])
def test_char0_and_pary_have_the_same_zeros(q, n):
    """h_n(a) != 0 iff h_{p,n}(a) != 0, over every a in F_q^n."""
    F = field_of_order(q)
    A = index_to_coeffs(q, n, np.arange(q**n))
    v0 = batch_eval_epoly(h_char0(n), F, A) != 0
    vp = batch_eval_epoly(h_p(F.p, n), F, A) != 0
    assert np.array_equal(v0, vp)


def test_batch_eval_matches_scalar():
    F = field_of_order(4)
    h = h_char0(3)
    for a in iproduct(range(4), repeat=3):
        got = batch_eval_epoly(h, F, np.array([a]))[0]
        assert got == eval_epoly(h, list(a), F)


# ---------------------------------------------------------------------------
# cache


def test_cache_round_trip(tmp_path):
    h = theta_small(4, 4)
    text = elemsym.dump_theta(h, 4)
    assert elemsym.load_theta(text, 4, 4, 0) == h
    doc = json.loads(text)
    assert doc["term_count"] == len(h) and doc["weighted_degree"] == 6
    assert [tuple(t["e"]) for t in doc["terms"]] == [e for e, _ in h.sorted_terms()]
    assert elemsym.dump_theta(elemsym.load_theta(text), 4) == text


def test_cache_corruption_detected():
    text = elemsym.dump_theta(theta_small(4, 2), 2)
    doc = json.loads(text)
    doc["terms"][0]["c"] = str(int(doc["terms"][0]["c"]) + 1)
    with pytest.raises(CacheCorrupt):
        elemsym.load_theta(json.dumps(doc))
    with pytest.raises(CacheCorrupt):
        elemsym.load_theta(text, n=4, m=4)
    with pytest.raises(CacheCorrupt):
        elemsym.load_theta("{not json")


def test_cache_write_through_and_reuse(tmp_path):
    elemsym.clear_memo()
    h = theta_small(4, 2, cache_dir=tmp_path)
    path = elemsym.cache_path(4, 2, 0, tmp_path)
    assert path.exists()
    before = path.read_text()
    elemsym.clear_memo()
    assert theta_small(4, 2, cache_dir=tmp_path) == h
    assert path.read_text() == before
    # a tampered file is reported, not silently used
    path.write_text(before.replace('"c": "-64"', '"c": "-63"', 1))
    elemsym.clear_memo()
    with pytest.raises(CacheCorrupt):
        theta_small(4, 2, cache_dir=tmp_path)
    elemsym.clear_memo()


def test_no_cache_mode_writes_nothing(tmp_path):
    elemsym.clear_memo()
    theta_small(3, 3, use_cache=False, cache_dir=tmp_path)
    assert not any(tmp_path.iterdir())
    elemsym.clear_memo()


def test_epoly_text():
    h = parse_s("-s_1^2+4s_2", 2)
    assert h.to_text() == "-1 2 0\n4 0 1\n"
    assert str(h)
