from fractions import Fraction
from itertools import permutations

import pytest

from permlimits.cache import MemoryCache
from permlimits.enumeration import (
    CeilingExceeded, catalan, count_avoiders, count_by_lr_minima, enumerate_avoiders,
    narayana_formula, verify_bwx, wilf_equivalent_upto,
)
from permlimits.perm import Perm, layered_from_composition, parse_permutation, reverse_complement

from oracles import avoiders_bf, count_bf, minima_distribution_bf

P = parse_permutation


def all_perms(k):
    return [Perm(p) for p in permutations(range(1, k + 1))]


def test_count_examples():
    assert count_avoiders(P("123"), 4) == 14
    assert count_avoiders(P("1342"), 0) == 1
    assert count_avoiders(P("21"), 0) == 1
    # brute-force oracle over all 720 permutations
    assert count_avoiders(P("1342"), 6) == 512


def test_count_requires_nonempty_pattern():
    with pytest.raises(ValueError):
        count_avoiders(Perm(), 3)


def test_length_one_pattern():
    assert [count_avoiders(P("1"), n) for n in range(4)] == [1, 0, 0, 0]


def test_ceiling():
    with pytest.raises(CeilingExceeded):
        count_avoiders(P("123"), 13)
    with pytest.raises(CeilingExceeded):
        count_avoiders(P("123"), 6, ceiling=5)
    assert count_avoiders(P("21"), 13, force=True) == 1


def test_enumerate_examples():
    assert [str(p) for p in enumerate_avoiders(P("123"), 3)] == ["1,3,2", "2,1,3", "2,3,1", "3,1,2", "3,2,1"]
    assert list(enumerate_avoiders(P("21"), 3)) == [P("123")]
    assert list(enumerate_avoiders(P("12"), 0)) == [Perm()]
    with pytest.raises(CeilingExceeded):
        next(enumerate_avoiders(P("21"), 9))


@pytest.mark.parametrize("q", ["1342", "2413", "123", "4321"])
def test_enumeration_lexicographic_and_complete(q):
    for n in range(7):
        got = list(enumerate_avoiders(P(q), n))
        assert got == sorted(got)
        assert got == [Perm(p) for p in avoiders_bf(P(q), n)]
        assert len(got) == count_avoiders(P(q), n)


def test_oracle_agreement_length_up_to_4():
    for k in range(1, 5):
        for q in all_perms(k):
            for n in range(7):
                assert count_avoiders(q, n) == count_bf(q, n), (q, n)


def test_catalan_for_length_3():
    for q in all_perms(3):
        assert [count_avoiders(q, n) for n in range(10)] == [catalan(n) for n in range(10)]


def test_reverse_complement_preserves_counts():
    for k in range(1, 6):
        for q in all_perms(k):
            rc = reverse_complement(q)
            if rc <= q:
                continue
            for n in range(8):
                assert count_avoiders(q, n) == count_avoiders(rc, n)


def test_counts_bounded_by_factorial():
    f = 1
    for n in range(1, 9):
        f *= n
        assert count_avoiders(P("2413"), n) <= f


def test_layered_dominance_small_n():
    cache = MemoryCache()
    for comp in [(1, 1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2), (3, 1), (1, 3), (4,)]:
        q = layered_from_composition(comp)
        for n in range(9):
            assert count_avoiders(P("1234"), n, cache=cache) <= count_avoiders(q, n, cache=cache)


def test_workers_do_not_change_counts():
    q = P("1342")
    serial = count_avoiders(q, 9, workers=1)
    assert serial == 91245
    assert count_avoiders(q, 9, workers=2) == serial
    assert count_by_lr_minima(q, 9, workers=2) == count_by_lr_minima(q, 9, workers=1)


def test_cache_aside():
    cache = MemoryCache()
    assert count_avoiders(P("132"), 7, cache=cache) == 429
    assert cache.get("1,3,2", 7) == 429
    cache.put("1,3,2", 7, -1)
    assert count_avoiders(P("132"), 7, cache=cache) == -1
    assert count_avoiders(P("132"), 7) == 429


# -- minima distribution ---------------------------------------------------

def test_minima_distribution_examples():
    assert count_by_lr_minima(P("123"), 3).per_m == {1: 1, 2: 3, 3: 1}
    # frozen from the brute-force tally of the 14 avoiders
    assert count_by_lr_minima(P("123"), 4).per_m == {1: 1, 2: 6, 3: 6, 4: 1}
    for n in range(1, 8):
        assert count_by_lr_minima(P("21"), n).per_m == {1: 1}


@pytest.mark.parametrize("q", ["123", "1342", "2143", "312"])
def test_minima_distribution_against_oracle(q):
    for n in range(1, 8):
        dist = count_by_lr_minima(P(q), n)
        assert dist.per_m == minima_distribution_bf(P(q), n)
        assert dist.total == count_avoiders(P(q), n)


def test_narayana_formula():
    assert narayana_formula(4, 1) == 6
    assert narayana_formula(3, 1) == 3
    assert all(narayana_formula(n, n) == 0 for n in range(1, 10))
    assert isinstance(narayana_formula(5, 2), Fraction)
    for n in range(1, 12):
        assert sum(narayana_formula(n, m) for m in range(n + 1)) == catalan(n)


def test_catalan():
    assert [catalan(n) for n in (0, 3, 8)] == [1, 5, 1430]


# -- Wilf equivalence ------------------------------------------------------

def test_wilf_examples():
    assert wilf_equivalent_upto(P("123"), P("321"), 8).agree
    assert wilf_equivalent_upto(P("2413"), P("2413"), 7).agree
    res = wilf_equivalent_upto(P("1234"), P("1342"), 7)
    assert not res.agree
    assert res.first_difference == 6 and res.counts == (513, 512)


def test_verify_bwx():
    rep = verify_bwx(2, P("21"), 7)
    assert (str(rep.increasing_form), str(rep.decreasing_form)) == ("1,2,4,3", "2,1,4,3")
    assert rep.equal and rep.counterexample is None
    assert rep.counts_increasing == (1, 1, 2, 6, 23, 103, 513, 2761)
    rep = verify_bwx(1, Perm(), 5)
    assert rep.increasing_form == rep.decreasing_form == P("1")
    rep = verify_bwx(3, P("1"), 7)
    assert str(rep.decreasing_form) == "3,2,1,4" and rep.equal
    with pytest.raises(ValueError):
        verify_bwx(4, P("123"), 3)
