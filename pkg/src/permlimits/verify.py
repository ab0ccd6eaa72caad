"""Invariant suites run by ``permlimits verify``.

Each suite returns a SuiteResult; any entry in ``failures`` is a violated
relation, recorded with the pattern, n, the expected relation and both
sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .cache import MemoryCache
from .enumeration import (
    bwx_patterns, catalan, count_avoiders, count_by_lr_minima, enumerate_avoiders,
    narayana_formula,
)
from .limits import check_supermultiplicativity, composed_avoiders_ok
from .merging import P12453, witness_census
from .perm import (
    Perm, avoids, format_permutation, increasing, layered_from_composition,
    prepend_one, remaining_string,
)

SUITES = ("layered", "bwx", "recprop", "supermult", "witness", "narayana")


@dataclass
class SuiteResult:
    suite: str
    max_n: int
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, **detail) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(detail)


def compositions(k: int):
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in compositions(k - first):
            yield (first, *rest)


def all_patterns(k: int):
    return [Perm(p) for p in permutations(range(1, k + 1))]


def _text(q) -> str:
    return format_permutation(q)


def layered(max_n: int, k: int = 4, cache=None) -> SuiteResult:
    """S_n(12..k) <= S_n(q) for every layered q of length k."""
    cache = cache if cache is not None else MemoryCache()
    res = SuiteResult("layered", max_n)
    mono = increasing(k)
    for comp in compositions(k):
        q = layered_from_composition(comp)
        for n in range(max_n + 1):
            a = count_avoiders(mono, n, cache=cache)
            b = count_avoiders(q, n, cache=cache)
            res.check(a <= b, pattern=_text(q), n=n,
                      relation=f"S_n({_text(mono)}) <= S_n(q)", values=[a, b])
    return res


def bwx(max_n: int, max_length: int = 4, cache=None) -> SuiteResult:
    """S_n(12..r v) == S_n(r..21 v) for all r >= 1, |v| >= 0 with
    r + |v| <= max_length."""
    cache = cache if cache is not None else MemoryCache()
    res = SuiteResult("bwx", max_n)
    for total in range(1, max_length + 1):
        for r in range(1, total + 1):
            for v in all_patterns(total - r):
                inc, dec = bwx_patterns(r, v)
                for n in range(max_n + 1):
                    a = count_avoiders(inc, n, cache=cache)
                    b = count_avoiders(dec, n, cache=cache)
                    res.check(a == b, pattern=f"{_text(inc)} vs {_text(dec)}", n=n,
                              relation="equal counts", values=[a, b])
    return res


def recprop(max_n: int, max_k: int = 3) -> SuiteResult:
    """Both directions of the remaining-string criterion for q' = 1 (q+1).

    Part 1: S avoids q implies p avoids q'. Part 2: when q starts with 1,
    p avoids q' exactly when S avoids q.
    """
    res = SuiteResult("recprop", max_n)
    patterns = [q for k in range(1, max_k + 1) for q in all_patterns(k)]
    lifted = [prepend_one(q) for q in patterns]
    for n in range(1, max_n + 1):
        for p in permutations(range(1, n + 1)):
            s = remaining_string(p).raw
            for q, q1 in zip(patterns, lifted):
                s_avoids = avoids(s, q)
                p_avoids = avoids(p, q1)
                if s_avoids:
                    res.check(p_avoids, part=1, pattern=_text(q), n=n, p=_text(p),
                              relation="S avoids q => p avoids q'")
                if q[0] == 1:
                    res.check(s_avoids == p_avoids, part=2, pattern=_text(q), n=n,
                              p=_text(p), relation="p avoids q' <=> S avoids q",
                              values=[s_avoids, p_avoids])
    return res


def supermult(max_n: int, max_k: int = 4, compose_upto: int = 6, cache=None) -> SuiteResult:
    """S_{a+b} >= S_a S_b, plus the composition argument behind it."""
    cache = cache if cache is not None else MemoryCache()
    res = SuiteResult("supermult", max_n)
    for k in range(1, max_k + 1):
        for q in all_patterns(k):
            bad = check_supermultiplicativity(q, max_n, cache=cache)
            res.checks += max(0, max_n * (max_n - 1) // 2)
            for v in bad:
                res.failures.append(dict(pattern=_text(q), n=v.a + v.b, a=v.a, b=v.b,
                                         relation="S_{a+b} >= S_a S_b", values=[v.lhs, v.rhs]))
            for a in range(1, compose_upto):
                for b in range(1, compose_upto - a + 1):
                    left = list(enumerate_avoiders(q, a))
                    right = list(enumerate_avoiders(q, b))
                    res.check(composed_avoiders_ok(q, left, right), pattern=_text(q),
                              n=a + b, a=a, b=b, relation="composed avoiders avoid q")
    return res


def witness(max_n: int, block_sizes=(2, 3), cache=None) -> SuiteResult:
    """Witness permutations avoid 12453 and never outnumber S_n(12453)."""
    cache = cache if cache is not None else MemoryCache()
    res = SuiteResult("witness", max_n)
    for N in block_sizes:
        for n in range(N + 1, max_n + 1):
            total = 0
            for m in range(1, n - N + 1):
                census = witness_census(n, N, m)
                total += census.distinct
                if census.rejected:
                    res.notes.append(f"n={n} N={N} m={m}: {census.rejected} parameter sets "
                                     f"rejected (minima shift)")
                if census.collisions:
                    res.notes.append(f"n={n} N={N} m={m}: {census.collisions} collisions")
            bound = count_avoiders(P12453, n, cache=cache)
            res.check(total <= bound, pattern="1,2,4,5,3", n=n, N=N,
                      relation="witnesses <= S_n(12453)", values=[total, bound])
    return res


def narayana(max_n: int) -> SuiteResult:
    """Enumerated minima distribution of 123-avoiders against the printed
    formula. Enumeration is the ground truth; the suite checks that each
    sums to the Catalan number under its own indexing (m = 1..n for the
    tally, m = 0..n for the formula) and notes where the vectors differ."""
    res = SuiteResult("narayana", max_n)
    for n in range(1, max_n + 1):
        dist = count_by_lr_minima(increasing(3), n)
        enumerated = [dist.per_m.get(m, 0) for m in range(1, n + 1)]
        formula = [narayana_formula(n, m) for m in range(0, n + 1)]
        res.check(all(f.denominator == 1 for f in formula), n=n,
                  relation="formula values are integers")
        res.check(sum(enumerated) == catalan(n), n=n, relation="sum_{m=1..n} enumerated = C_n",
                  values=[sum(enumerated), catalan(n)])
        res.check(sum(formula) == catalan(n), n=n, relation="sum_{m=0..n} formula = C_n",
                  values=[int(sum(formula)), catalan(n)])
        literal = [int(f) for f in formula[1:]]
        if literal != enumerated:
            res.notes.append(f"n={n}: enumerated {enumerated} vs formula at m=1..n {literal}")
    return res


def run_suite(name: str, max_n: int, cache=None) -> SuiteResult:
    if name == "layered":
        return layered(max_n, cache=cache)
    if name == "bwx":
        return bwx(max_n, cache=cache)
    if name == "recprop":
        return recprop(max_n)
    if name == "supermult":
        return supermult(max_n, cache=cache)
    if name == "witness":
        return witness(max_n, cache=cache)
    if name == "narayana":
        return narayana(max_n)
    raise KeyError(name)


__all__ = ["SUITES", "SuiteResult", "run_suite", "compositions", "all_patterns",
           "layered", "bwx", "recprop", "supermult", "witness", "narayana"]
