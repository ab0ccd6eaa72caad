"""Exact counting of pattern-avoiding permutations.

Permutations are grown one entry at a time from the left, choosing actual
values from 1..n in increasing order. Every prefix on the search tree
already avoids q, so after appending x the only occurrences to look for
are those with q's last entry matched to x; a hit prunes the branch.
Leaves are reached in lexicographic order.

Top-level branches down to a fixed depth can be farmed out to worker
processes; partial tallies are combined by integer addition so results do
not depend on the worker count.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .perm import Perm, format_permutation, match_plan, occurrence_ends_at

log = logging.getLogger(__name__)

DEFAULT_CEILING = 12
STREAM_CEILING = 8
SHARD_DEPTH = 3
# below this n a process pool costs more than it saves
PARALLEL_MIN_N = 9


class CeilingExceeded(RuntimeError):
    """Requested n is above the configured resource ceiling."""


@dataclass
class StatDistribution:
    """Avoider counts refined by number of left-to-right minima."""
    n: int
    per_m: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.per_m.values())


def _check_args(q: Sequence[int], n: int, ceiling: int, force: bool) -> None:
    if len(q) < 1:
        raise ValueError("pattern must be nonempty")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > ceiling and not force:
        raise CeilingExceeded(f"n={n} exceeds ceiling {ceiling}; pass force=True to override")


def _grow(seq: list, used: list, n: int, q, plan, cur_min: int, m: int, acc: list) -> None:
    if len(seq) == n:
        acc[m] += 1
        return
    for x in range(1, n + 1):
        if used[x] or occurrence_ends_at(seq, x, q, plan):
            continue
        used[x] = True
        seq.append(x)
        if x < cur_min:
            _grow(seq, used, n, q, plan, x, m + 1, acc)
        else:
            _grow(seq, used, n, q, plan, cur_min, m, acc)
        seq.pop()
        used[x] = False


def _tally_from(q: tuple, n: int, prefix: tuple) -> list[int]:
    """Minima-count tally of all avoiders of length n extending ``prefix``."""
    plan = match_plan(q, last_first=True)
    used = [False] * (n + 1)
    cur_min, m = n + 1, 0
    for x in prefix:
        used[x] = True
        if x < cur_min:
            cur_min, m = x, m + 1
    acc = [0] * (n + 1)
    _grow(list(prefix), used, n, q, plan, cur_min, m, acc)
    return acc


def _prefixes(q: tuple, n: int, depth: int) -> list[tuple]:
    """All q-avoiding prefixes of length ``depth`` over values 1..n."""
    plan = match_plan(q, last_first=True)
    out = []

    def walk(seq, used):
        if len(seq) == depth:
            out.append(tuple(seq))
            return
        for x in range(1, n + 1):
            if used[x] or occurrence_ends_at(seq, x, q, plan):
                continue
            used[x] = True
            seq.append(x)
            walk(seq, used)
            seq.pop()
            used[x] = False

    walk([], [False] * (n + 1))
    return out


def _tally(q: Sequence[int], n: int, workers: int = 1) -> list[int]:
    q = tuple(q)
    if workers <= 1 or n < PARALLEL_MIN_N:
        return _tally_from(q, n, ())
    shards = _prefixes(q, n, min(SHARD_DEPTH, n))
    total = [0] * (n + 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_tally_from, [q] * len(shards), [n] * len(shards), shards,
                         chunksize=max(1, len(shards) // (4 * workers)))
        for part in parts:
            for m, c in enumerate(part):
                total[m] += c
    return total


def default_workers() -> int:
    return os.cpu_count() or 1


def count_avoiders(q: Sequence[int], n: int, *, workers: int = 1, cache=None,
                   ceiling: int = DEFAULT_CEILING, force: bool = False) -> int:
    """Exact number of length-n permutations avoiding ``q``.

    ``cache`` is any object with ``get(pattern_text, n)`` and
    ``put(pattern_text, n, count)``; completed counts are written through.
    """
    _check_args(q, n, ceiling, force)
    key = format_permutation(q)
    if cache is not None:
        hit = cache.get(key, n)
        if hit is not None:
            return hit
    count = sum(_tally(q, n, workers))
    if cache is not None:
        cache.put(key, n, count)
    return count


def count_by_lr_minima(q: Sequence[int], n: int, *, workers: int = 1,
                       ceiling: int = DEFAULT_CEILING, force: bool = False) -> StatDistribution:
    """Avoiders of length n tallied by their number of left-to-right minima.

    Only nonzero classes are reported.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _check_args(q, n, ceiling, force)
    acc = _tally(q, n, workers)
    return StatDistribution(n, {m: c for m, c in enumerate(acc) if c})


def enumerate_avoiders(q: Sequence[int], n: int, *, ceiling: int = STREAM_CEILING,
                       force: bool = False) -> Iterator[Perm]:
    """Yield every length-n avoider of ``q`` once, in lexicographic order."""
    _check_args(q, n, ceiling, force)
    q = tuple(q)
    plan = match_plan(q, last_first=True)
    seq: list[int] = []
    used = [False] * (n + 1)

    def walk():
        if len(seq) == n:
            yield Perm(seq)
            return
        for x in range(1, n + 1):
            if used[x] or occurrence_ends_at(seq, x, q, plan):
                continue
            used[x] = True
            seq.append(x)
            yield from walk()
            seq.pop()
            used[x] = False

    return walk()


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return comb(2 * n, n) // (n + 1)


def narayana_formula(n: int, m: int) -> Fraction:
    """Evaluate binom(n, m) * binom(n, m + 1) / n exactly.

    Returned as a Fraction so non-integral values would be visible; the
    caller decides whether integrality matters.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Fraction(comb(n, m) * comb(n, m + 1), n)


@dataclass(frozen=True)
class WilfComparison:
    agree: bool
    checked_upto: int
    first_difference: int | None = None
    counts: tuple[int, int] | None = None


def wilf_equivalent_upto(q1: Sequence[int], q2: Sequence[int], upto: int, **kw) -> WilfComparison:
    """Compare avoider counts of two patterns for n = 0..upto."""
    for n in range(upto + 1):
        a = count_avoiders(q1, n, **kw)
        b = a if tuple(q1) == tuple(q2) else count_avoiders(q2, n, **kw)
        if a != b:
            return WilfComparison(False, upto, n, (a, b))
    return WilfComparison(True, upto)


@dataclass(frozen=True)
class BWXReport:
    r: int
    v: Perm
    increasing_form: Perm
    decreasing_form: Perm
    counts_increasing: tuple[int, ...]
    counts_decreasing: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.counts_increasing == self.counts_decreasing

    @property
    def counterexample(self) -> tuple[int, int, int] | None:
        for n, (a, b) in enumerate(zip(self.counts_increasing, self.counts_decreasing)):
            if a != b:
                return n, a, b
        return None


def bwx_patterns(r: int, v: Sequence[int]) -> tuple[Perm, Perm]:
    """``12..r`` and ``r..21`` each followed by ``v`` shifted up by r."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    tail = [e + r for e in v]
    return Perm([*range(1, r + 1), *tail]), Perm([*range(r, 0, -1), *tail])


def verify_bwx(r: int, v: Sequence[int], upto: int, *, max_length: int = 6, **kw) -> BWXReport:
    """Check S_n(12..r v) == S_n(r..21 v) for n = 0..upto."""
    if r + len(v) > max_length:
        raise ValueError(f"r + |v| = {r + len(v)} exceeds {max_length}")
    inc, dec = bwx_patterns(r, v)
    a = tuple(count_avoiders(inc, n, **kw) for n in range(upto + 1))
    b = a if inc == dec else tuple(count_avoiders(dec, n, **kw) for n in range(upto + 1))
    return BWXReport(r, Perm(v), inc, dec, a, b)
