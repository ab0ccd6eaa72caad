"""Merging left-to-right minima with a string of remaining entries, and the
block-structured witness permutations built on top of it.

A triple (T, Z, S) fixes the positions T and values Z of the minima and the
string S of everything else. Placing Z in decreasing order on T and S in
order on the other positions gives the only candidate permutation; the
triple is compatible when that candidate really has (T, Z) as its minima.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

from .enumeration import CeilingExceeded, count_avoiders, enumerate_avoiders
from .perm import (
    Perm, block_structured, contains, left_to_right_minima,
    remaining_string,
)

log = logging.getLogger(__name__)

P123 = Perm((1, 2, 3))
P1342 = Perm((1, 3, 4, 2))
P12453 = Perm((1, 2, 4, 5, 3))

WITNESS_CEILING = 10


class TripleError(ValueError):
    """The triple violates its structural invariants (sizes or value sets)."""


class WitnessError(RuntimeError):
    """A witness construction failed one of its asserted postconditions."""


class MinimaShift(WitnessError):
    """The block-structured string created or destroyed a left-to-right
    minimum. Happens when an oversized last block lets an entry travel
    past a minimum."""


@dataclass(frozen=True)
class Triple:
    n: int
    T: tuple[int, ...]
    Z: tuple[int, ...]
    S: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(sorted(self.T)))
        object.__setattr__(self, "Z", tuple(sorted(self.Z, reverse=True)))
        object.__setattr__(self, "S", tuple(self.S))
        n = self.n
        if len(set(self.T)) != len(self.T) or len(set(self.Z)) != len(self.Z):
            raise TripleError("T and Z must not repeat elements")
        if len(self.T) != len(self.Z):
            raise TripleError(f"|T| = {len(self.T)} but |Z| = {len(self.Z)}")
        if n >= 1 and not self.T:
            raise TripleError("T and Z must be nonempty")
        if any(not 1 <= t <= n for t in self.T):
            raise TripleError(f"positions must lie in 1..{n}")
        if len(self.S) != n - len(self.Z):
            raise TripleError(f"|S| = {len(self.S)} but n - |Z| = {n - len(self.Z)}")
        if set(self.S) != set(range(1, n + 1)) - set(self.Z) or len(set(self.S)) != len(self.S):
            raise TripleError("S must be an arrangement of [n] minus Z")


def place(t: Triple) -> list[int]:
    """Z in decreasing order on positions T, S in order elsewhere."""
    out = [0] * t.n
    for pos, v in zip(t.T, t.Z):
        out[pos - 1] = v
    rest = iter(t.S)
    for i in range(t.n):
        if not out[i]:
            out[i] = next(rest)
    return out


def merge(t: Triple) -> Perm | None:
    """The unique permutation realising ``t``, or None if ``t`` is incompatible."""
    p = place(t)
    if not p:
        return Perm()
    prof = left_to_right_minima(p)
    if prof.positions == t.T and prof.values == t.Z:
        return Perm(p)
    return None


def is_compatible(t: Triple) -> bool:
    return merge(t) is not None


def nearest_minimum_rule(t: Triple) -> bool:
    """Compatibility via the local rule: position 1 holds a minimum and
    every remaining entry exceeds the closest placed minimum to its left."""
    if t.n == 0:
        return True
    if 1 not in t.T:
        return False
    mins = set(t.T)
    cur = None
    for i, v in enumerate(place(t), 1):
        if i in mins:
            cur = v
        elif v < cur:
            return False
    return True


# ---------------------------------------------------------------------------
# witnesses

def _minimum_before(profile_positions, profile_values, j: int) -> int | None:
    """Value of the last minimum strictly before position j."""
    best = None
    for pos, v in zip(profile_positions, profile_values):
        if pos < j:
            best = v
        else:
            break
    return best


def buffer_violations(p: Sequence[int], N: int) -> list[int]:
    """Positions j of remaining entries not larger than the minimum closest
    to and preceding position j - N."""
    prof = left_to_right_minima(p)
    mins = set(prof.positions)
    bad = []
    for j, x in enumerate(p, 1):
        if j in mins:
            continue
        ref = _minimum_before(prof.positions, prof.values, j - N)
        if ref is not None and x < ref:
            bad.append(j)
    return bad


def extend_with_buffer(p_prime: Sequence[int], N: int) -> Perm:
    """Lengthen a 123-avoider by N, keeping its minima where they were.

    The remaining string becomes the decreasing run n, n-1, ..., n-N+1
    followed by the old remaining entries, so every remaining entry sits at
    least N places after the minimum it has to beat.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if not p_prime:
        raise ValueError("p' must be nonempty")
    if contains(p_prime, P123):
        raise ValueError(f"{Perm(p_prime)} contains 123")
    n = len(p_prime) + N
    prof = left_to_right_minima(p_prime)
    rest = remaining_string(p_prime).raw
    S = (*range(n, n - N, -1), *rest)
    p2 = merge(Triple(n, prof.positions, prof.values, S))
    if p2 is None:
        raise WitnessError(f"buffer merge incompatible for {Perm(p_prime)}, N={N}")
    if contains(p2, P123):
        raise WitnessError(f"{p2} contains 123")
    prof2 = left_to_right_minima(p2)
    if (prof2.positions, prof2.values) != (prof.positions, prof.values):
        raise WitnessError(f"minima of {p2} moved")
    bad = buffer_violations(p2, N)
    if bad:
        raise WitnessError(f"{p2}: entries at {bad} beat no buffered minimum")
    return p2


def block_lengths(total: int, N: int) -> tuple[int, ...]:
    """floor(total/N) blocks of length N, the last one absorbing the rest."""
    count = total // N
    if count == 0:
        raise ValueError(f"string of length {total} is shorter than one block of {N}")
    return (N,) * (count - 1) + (N + total % N,)


@dataclass(frozen=True)
class WitnessParams:
    p_prime: Perm
    N: int
    blocks: tuple[Perm, ...]

    def __post_init__(self):
        object.__setattr__(self, "p_prime", Perm(self.p_prime))
        object.__setattr__(self, "blocks", tuple(Perm(b) for b in self.blocks))
        if contains(self.p_prime, P123):
            raise ValueError(f"p' = {self.p_prime} contains 123")
        for b in self.blocks:
            if contains(b, P1342):
                raise ValueError(f"block {b} contains 1342")
        lengths = tuple(len(b) for b in self.blocks)
        if not lengths or any(x != self.N for x in lengths[:-1]) \
                or not self.N <= lengths[-1] <= 2 * self.N - 1:
            raise ValueError(f"block lengths {lengths} break the cutting rule for N={self.N}")


def build_witness(w: WitnessParams) -> Perm:
    """Replace the decreasing remaining string of the buffered permutation
    by a block-structured string on the same values."""
    base = extend_with_buffer(w.p_prime, w.N)
    prof = left_to_right_minima(base)
    mins = set(prof.positions)
    slots = [i for i in range(len(base)) if i + 1 not in mins]
    if sum(len(b) for b in w.blocks) != len(slots):
        raise ValueError(f"blocks cover {sum(len(b) for b in w.blocks)} entries, "
                         f"remaining string has {len(slots)}")
    values = sorted(base[i] for i in slots)
    shape = block_structured(w.blocks)
    out = list(base)
    for i, r in zip(slots, shape):
        out[i] = values[r - 1]
    result = Perm(out)
    got = left_to_right_minima(result)
    if (got.positions, got.values) != (prof.positions, prof.values):
        raise MinimaShift(f"{w}: minima changed ({result})")
    if contains(result, P12453):
        raise WitnessError(f"{w}: {result} contains 12453")
    return result


def witness_params(n: int, N: int, m: int) -> Iterator[WitnessParams]:
    """Every valid parameter set for length n, block size N and m minima."""
    if n - N < 1:
        return
    block_options: dict[int, list[Perm]] = {}
    for p1 in enumerate_avoiders(P123, n - N, force=True):
        if len(left_to_right_minima(p1)) != m:
            continue
        lengths = block_lengths(n - m, N)
        for length in set(lengths):
            if length not in block_options:
                block_options[length] = list(enumerate_avoiders(P1342, length, force=True))
        yield from (WitnessParams(p1, N, blocks)
                    for blocks in _product(block_options, lengths))


def _product(options, lengths):
    if not lengths:
        yield ()
        return
    for head in options[lengths[0]]:
        for tail in _product(options, lengths[1:]):
            yield (head, *tail)


@dataclass(frozen=True)
class WitnessCensus:
    n: int
    N: int
    m: int
    generated: int
    distinct: int
    rejected: int = 0

    @property
    def collisions(self) -> int:
        return self.generated - self.distinct


def witness_census(n: int, N: int, m: int, *, ceiling: int = WITNESS_CEILING,
                   force: bool = False) -> WitnessCensus:
    if n > ceiling and not force:
        raise CeilingExceeded(f"n={n} exceeds witness ceiling {ceiling}")
    seen = set()
    generated = rejected = 0
    for w in witness_params(n, N, m):
        try:
            seen.add(build_witness(w))
        except MinimaShift:
            rejected += 1
            continue
        generated += 1
    census = WitnessCensus(n, N, m, generated, len(seen), rejected)
    if rejected:
        log.warning("%d witness parameter sets for n=%d N=%d m=%d shift the minima",
                    rejected, n, N, m)
    if census.collisions:
        log.warning("witness collision: %d parameter sets map to %d permutations",
                    generated, len(seen))
    return census


def count_witnesses(n: int, N: int, m: int, **kw) -> int:
    """Number of distinct witnesses; each one is checked to avoid 12453.

    Parameter sets rejected with MinimaShift are left out of the count.
    """
    return witness_census(n, N, m, **kw).distinct


def witness_bound_holds(n: int, N: int, m: int, **kw) -> bool:
    return count_witnesses(n, N, m, **kw) <= count_avoiders(P12453, n)


__all__ = [
    "Triple", "TripleError", "WitnessError", "MinimaShift", "WitnessParams", "WitnessCensus",
    "merge", "is_compatible", "place", "nearest_minimum_rule",
    "extend_with_buffer", "buffer_violations", "block_lengths",
    "build_witness", "witness_params", "witness_census", "count_witnesses",
]
