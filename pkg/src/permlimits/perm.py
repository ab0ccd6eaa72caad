"""Permutations in one-line notation, pattern containment and the pattern
constructions used throughout the package.

Everything is 1-based: a permutation of length n is a rearrangement of
1..n and positions run from 1 to n.

>>> p = parse_permutation("2413")
>>> left_to_right_minima(p)
MinimaProfile(positions=(1, 3), values=(2, 1), ambient_n=4)
>>> contains(p, parse_permutation("132"))
False
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Perm", "PatternError", "MinimaProfile", "Remaining",
    "parse_permutation", "format_permutation", "flatten",
    "contains", "avoids", "occurrence_ends_at", "match_plan",
    "left_to_right_minima", "remaining_string",
    "reverse", "complement", "inverse", "reverse_complement", "symmetry_class",
    "classify_decomposability", "is_indecomposable", "is_sum_indecomposable",
    "layers_of", "layered_from_composition",
    "prepend_one", "sandwich", "qk_family", "block_structured",
    "direct_sum", "skew_sum", "increasing", "decreasing",
]


class PatternError(ValueError):
    """Raised for malformed permutation text or invalid entries."""


class Perm(tuple):
    """An immutable permutation of 1..n in one-line notation.

    Also used as a pattern. The empty permutation is allowed.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        self = tuple.__new__(cls, (int(e) for e in entries))
        n = len(self)
        seen = [False] * (n + 1)
        for e in self:
            if not 1 <= e <= n:
                raise PatternError(f"value {e} out of range 1..{n}")
            if seen[e]:
                raise PatternError(f"duplicate value {e}")
            seen[e] = True
        return self

    def __repr__(self) -> str:
        return f"Perm({format_permutation(self)!r})"

    def __str__(self) -> str:
        return format_permutation(self)


def parse_permutation(text: str) -> Perm:
    """Parse ``"12453"`` or ``"3,1,2"`` into a Perm.

    Digit strings are only meaningful for n <= 9; anything longer must use
    the comma form.
    """
    text = text.strip()
    if not text:
        return Perm()
    if "," in text:
        tokens = [t.strip() for t in text.split(",")]
    else:
        tokens = list(text) if text.isdigit() else [text]
    values = []
    for tok in tokens:
        if not tok:
            raise PatternError(f"empty token in {text!r}")
        if not tok.isdigit():
            raise PatternError(f"bad token {tok!r} in {text!r}")
        values.append(int(tok))
    n = len(values)
    seen = set()
    for tok, v in zip(tokens, values):
        if not 1 <= v <= n:
            raise PatternError(f"token {tok!r} out of range 1..{n}")
        if v in seen:
            raise PatternError(f"duplicate token {tok!r}")
        seen.add(v)
    return Perm(values)


def format_permutation(p: Sequence[int], compact: bool = False) -> str:
    """Comma-separated text; ``compact=True`` gives a digit string when n <= 9."""
    if compact and len(p) <= 9:
        return "".join(str(e) for e in p)
    return ",".join(str(e) for e in p)


def flatten(values: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    rank = {v: i for i, v in enumerate(sorted(values), 1)}
    return Perm(rank[v] for v in values)


def increasing(k: int) -> Perm:
    return Perm(range(1, k + 1))


def decreasing(k: int) -> Perm:
    return Perm(range(k, 0, -1))


# ---------------------------------------------------------------------------
# containment

def match_plan(q: Sequence[int], last_first: bool = False) -> list[tuple[int, int]]:
    """Neighbour table for depth-first matching of ``q``.

    Pattern indices are matched left to right. For each index j the table
    holds the already-matched indices whose q-values are the closest below
    and above q[j] (-1 when absent), so a candidate value only needs two
    comparisons. With ``last_first`` the final index counts as matched
    before all others.
    """
    k = len(q)
    plan = []
    stop = k - 1 if last_first else k
    for j in range(stop):
        done = list(range(j))
        if last_first:
            done.append(k - 1)
        lo = hi = -1
        for i in done:
            if q[i] < q[j] and (lo < 0 or q[i] > q[lo]):
                lo = i
            elif q[i] > q[j] and (hi < 0 or q[i] < q[hi]):
                hi = i
        plan.append((lo, hi))
    return plan


def _search(seq: Sequence[int], plan, vals: list, j: int, start: int) -> bool:
    k = len(plan)
    if j == k:
        return True
    lo, hi = plan[j]
    low = vals[lo] if lo >= 0 else 0
    high = vals[hi] if hi >= 0 else 1 << 62
    # leave room for the k - j - 1 entries still to be matched
    for pos in range(start, len(seq) - (k - j) + 1):
        v = seq[pos]
        if low < v < high:
            vals[j] = v
            if _search(seq, plan, vals, j + 1, pos + 1):
                return True
    return False


def contains(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff some subsequence of ``p`` is order-isomorphic to ``q``."""
    k = len(q)
    if k == 0:
        return True
    if k > len(p):
        return False
    return _search(p, match_plan(q), [0] * k, 0, 0)


def avoids(p: Sequence[int], q: Sequence[int]) -> bool:
    return not contains(p, q)


def occurrence_ends_at(prefix: Sequence[int], last: int, q: Sequence[int],
                       plan=None) -> bool:
    """Does ``prefix + [last]`` contain ``q`` with q's final entry at ``last``?

    ``plan`` is ``match_plan(q, last_first=True)``; pass it in when calling
    repeatedly with the same pattern.
    """
    k = len(q)
    if k == 0:
        return True
    if k - 1 > len(prefix):
        return False
    if plan is None:
        plan = match_plan(q, last_first=True)
    vals = [0] * k
    vals[k - 1] = last
    return _search(prefix, plan, vals, 0, 0)


# ---------------------------------------------------------------------------
# left-to-right minima

@dataclass(frozen=True)
class MinimaProfile:
    """Positions and values of the left-to-right minima.

    ``values`` are listed in position order, hence strictly decreasing.
    """
    positions: tuple[int, ...]
    values: tuple[int, ...]
    ambient_n: int

    def __len__(self) -> int:
        return len(self.positions)


class Remaining(NamedTuple):
    raw: tuple[int, ...]
    pattern: Perm


def left_to_right_minima(p: Sequence[int]) -> MinimaProfile:
    if not p:
        raise ValueError("left-to-right minima of the empty permutation")
    positions, values = [], []
    cur = None
    for i, v in enumerate(p, 1):
        if cur is None or v < cur:
            cur = v
            positions.append(i)
            values.append(v)
    return MinimaProfile(tuple(positions), tuple(values), len(p))


def remaining_string(p: Sequence[int]) -> Remaining:
    """The non-minima of ``p`` in order, raw and flattened."""
    raw = []
    cur = None
    for v in p:
        if cur is None or v < cur:
            cur = v
        else:
            raw.append(v)
    return Remaining(tuple(raw), flatten(raw))


# ---------------------------------------------------------------------------
# symmetries

def reverse(q: Sequence[int]) -> Perm:
    return Perm(reversed(q))


def complement(q: Sequence[int]) -> Perm:
    k = len(q)
    return Perm(k + 1 - e for e in q)


def inverse(q: Sequence[int]) -> Perm:
    inv = [0] * len(q)
    for i, e in enumerate(q, 1):
        inv[e - 1] = i
    return Perm(inv)


def reverse_complement(q: Sequence[int]) -> Perm:
    k = len(q)
    return Perm(k + 1 - q[k - i] for i in range(1, k + 1))


def symmetry_class(q: Sequence[int]) -> frozenset[Perm]:
    """Orbit of ``q`` under reverse, complement and inverse (at most 8)."""
    orbit = set()
    frontier = [Perm(q)]
    while frontier:
        cur = frontier.pop()
        if cur in orbit:
            continue
        orbit.add(cur)
        frontier.extend((reverse(cur), complement(cur), inverse(cur)))
    return frozenset(orbit)


# ---------------------------------------------------------------------------
# structure

def classify_decomposability(q: Sequence[int]) -> tuple[int, ...]:
    """Cut positions c with every entry left of the cut larger than every
    entry right of it. An empty result means ``q`` is indecomposable."""
    if not q:
        raise ValueError("decomposability of the empty pattern")
    k = len(q)
    suffix_max = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix_max[i] = max(q[i], suffix_max[i + 1])
    cuts = []
    prefix_min = q[0]
    for c in range(1, k):
        prefix_min = min(prefix_min, q[c - 1])
        if prefix_min > suffix_max[c]:
            cuts.append(c)
    return tuple(cuts)


def is_indecomposable(q: Sequence[int]) -> bool:
    return not classify_decomposability(q)


def is_sum_indecomposable(q: Sequence[int]) -> bool:
    """No cut with every left entry smaller than every right entry."""
    if not q:
        raise ValueError("decomposability of the empty pattern")
    # prefix of length c is a sum component iff its max equals c
    running = 0
    for c, e in enumerate(q[:-1], 1):
        running = max(running, e)
        if running == c:
            return False
    return True


def layers_of(q: Sequence[int]) -> tuple[int, ...] | None:
    """Layer lengths of a layered pattern, or None if ``q`` is not layered."""
    layers = []
    i, k = 0, len(q)
    base = 0
    while i < k:
        top = q[i]
        length = top - base
        if length < 1 or i + length > k:
            return None
        if tuple(q[i:i + length]) != tuple(range(top, base, -1)):
            return None
        layers.append(length)
        base = top
        i += length
    return tuple(layers)


def layered_from_composition(layers: Sequence[int]) -> Perm:
    out = []
    base = 0
    for length in layers:
        if length < 1:
            raise ValueError(f"layer lengths must be positive, got {length}")
        out.extend(range(base + length, base, -1))
        base += length
    return Perm(out)


# ---------------------------------------------------------------------------
# constructions

def prepend_one(q: Sequence[int]) -> Perm:
    return Perm([1, *(e + 1 for e in q)])


def sandwich(q: Sequence[int]) -> Perm:
    return Perm([1, *(e + 1 for e in q), len(q) + 2])


def qk_family(k: int) -> Perm:
    """The pattern 12...(k-3)(k-1)k(k-2); q_4 = 1342, q_5 = 12453."""
    if k < 4:
        raise ValueError(f"q_k is defined for k >= 4, got {k}")
    return Perm([*range(1, k - 2), k - 1, k, k - 2])


def direct_sum(a: Sequence[int], b: Sequence[int]) -> Perm:
    return Perm([*a, *(e + len(a) for e in b)])


def skew_sum(a: Sequence[int], b: Sequence[int]) -> Perm:
    return Perm([*(e + len(b) for e in a), *b])


def block_structured(blocks: Sequence[Sequence[int]]) -> Perm:
    """Concatenate blocks so each block lies entirely below the blocks to
    its left."""
    if not blocks:
        raise ValueError("at least one block is required")
    out: list[int] = []
    top = sum(len(b) for b in blocks)
    for b in blocks:
        Perm(b)
        top -= len(b)
        out.extend(e + top for e in b)
    return Perm(out)
