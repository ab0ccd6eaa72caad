"""Growth-rate constants and bounds for pattern classes.

Closed forms are exact ``AlgebraicValue`` objects. Finite lower bounds are
plain n-th roots of exact counts, never extrapolated.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebraic import AlgebraicValue
from .enumeration import count_avoiders
from .perm import (
    Perm, avoids, classify_decomposability, decreasing, direct_sum, increasing,
    is_sum_indecomposable, layers_of, reverse, skew_sum, symmetry_class,
)

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2

_1342 = Perm((1, 3, 4, 2))


# ---------------------------------------------------------------------------
# closed forms

def inter_limit_step(limit):
    """(1 + sqrt(L))^2 = 1 + L + 2 sqrt(L).

    Exact for ``AlgebraicValue`` / int / Fraction input whenever the root
    denests, otherwise computed in floating point.
    """
    if isinstance(limit, (AlgebraicValue, int, Fraction)):
        try:
            return (1 + AlgebraicValue.of(limit).sqrt()).square()
        except ValueError:
            limit = float(AlgebraicValue.of(limit))
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return (1 + math.sqrt(limit)) ** 2


def _base_limit(q: Perm) -> AlgebraicValue | None:
    k = len(q)
    if k == 3:
        return AlgebraicValue(4)
    if q == increasing(k) or q == decreasing(k):
        return AlgebraicValue((k - 1) ** 2)
    if q in symmetry_class(_1342):
        return AlgebraicValue(8)
    return None


def _strip_one(q: Perm) -> Perm:
    return Perm(e - 1 for e in q[1:])


def _limit_of(q: Perm) -> AlgebraicValue | None:
    base = _base_limit(q)
    if base is not None:
        return base
    # L(1 (r+1)) = (1 + sqrt(L(r)))^2 when r itself starts with 1
    if len(q) >= 3 and q[0] == 1 and q[1] == 2:
        inner = closed_form_limit(_strip_one(q))
        if inner is not None:
            return inter_limit_step(inner)
    return None


def closed_form_limit(q: Sequence[int]) -> AlgebraicValue | None:
    """Exact Stanley-Wilf limit for the families with a known value, else None.

    Covers length-3 patterns (4), monotone patterns ((k-1)^2), the 1342
    class (8), and anything reached from those by repeatedly prepending 1
    to a pattern that starts with 1 (q_k gives (k-4+sqrt 8)^2). Results
    transfer across the reverse/complement/inverse orbit.
    """
    q = Perm(q)
    if not q:
        return None
    if len(q) == 1:
        return AlgebraicValue(0)
    for member in sorted(symmetry_class(q)):
        val = _limit_of(member)
        if val is not None:
            return val
    return None


# ---------------------------------------------------------------------------
# upper-bound recursion

def upper_chain_exact(c0, steps: int) -> list[AlgebraicValue]:
    """[c0, c1, ..., c_steps] with c_{i+1} = (1 + sqrt(c_i))^2, exactly."""
    vals = [AlgebraicValue.of(c0)]
    for _ in range(steps):
        vals.append((1 + vals[-1].sqrt()).square())
    return vals


def gener_upper_chain(c0, steps: int) -> list[decimal.Decimal]:
    """The same recursion as decimals (50 significant digits).

    Exact input is iterated in exact arithmetic first; anything else goes
    through Decimal square roots.
    """
    if isinstance(c0, (int, Fraction, AlgebraicValue)):
        try:
            return [v.to_decimal() for v in upper_chain_exact(c0, steps)]
        except ValueError:
            c0 = AlgebraicValue.of(c0).to_decimal()
    ctx = decimal.Context(prec=50)
    cur = decimal.Decimal(c0) if not isinstance(c0, float) else decimal.Decimal(repr(c0))
    if cur < 0:
        raise ValueError("c0 must be >= 0")
    out = [cur]
    for _ in range(steps):
        root = ctx.add(1, ctx.sqrt(cur))
        cur = ctx.multiply(root, root)
        out.append(cur)
    return out


@dataclass(frozen=True)
class UpperChain:
    base: Perm
    base_bound: AlgebraicValue
    source: str
    steps: int
    values: tuple[AlgebraicValue, ...]

    @property
    def value(self) -> AlgebraicValue:
        return self.values[-1]

    def trace(self) -> list[str]:
        lines = [f"S_n({self.base}) < ({self.base_bound})^n  [{self.source}]"]
        for i, v in enumerate(self.values[1:], 1):
            lines.append(f"prepend 1 (step {i}): c -> (1+sqrt(c))^2 = {v}")
        return lines


def _certified_base(q: Perm) -> tuple[AlgebraicValue, str] | None:
    if len(q) == 3:
        return AlgebraicValue(4), "Catalan numbers are below 4^n"
    if q in symmetry_class(_1342):
        return AlgebraicValue(8), "S_n(1342) < 8^n"
    return None


def upper_chain_for(q: Sequence[int]) -> UpperChain | None:
    """Certified c^n upper bound obtained by stripping leading 1s.

    Stripping is only allowed while the shorter pattern still starts with
    1, and a chain is only attached once it reaches a base with a
    certified bound. Counts are shared across the symmetry orbit, so any
    orbit member may serve at each level.
    """
    orbit = sorted(symmetry_class(Perm(q)))
    for member in orbit:
        hit = _certified_base(member)
        if hit is not None:
            bound, source = hit
            return UpperChain(member, bound, source, 0, (bound,))
    for member in orbit:
        if len(member) >= 3 and member[0] == 1 and member[1] == 2:
            inner = upper_chain_for(_strip_one(member))
            if inner is not None:
                step = (1 + inner.value.sqrt()).square()
                return UpperChain(inner.base, inner.base_bound, inner.source,
                                  inner.steps + 1, inner.values + (step,))
    return None


# ---------------------------------------------------------------------------
# lower bounds

@dataclass(frozen=True)
class FiniteLowerBound:
    best: float
    witness_n: int
    roots: tuple[float, ...]  # roots[i] = S_{i+1}(q)^(1/(i+1))
    counts: tuple[int, ...]   # counts[i] = S_{i+1}(q)


def fekete_lower_bound(q: Sequence[int], max_n: int, **kw) -> FiniteLowerBound:
    """Largest S_n(q)^(1/n) over 1 <= n <= max_n."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    counts = tuple(count_avoiders(q, n, **kw) for n in range(1, max_n + 1))
    roots = tuple(c ** (1.0 / n) if c else 0.0 for n, c in enumerate(counts, 1))
    best_i = max(range(len(roots)), key=lambda i: (roots[i], -i))
    return FiniteLowerBound(roots[best_i], best_i + 1, roots, counts)


def composition_for(q: Sequence[int]):
    """Direct sum when q is sum-indecomposable, otherwise skew sum.

    Either way two avoiders compose into an avoider, which is what makes
    S_{a+b} >= S_a S_b.
    """
    return direct_sum if is_sum_indecomposable(q) else skew_sum


@dataclass(frozen=True)
class SupermultViolation:
    a: int
    b: int
    lhs: int
    rhs: int


def check_supermultiplicativity(q: Sequence[int], max_total: int, **kw) -> list[SupermultViolation]:
    """All (a, b) with a + b <= max_total where S_{a+b} < S_a S_b."""
    counts = [count_avoiders(q, n, **kw) for n in range(max_total + 1)]
    bad = []
    for a in range(1, max_total):
        for b in range(1, max_total - a + 1):
            if counts[a + b] < counts[a] * counts[b]:
                bad.append(SupermultViolation(a, b, counts[a + b], counts[a] * counts[b]))
    return bad


def composed_avoiders_ok(q: Sequence[int], left: Sequence[Perm], right: Sequence[Perm]) -> bool:
    """Every composition of a left avoider with a right avoider avoids q."""
    op = composition_for(q)
    return all(avoids(op(s, t), q) for s in left for t in right)


# ---------------------------------------------------------------------------
# the optimisation behind the exact value of L(12453)

def _entropy(alpha: float) -> float:
    if alpha <= 0.0 or alpha >= 1.0:
        return 0.0
    return -alpha * math.log(alpha) - (1 - alpha) * math.log(1 - alpha)


def f_alpha(alpha: float, c: float) -> float:
    """exp(2 H(alpha)) * c^(1 - alpha), the n-th root limit of
    binom(n, alpha n)^2 c^(n - alpha n)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if c <= 0:
        raise ValueError("c must be positive")
    return math.exp(2 * _entropy(alpha) + (1 - alpha) * math.log(c))


def _assert_unimodal(f, a: float, b: float, points: int = 1000) -> None:
    ys = [f(a + (b - a) * i / points) for i in range(points + 1)]
    peak = max(range(len(ys)), key=ys.__getitem__)
    rising = all(ys[i] <= ys[i + 1] for i in range(peak))
    falling = all(ys[i] >= ys[i + 1] for i in range(peak, points))
    if not (rising and falling):
        raise ArithmeticError("objective is not unimodal on the grid")


def golden_max(f, a: float, b: float, tol: float = 1e-9) -> float:
    """Maximiser of a unimodal f on [a, b], to within ``tol``."""
    h = b - a
    c, d = a + INV_PHI2 * h, a + INV_PHI * h
    yc, yd = f(c), f(d)
    while h > tol:
        if yc > yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + INV_PHI * h
            yd = f(d)
    return (a + b) / 2


def optimize_f(c: float) -> tuple[float, float]:
    """(alpha*, f(alpha*)) maximising f_alpha over [0, 1]."""
    if c <= 0:
        raise ValueError("c must be positive")
    # log f is the better-conditioned objective; same maximiser
    g = lambda x: 2 * _entropy(x) + (1 - x) * math.log(c)
    _assert_unimodal(g, 0.0, 1.0)
    alpha = golden_max(g, 0.0, 1.0)
    return alpha, f_alpha(alpha, c)


def layered_floor(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k - 1) ** 2


def valtr_floor(k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.exp(-3) * k * k


# ---------------------------------------------------------------------------
# report

@dataclass
class BoundReport:
    pattern: Perm
    closed_form: AlgebraicValue | None
    finite_lower: FiniteLowerBound
    upper_chain: UpperChain | None
    reference_floor: float
    notes: list[str] = field(default_factory=list)

    def consistency_problems(self) -> list[str]:
        out = []
        if self.closed_form is not None:
            if self.finite_lower.best > float(self.closed_form) + 1e-9:
                out.append("finite lower bound exceeds closed form")
            if self.upper_chain is not None and self.closed_form > self.upper_chain.value:
                out.append("closed form exceeds upper chain")
        return out


def bound_report(q: Sequence[int], max_n: int, **kw) -> BoundReport:
    q = Perm(q)
    closed = closed_form_limit(q)
    chain = upper_chain_for(q)
    notes = []
    if closed is None and len(q) >= 2 and q[0] == 1:
        rest = Perm(e - 1 for e in q[1:])
        if rest[0] != 1 and not classify_decomposability(rest):
            notes.append(f"{rest} is indecomposable: only L({q}) >= (1+sqrt(L({rest})))^2 is known")
    if layers_of(q) is not None or layers_of(reverse(q)) is not None:
        notes.append(f"layered: L >= {layered_floor(len(q))}")
    report = BoundReport(q, closed, fekete_lower_bound(q, max_n, **kw), chain,
                         valtr_floor(len(q)), notes)
    problems = report.consistency_problems()
    if problems:
        raise ArithmeticError(f"inconsistent bounds for {q}: {problems}")
    return report

