"""Finite joint lifetime distributions and their exchangeability diagnostics.

A distribution is a finite set of atoms, each a vector of n strictly
positive rational lifetimes with a rational probability; probabilities must
sum to exactly 1. All questions quantified over "every t > 0" are decided
at the breakpoints (the distinct lifetime values): the component state
vector at time t is constant on each interval between consecutive
breakpoints, so checking at the left endpoints covers the whole half-line.

State vectors use the same packed encoding as truth-table indices:
component i working at time t sets bit i - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable

from .errors import TiesError
from .rationals import format_rational, parse_rational
from .signature import WeightFunction
from .structure import level_indices

__all__ = [
    "LifetimeDistribution",
    "QualityFunction",
    "StateDistribution",
    "breakpoints",
    "condition_w",
    "distribution_from_json",
    "distribution_to_json",
    "group_reliability",
    "has_ties",
    "is_q_symmetric",
    "lifetimes_exchangeable",
    "order_stat_survival",
    "relative_quality",
    "state_distribution",
    "states_exchangeable_at",
    "states_exchangeable_everywhere",
    "weakly_exchangeable",
]

Atom = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class LifetimeDistribution:
    """Finitely supported joint distribution of n component lifetimes.

    Atoms are canonicalized on construction: lifetimes coerced to exact
    rationals, duplicate vectors merged, atoms sorted. Equality is therefore
    a canonical-form comparison.
    """

    n: int
    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"component count must be a positive integer, got {self.n!r}")
        if not self.atoms:
            raise ValueError("a distribution needs at least one atom")
        merged: dict[tuple[Fraction, ...], Fraction] = {}
        total = Fraction(0)
        for entry in self.atoms:
            try:
                lifetimes, prob = entry
            except (TypeError, ValueError) as exc:
                raise ValueError(f"atom {entry!r} is not a (lifetimes, probability) pair") from exc
            xs = tuple(parse_rational(v) for v in lifetimes)
            if len(xs) != self.n:
                raise ValueError(
                    f"atom {entry!r} has {len(xs)} lifetimes, expected {self.n}"
                )
            if any(x <= 0 for x in xs):
                raise ValueError("lifetimes must be strictly positive")
            p = parse_rational(prob)
            if not 0 < p <= 1:
                raise ValueError(f"atom probability {p} is outside (0, 1]")
            merged[xs] = merged.get(xs, Fraction(0)) + p
            total += p
        if total != 1:
            raise ValueError(
                f"atom probabilities sum to {total}, off by {1 - total}"
            )
        object.__setattr__(self, "atoms", tuple(sorted(merged.items())))


@dataclass(frozen=True)
class QualityFunction:
    """Relative quality of every component subset, packed-index order.

    values[mask] is the probability that every component in the subset
    outlives every component outside it; the empty and full subsets carry
    the conventional value 1. ``from_tied`` records whether the source
    distribution had tied lifetimes, in which case signature operations
    must refuse the function.
    """

    n: int
    values: tuple[Fraction, ...]
    from_tied: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("quality functions need n >= 1")
        coerced = tuple(Fraction(v) for v in self.values)
        if len(coerced) != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} values for n={self.n}, got {len(coerced)}"
            )
        if coerced[0] != 1 or coerced[-1] != 1:
            raise ValueError("the empty and full subsets must have quality 1")
        if any(not 0 <= v <= 1 for v in coerced):
            raise ValueError("quality values must lie in [0, 1]")
        object.__setattr__(self, "values", coerced)


@dataclass(frozen=True)
class StateDistribution:
    """Distribution of the component state vector at a fixed time."""

    n: int
    t: Fraction
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(Fraction(v) for v in self.probs)
        if len(coerced) != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} state probabilities, got {len(coerced)}"
            )
        if any(v < 0 for v in coerced):
            raise ValueError("state probabilities must be nonnegative")
        if sum(coerced) != 1:
            raise ValueError("state probabilities must sum to exactly 1")
        object.__setattr__(self, "probs", coerced)
        object.__setattr__(self, "t", Fraction(self.t))

    def prob(self, index: int) -> Fraction:
        return self.probs[index]

    def level_total(self, k: int) -> Fraction:
        """Probability that exactly k components are working."""
        return sum(
            (self.probs[i] for i in level_indices(self.n, k)), Fraction(0)
        )


def has_ties(d: LifetimeDistribution) -> bool:
    """True iff two components tie with positive probability."""
    return any(len(set(xs)) < d.n for xs, _ in d.atoms)


def breakpoints(d: LifetimeDistribution) -> tuple[Fraction, ...]:
    """Sorted distinct lifetime values; state vectors only change there."""
    values = {x for xs, _ in d.atoms for x in xs}
    return tuple(sorted(values))


def state_distribution(d: LifetimeDistribution, t: object) -> StateDistribution:
    """Distribution of the working/failed vector at time t (component alive iff lifetime > t)."""
    t = parse_rational(t)
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")
    probs = [Fraction(0)] * (1 << d.n)
    for xs, p in d.atoms:
        index = 0
        for i, x in enumerate(xs):
            if x > t:
                index |= 1 << i
        probs[index] += p
    return StateDistribution(d.n, t, tuple(probs))


def states_exchangeable_at(d: LifetimeDistribution, t: object) -> bool:
    """True iff state probabilities at t depend only on how many components work."""
    sd = state_distribution(d, t)
    for k in range(d.n + 1):
        idxs = level_indices(d.n, k)
        first = sd.probs[idxs[0]]
        if any(sd.probs[i] != first for i in idxs[1:]):
            return False
    return True


def _state_exchangeability_witness(
    d: LifetimeDistribution,
) -> tuple[Fraction, int, int, Fraction, Fraction] | None:
    """Smallest (breakpoint, state, state) pair with unequal same-level probabilities."""
    for t in breakpoints(d):
        sd = state_distribution(d, t)
        for k in range(d.n + 1):
            idxs = level_indices(d.n, k)
            first = sd.probs[idxs[0]]
            for other in idxs[1:]:
                if sd.probs[other] != first:
                    return t, idxs[0], other, first, sd.probs[other]
    return None


def states_exchangeable_everywhere(d: LifetimeDistribution) -> bool:
    """State exchangeability at every t > 0, decided at the breakpoints."""
    return _state_exchangeability_witness(d) is None


def relative_quality(d: LifetimeDistribution) -> QualityFunction:
    """Probability, per subset, that its components outlive all of the others.

    Computed for tied distributions as well; the result then carries
    ``from_tied`` so that downstream signature operations can refuse it.
    """
    full = (1 << d.n) - 1
    values = [Fraction(0)] * (1 << d.n)
    values[0] = Fraction(1)
    values[full] = Fraction(1)
    for mask in range(1, full):
        inside = [i for i in range(d.n) if (mask >> i) & 1]
        outside = [i for i in range(d.n) if not (mask >> i) & 1]
        acc = Fraction(0)
        for xs, p in d.atoms:
            if max(xs[i] for i in outside) < min(xs[i] for i in inside):
                acc += p
        values[mask] = acc
    return QualityFunction(d.n, tuple(values), from_tied=has_ties(d))


def is_q_symmetric(q: QualityFunction) -> bool:
    """True iff every subset's quality is 1 / C(n, |subset|)."""
    return _q_symmetry_witness(q) is None


def _q_symmetry_witness(
    q: QualityFunction,
) -> tuple[int, Fraction, Fraction] | None:
    for mask in range(1 << q.n):
        expected = Fraction(1, math.comb(q.n, mask.bit_count()))
        if q.values[mask] != expected:
            return mask, q.values[mask], expected
    return None


def lifetimes_exchangeable(d: LifetimeDistribution) -> bool:
    """True iff the joint law is invariant under every relabeling of components."""
    return _lifetime_exchangeability_witness(d) is None


def _lifetime_exchangeability_witness(
    d: LifetimeDistribution,
) -> tuple[tuple[int, ...], tuple[Fraction, ...], Fraction, Fraction] | None:
    """First permutation (lexicographic) and vector where the pushforward law differs."""
    base = {xs: p for xs, p in d.atoms}
    zero = Fraction(0)
    for sigma in permutations(range(d.n)):
        if sigma == tuple(range(d.n)):
            continue
        pushed: dict[tuple[Fraction, ...], Fraction] = {}
        for xs, p in d.atoms:
            key = tuple(xs[sigma[i]] for i in range(d.n))
            pushed[key] = pushed.get(key, zero) + p
        if pushed != base:
            for xs in sorted(set(base) | set(pushed)):
                if base.get(xs, zero) != pushed.get(xs, zero):
                    return (
                        tuple(s + 1 for s in sigma),
                        xs,
                        base.get(xs, zero),
                        pushed.get(xs, zero),
                    )
    return None


def order_stat_survival(d: LifetimeDistribution, k: int, t: object) -> Fraction:
    """Probability that the k-th smallest lifetime exceeds t (k in 1..n)."""
    if not 1 <= k <= d.n:
        raise ValueError(f"order statistic index {k} out of range 1..{d.n}")
    return _order_stat_survival_extended(d, k, t)


def _order_stat_survival_extended(d: LifetimeDistribution, k: int, t: object) -> Fraction:
    # Internal boundary conventions: the 0-th order statistic never survives,
    # the (n+1)-th always does.
    if k == 0:
        return Fraction(0)
    if k == d.n + 1:
        return Fraction(1)
    t = parse_rational(t)
    threshold = d.n - k + 1
    return sum(
        (p for xs, p in d.atoms if sum(1 for x in xs if x > t) >= threshold),
        Fraction(0),
    )


def group_reliability(
    d: LifetimeDistribution, components: Iterable[int], t: object
) -> Fraction:
    """Probability that every component in the (1-based) group survives past t."""
    t = parse_rational(t)
    group = set()
    for comp in components:
        if not isinstance(comp, int) or isinstance(comp, bool) or not 1 <= comp <= d.n:
            raise ValueError(f"component {comp!r} out of range 1..{d.n}")
        group.add(comp - 1)
    return sum(
        (p for xs, p in d.atoms if all(xs[i] > t for i in group)), Fraction(0)
    )


def weakly_exchangeable(d: LifetimeDistribution) -> bool:
    """True iff order statistics are independent of the realized failure order.

    For every strict ordering of the components with positive probability
    and every k, the conditional law of the k-th smallest lifetime given
    that ordering must match the unconditional one. Orderings of zero
    probability are skipped (the conditional is undefined there). Tied
    distributions are refused.
    """
    holds, _, _ = _weak_exchangeability_scan(d)
    return holds


def _weak_exchangeability_scan(
    d: LifetimeDistribution,
) -> tuple[
    bool,
    tuple[tuple[int, ...], int, Fraction, Fraction, Fraction] | None,
    tuple[tuple[int, ...], ...],
]:
    """(holds, witness, skipped zero-probability orderings), witness lexicographically first."""
    if has_ties(d):
        raise TiesError("weak exchangeability needs a distribution without ties")
    bps = breakpoints(d)
    skipped = []
    for sigma in permutations(range(d.n)):
        members = []
        total = Fraction(0)
        for xs, p in d.atoms:
            if all(xs[sigma[i]] < xs[sigma[i + 1]] for i in range(d.n - 1)):
                members.append((xs, p))
                total += p
        if total == 0:
            skipped.append(tuple(s + 1 for s in sigma))
            continue
        for k in range(1, d.n + 1):
            for t in bps:
                unconditional = 1 - order_stat_survival(d, k, t)
                conditional = (
                    sum((p for xs, p in members if sorted(xs)[k - 1] <= t), Fraction(0))
                    / total
                )
                if conditional != unconditional:
                    witness = (
                        tuple(s + 1 for s in sigma),
                        k,
                        t,
                        unconditional,
                        conditional,
                    )
                    return False, witness, tuple(skipped)
    return True, None, tuple(skipped)


def condition_w(d: LifetimeDistribution, w: WeightFunction, t: object) -> bool:
    """Whether each nonzero state's probability at t is w(state) times its level total.

    The weight function is taken as given; nothing here requires its level
    sums to equal 1.
    """
    return _condition_w_witness(d, w, t) is None


def _condition_w_witness(
    d: LifetimeDistribution, w: WeightFunction, t: object
) -> tuple[int, Fraction, Fraction] | None:
    if w.n != d.n:
        raise ValueError("weight function and distribution disagree on component count")
    sd = state_distribution(d, t)
    level_totals = [sd.level_total(k) for k in range(d.n + 1)]
    for x in range(1, 1 << d.n):
        expected = w.values[x] * level_totals[x.bit_count()]
        if sd.probs[x] != expected:
            return x, sd.probs[x], expected
    return None


def distribution_to_json(d: LifetimeDistribution) -> dict:
    """Distribution-file form with all rationals as "a/b" strings."""
    return {
        "n": d.n,
        "atoms": [
            {
                "x": [format_rational(x) for x in xs],
                "p": format_rational(p),
            }
            for xs, p in d.atoms
        ],
    }


def distribution_from_json(obj: object) -> LifetimeDistribution:
    """Parse the distribution-file form; validation errors name the offending field."""
    if not isinstance(obj, dict):
        raise ValueError("distribution file must be a JSON object")
    try:
        n = obj["n"]
        atoms = obj["atoms"]
    except KeyError as exc:
        raise ValueError(
            f"distribution file is missing the {exc.args[0]!r} field"
        ) from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"distribution field 'n' must be an integer, got {n!r}")
    if not isinstance(atoms, list) or not atoms:
        raise ValueError("distribution field 'atoms' must be a nonempty list")
    parsed = []
    for i, entry in enumerate(atoms):
        if not isinstance(entry, dict) or "x" not in entry or "p" not in entry:
            raise ValueError(f"atom {i} must be an object with 'x' and 'p' fields")
        xs = entry["x"]
        if not isinstance(xs, list):
            raise ValueError(f"atom {i}: 'x' must be a list of rationals")
        parsed.append((tuple(parse_rational(v) for v in xs), parse_rational(entry["p"])))
    return LifetimeDistribution(n, tuple(parsed))
