"""System reliability, signature representations, and their verification.

Two decompositions of the system survival probability into order-statistic
survivals are implemented: one weighted by the design signature and one by
the probability signature. Each is exact for every system precisely when
the joint lifetime law satisfies a matching condition (state
exchangeability for the former, proportionality of state probabilities to
the relative quality for the latter). The verifier evaluates both sides of
each equivalence independently on a concrete distribution and treats any
disagreement as a fatal implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .distribution import (
    LifetimeDistribution,
    breakpoints,
    has_ties,
    relative_quality,
    state_distribution,
    order_stat_survival,
    _condition_w_witness,
    _lifetime_exchangeability_witness,
    _order_stat_survival_extended,
    _q_symmetry_witness,
    _state_exchangeability_witness,
    _weak_exchangeability_scan,
)
from .errors import TheoremInconsistencyError, TiesError
from .rationals import format_rational, parse_rational
from .signature import (
    Signature,
    WeightFunction,
    boland_signature,
    probability_signature,
    weighted_phi_level,
)
from .structure import (
    StructureFunction,
    SystemClass,
    enumerate_systems,
    rank_over_rationals,
    system_to_json,
)

__all__ = [
    "DiagnosisReport",
    "ReliabilityCurve",
    "TheoremCheck",
    "diagnose",
    "probability_signature_oracle",
    "reliability_curve",
    "repr_boland",
    "repr_prob_signature",
    "repr_weighted",
    "system_lifetime",
    "system_reliability",
    "verify_theorems",
]


@dataclass(frozen=True)
class ReliabilityCurve:
    """Piecewise-constant survival curve of a system.

    ``values`` has one entry per interval: values[0] on (0, b_1), then
    values[i] on [b_i, b_(i+1)) and the final entry on [b_last, infinity).
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bps = tuple(Fraction(b) for b in self.breakpoints)
        vals = tuple(Fraction(v) for v in self.values)
        if not bps:
            raise ValueError("a curve needs at least one breakpoint")
        if any(b <= 0 for b in bps):
            raise ValueError("breakpoints must be positive")
        if list(bps) != sorted(set(bps)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(vals) != len(bps) + 1:
            raise ValueError("need exactly one value per interval")
        if any(not 0 <= v <= 1 for v in vals):
            raise ValueError("curve values must lie in [0, 1]")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    def value_at(self, t: object) -> Fraction:
        t = parse_rational(t)
        if t <= 0:
            raise ValueError(f"time must be positive, got {t}")
        index = 0
        for b in self.breakpoints:
            if t >= b:
                index += 1
            else:
                break
        return self.values[index]

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "values": [format_rational(v) for v in self.values],
        }


def system_lifetime(phi: StructureFunction, lifetimes: Sequence[object]) -> Fraction:
    """Failure time of the system under one realization of component lifetimes.

    Components sharing a lifetime value fail simultaneously. The system
    needs the semicoherent boundary values, otherwise it might never fail.
    """
    if not phi.semicoherent:
        raise ValueError(
            "system lifetime needs value 0 at the all-failed state and 1 at "
            "the all-working state"
        )
    xs = [parse_rational(v) for v in lifetimes]
    if len(xs) != phi.n:
        raise ValueError(f"expected {phi.n} lifetimes, got {len(xs)}")
    if any(x <= 0 for x in xs):
        raise ValueError("lifetimes must be strictly positive")
    for v in sorted(set(xs)):
        index = 0
        for i, x in enumerate(xs):
            if x > v:
                index |= 1 << i
        if phi.value(index) == 0:
            return v
    raise AssertionError("unreachable: a semicoherent system fails by the last failure")


def probability_signature_oracle(
    phi: StructureFunction, d: LifetimeDistribution
) -> Signature:
    """Probability signature by direct atom scan, no quality function involved.

    For each atom the system lifetime is located among the sorted component
    lifetimes; entry k accumulates the probability that it is the k-th
    smallest. Needs a no-ties distribution so that the rank is unambiguous.
    """
    if has_ties(d):
        raise TiesError("signature oracle needs a distribution without ties")
    if phi.n != d.n:
        raise ValueError("system and distribution disagree on component count")
    acc = [Fraction(0)] * d.n
    for xs, p in d.atoms:
        failure_time = system_lifetime(phi, xs)
        k = sorted(xs).index(failure_time) + 1
        acc[k - 1] += p
    return Signature(tuple(acc))


def system_reliability(
    phi: StructureFunction, d: LifetimeDistribution, t: object
) -> Fraction:
    """Probability that the system works at time t, via the state distribution."""
    if phi.n != d.n:
        raise ValueError("system and distribution disagree on component count")
    sd = state_distribution(d, t)
    return sum(
        (p for index, p in enumerate(sd.probs) if p and phi.value(index)),
        Fraction(0),
    )


def reliability_curve(
    phi: StructureFunction, d: LifetimeDistribution
) -> ReliabilityCurve:
    """Full survival curve of the system, one exact value per interval."""
    bps = breakpoints(d)
    # On (0, b_1) every component is alive, so evaluating at b_1 / 2 is exact.
    times = [bps[0] / 2, *bps]
    values = tuple(system_reliability(phi, d, t) for t in times)
    return ReliabilityCurve(bps, values)


def repr_boland(phi: StructureFunction, d: LifetimeDistribution, t: object) -> Fraction:
    """Design-signature mixture of order-statistic survivals at time t."""
    if phi.n != d.n:
        raise ValueError("system and distribution disagree on component count")
    s = boland_signature(phi)
    return sum(
        (s[k - 1] * order_stat_survival(d, k, t) for k in range(1, d.n + 1)),
        Fraction(0),
    )


def repr_prob_signature(
    phi: StructureFunction, d: LifetimeDistribution, t: object
) -> Fraction:
    """Probability-signature mixture of order-statistic survivals at time t."""
    if phi.n != d.n:
        raise ValueError("system and distribution disagree on component count")
    if has_ties(d):
        raise TiesError(
            "probability-signature representation needs a distribution without ties"
        )
    p = probability_signature(phi, relative_quality(d))
    return sum(
        (p[k - 1] * order_stat_survival(d, k, t) for k in range(1, d.n + 1)),
        Fraction(0),
    )


def repr_weighted(
    phi: StructureFunction, d: LifetimeDistribution, w: WeightFunction, t: object
) -> Fraction:
    """Mixture of order-statistic survivals weighted by differenced level sums of w."""
    if phi.n != d.n or w.n != d.n:
        raise ValueError("system, weights, and distribution disagree on component count")
    n = d.n
    total = Fraction(0)
    for k in range(1, n + 1):
        coeff = weighted_phi_level(phi, w, n - k + 1) - weighted_phi_level(phi, w, n - k)
        total += coeff * order_stat_survival(d, k, t)
    return total


@dataclass(frozen=True)
class TheoremCheck:
    """One equivalence with both sides computed independently.

    ``relation`` is "iff" when the two sides must agree exactly, or "if"
    when only the right side forces the left (used when the enumerated
    class is too small to span the full state space, so the necessity
    direction is not guaranteed).
    """

    name: str
    relation: str
    lhs: bool
    rhs: bool

    @property
    def consistent(self) -> bool:
        if self.relation == "iff":
            return self.lhs == self.rhs
        return self.lhs or not self.rhs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "consistent": self.consistent,
        }


@dataclass(frozen=True, eq=False)
class DiagnosisReport:
    """Conditions, verdicts, and witnesses for one distribution.

    In "predicted" mode (from :func:`diagnose`) the verdicts are the values
    the equivalences dictate from the conditions alone; no systems are
    enumerated, and the predictions refer to the representation holding for
    the whole semicoherent family. In "verified" mode (from
    :func:`verify_theorems`) the verdicts are measured over an enumerated
    class and cross-checked against the conditions.

    Verdicts and conditions that need a tie-free distribution are None when
    ties are present.
    """

    mode: str
    n: int
    breakpoints: tuple[Fraction, ...]
    has_ties: bool
    q_symmetric: bool
    states_exchangeable_everywhere: bool
    lifetimes_exchangeable: bool
    weakly_exchangeable: bool | None
    condition_q_everywhere: bool
    boland_repr_all_systems: bool | None
    prob_repr_all_systems: bool | None
    both_representations: bool | None
    witnesses: dict
    skipped_orderings: tuple[tuple[int, ...], ...]
    system_class: SystemClass | None = None
    systems_checked: int | None = None
    class_rank: int | None = None
    theorem_checks: tuple[TheoremCheck, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"mode": self.mode, "n": self.n}
        if self.system_class is not None:
            out["class"] = self.system_class.value
            out["systems_checked"] = self.systems_checked
            out["class_rank"] = self.class_rank
        out["breakpoints"] = [format_rational(b) for b in self.breakpoints]
        out["conditions"] = {
            "has_ties": self.has_ties,
            "q_symmetric": self.q_symmetric,
            "states_exchangeable_everywhere": self.states_exchangeable_everywhere,
            "lifetimes_exchangeable": self.lifetimes_exchangeable,
            "weakly_exchangeable": self.weakly_exchangeable,
            "condition_q_everywhere": self.condition_q_everywhere,
        }
        out["verdicts"] = {
            "boland_repr_all_systems": self.boland_repr_all_systems,
            "prob_repr_all_systems": self.prob_repr_all_systems,
            "both_representations": self.both_representations,
        }
        out["witnesses"] = self.witnesses
        out["skipped_orderings"] = [list(s) for s in self.skipped_orderings]
        if self.theorem_checks:
            out["theorem_checks"] = [c.to_json() for c in self.theorem_checks]
        return out


def _state_vector(n: int, index: int) -> list[int]:
    return [(index >> i) & 1 for i in range(n)]


def _subset_members(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1]


def _condition_witnesses(d: LifetimeDistribution) -> tuple[dict, dict]:
    """Evaluate every condition once; returns (flag values, witness structures)."""
    ties = has_ties(d)
    quality = relative_quality(d)
    witnesses: dict = {}

    q_wit = _q_symmetry_witness(quality)
    if q_wit is not None:
        mask, value, expected = q_wit
        witnesses["q_symmetric"] = {
            "subset": _subset_members(mask),
            "value": format_rational(value),
            "symmetric_value": format_rational(expected),
        }

    state_wit = _state_exchangeability_witness(d)
    if state_wit is not None:
        t, x, x_other, p, p_other = state_wit
        witnesses["states_exchangeable"] = {
            "t": format_rational(t),
            "state": _state_vector(d.n, x),
            "other_state": _state_vector(d.n, x_other),
            "probability": format_rational(p),
            "other_probability": format_rational(p_other),
        }

    life_wit = _lifetime_exchangeability_witness(d)
    if life_wit is not None:
        sigma, xs, p, p_pushed = life_wit
        witnesses["lifetimes_exchangeable"] = {
            "permutation": list(sigma),
            "lifetimes": [format_rational(x) for x in xs],
            "probability": format_rational(p),
            "permuted_probability": format_rational(p_pushed),
        }

    skipped: tuple[tuple[int, ...], ...] = ()
    weak: bool | None = None
    if not ties:
        weak, weak_wit, skipped = _weak_exchangeability_scan(d)
        if weak_wit is not None:
            sigma, k, t, unconditional, conditional = weak_wit
            witnesses["weakly_exchangeable"] = {
                "permutation": list(sigma),
                "k": k,
                "t": format_rational(t),
                "unconditional": format_rational(unconditional),
                "conditional": format_rational(conditional),
            }

    w = WeightFunction.from_quality(quality)
    cond_q = True
    for t in breakpoints(d):
        cond_wit = _condition_w_witness(d, w, t)
        if cond_wit is not None:
            x, p, expected = cond_wit
            witnesses["condition_q"] = {
                "t": format_rational(t),
                "state": _state_vector(d.n, x),
                "probability": format_rational(p),
                "expected": format_rational(expected),
            }
            cond_q = False
            break

    flags = {
        "has_ties": ties,
        "q_symmetric": q_wit is None,
        "states_exchangeable_everywhere": state_wit is None,
        "lifetimes_exchangeable": life_wit is None,
        "weakly_exchangeable": weak,
        "condition_q_everywhere": cond_q,
        "quality": quality,
        "skipped_orderings": skipped,
    }
    return flags, witnesses


def diagnose(d: LifetimeDistribution) -> DiagnosisReport:
    """Evaluate the conditions and predict the representation verdicts.

    No systems are enumerated: each verdict is what the corresponding
    equivalence forces for the family of all semicoherent systems given the
    measured conditions. Tie-dependent entries are None for tied inputs.
    """
    flags, witnesses = _condition_witnesses(d)
    ties = flags["has_ties"]
    predicted_boland = flags["states_exchangeable_everywhere"]
    predicted_prob = None if ties else flags["condition_q_everywhere"]
    predicted_both = (
        None
        if ties
        else flags["q_symmetric"] and flags["states_exchangeable_everywhere"]
    )
    return DiagnosisReport(
        mode="predicted",
        n=d.n,
        breakpoints=breakpoints(d),
        has_ties=ties,
        q_symmetric=flags["q_symmetric"],
        states_exchangeable_everywhere=flags["states_exchangeable_everywhere"],
        lifetimes_exchangeable=flags["lifetimes_exchangeable"],
        weakly_exchangeable=flags["weakly_exchangeable"],
        condition_q_everywhere=flags["condition_q_everywhere"],
        boland_repr_all_systems=predicted_boland,
        prob_repr_all_systems=predicted_prob,
        both_representations=predicted_both,
        witnesses=witnesses,
        skipped_orderings=flags["skipped_orderings"],
    )


@lru_cache(maxsize=None)
def _class_rank(n: int, system_class: SystemClass) -> int:
    return rank_over_rationals(enumerate_systems(n, system_class))


def verify_theorems(
    n: int, d: LifetimeDistribution, system_class: SystemClass
) -> DiagnosisReport:
    """Measure the representation verdicts over an enumerated class and
    cross-check them against the independently evaluated conditions.

    Each equivalence is asserted in both directions when the enumerated
    class spans the full rank 2**n - 1 (its necessity direction rests on
    that span); for smaller classes only the sufficiency direction
    (condition implies representation) is asserted. Any violated assertion
    raises :class:`TheoremInconsistencyError`: the equivalences are exact
    mathematics, so a mismatch can only be an implementation bug.

    Witnesses for failed universally quantified claims are the
    lexicographically smallest counterexamples, ordering systems by their
    packed tables and times by breakpoint index.
    """
    if n != d.n:
        raise ValueError(f"n={n} does not match the distribution's n={d.n}")
    systems = enumerate_systems(n, system_class)
    flags, witnesses = _condition_witnesses(d)
    ties = flags["has_ties"]
    quality = flags["quality"]
    bps = breakpoints(d)

    state_dists = [state_distribution(d, t) for t in bps]
    survivals = [
        [_order_stat_survival_extended(d, k, t) for k in range(0, n + 2)] for t in bps
    ]

    def representation_scan(signature_of) -> tuple[bool, dict | None]:
        for phi in systems:
            sig = signature_of(phi)
            for ti, t in enumerate(bps):
                lhs = sum(
                    (sig[k - 1] * survivals[ti][k] for k in range(1, n + 1)),
                    Fraction(0),
                )
                rhs = sum(
                    (
                        p
                        for index, p in enumerate(state_dists[ti].probs)
                        if p and phi.value(index)
                    ),
                    Fraction(0),
                )
                if lhs != rhs:
                    witness = {
                        "system": system_to_json(phi),
                        "t": format_rational(t),
                        "representation": format_rational(lhs),
                        "reliability": format_rational(rhs),
                    }
                    return False, witness
        return True, None

    boland_all, boland_wit = representation_scan(boland_signature)
    if boland_wit is not None:
        witnesses["boland_repr"] = boland_wit

    prob_all: bool | None = None
    agree_all: bool | None = None
    if not ties:
        prob_all, prob_wit = representation_scan(
            lambda phi: probability_signature(phi, quality)
        )
        if prob_wit is not None:
            witnesses["prob_repr"] = prob_wit
        agree_all = True
        for phi in systems:
            design = boland_signature(phi)
            probability = probability_signature(phi, quality)
            if design != probability:
                agree_all = False
                witnesses["signature_agreement"] = {
                    "system": system_to_json(phi),
                    "boland": design.as_strings(),
                    "probability": probability.as_strings(),
                }
                break

    class_rank = _class_rank(n, system_class)
    full_rank = class_rank == (1 << n) - 1
    relation = "iff" if full_rank else "if"

    checks = [
        TheoremCheck(
            "boland_repr_iff_states_exchangeable",
            relation,
            boland_all,
            flags["states_exchangeable_everywhere"],
        )
    ]
    both: bool | None = None
    if not ties:
        assert prob_all is not None and agree_all is not None
        both = boland_all and prob_all
        checks.append(
            TheoremCheck(
                "prob_repr_iff_condition_q",
                relation,
                prob_all,
                flags["condition_q_everywhere"],
            )
        )
        checks.append(
            TheoremCheck(
                "signatures_agree_iff_q_symmetric",
                relation,
                agree_all,
                flags["q_symmetric"],
            )
        )
        checks.append(
            TheoremCheck(
                "both_reprs_iff_agreement_and_state_exchangeability",
                relation,
                both,
                agree_all and flags["states_exchangeable_everywhere"],
            )
        )
        checks.append(
            TheoremCheck(
                "both_reprs_iff_q_symmetry_and_state_exchangeability",
                relation,
                both,
                flags["q_symmetric"] and flags["states_exchangeable_everywhere"],
            )
        )

    broken = [c for c in checks if not c.consistent]
    if broken:
        details = "; ".join(
            f"{c.name}: lhs={c.lhs}, rhs={c.rhs} ({c.relation})" for c in broken
        )
        raise TheoremInconsistencyError(
            f"independently computed sides disagree: {details}"
        )

    return DiagnosisReport(
        mode="verified",
        n=n,
        breakpoints=bps,
        has_ties=ties,
        q_symmetric=flags["q_symmetric"],
        states_exchangeable_everywhere=flags["states_exchangeable_everywhere"],
        lifetimes_exchangeable=flags["lifetimes_exchangeable"],
        weakly_exchangeable=flags["weakly_exchangeable"],
        condition_q_everywhere=flags["condition_q_everywhere"],
        boland_repr_all_systems=boland_all,
        prob_repr_all_systems=prob_all,
        both_representations=both,
        witnesses=witnesses,
        skipped_orderings=flags["skipped_orderings"],
        system_class=system_class,
        systems_checked=len(systems),
        class_rank=class_rank,
        theorem_checks=tuple(checks),
    )
