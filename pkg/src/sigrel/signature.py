"""Signatures of monotone systems via level averages of the structure function.

The k-th level average of phi is its mean over all state vectors with
exactly k working components. Differencing consecutive level averages from
the top yields the design signature (s_k is the probability, under a
uniformly random failure order, that the k-th component failure brings the
system down). Replacing the uniform level average by an arbitrary weighting
of the state vectors yields weighted level sums and, with the weights taken
from a relative quality function, the probability signature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator

from .errors import TiesError
from .rationals import format_rational
from .structure import StructureFunction, level_indices

if TYPE_CHECKING:  # pragma: no cover
    from .distribution import QualityFunction

__all__ = [
    "Signature",
    "WeightFunction",
    "boland_signature",
    "phi_level",
    "probability_signature",
    "signatures_agree",
    "weighted_phi_level",
]


@dataclass(frozen=True)
class Signature:
    """A vector of n rational entries, index k for the k-th order statistic.

    Entries produced by :func:`boland_signature` are guaranteed nonnegative
    and sum to 1. :func:`probability_signature` always sums to 1 but its
    entries are only guaranteed to be probabilities when the quality
    function comes from an actual no-ties distribution; the container itself
    therefore does not police ranges.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(Fraction(v) for v in self.values)
        if not coerced:
            raise ValueError("a signature needs at least one entry")
        object.__setattr__(self, "values", coerced)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def as_strings(self) -> tuple[str, ...]:
        return tuple(format_rational(v) for v in self.values)


@dataclass(frozen=True)
class WeightFunction:
    """A rational weight for every packed state index of an n-component system."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("weight functions need n >= 1")
        coerced = tuple(Fraction(v) for v in self.values)
        if len(coerced) != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} weights for n={self.n}, got {len(coerced)}"
            )
        object.__setattr__(self, "values", coerced)

    @classmethod
    def symmetric(cls, n: int) -> "WeightFunction":
        """Level-uniform weights 1 / C(n, |x|); weighted sums become level averages."""
        values = [
            Fraction(1, math.comb(n, mask.bit_count())) for mask in range(1 << n)
        ]
        return cls(n, tuple(values))

    @classmethod
    def from_quality(cls, quality: "QualityFunction") -> "WeightFunction":
        """Read a relative quality function as weights on state vectors.

        A state vector is identified with the subset of its working
        components, so the packed encodings coincide.
        """
        return cls(quality.n, tuple(quality.values))

    def level_sums(self) -> tuple[Fraction, ...]:
        """Total weight per number of working components, k = 0..n."""
        return tuple(
            sum((self.values[i] for i in level_indices(self.n, k)), Fraction(0))
            for k in range(self.n + 1)
        )


def phi_level(phi: StructureFunction, k: int) -> Fraction:
    """Mean of ``phi`` over the C(n, k) state vectors with k working components."""
    if not 0 <= k <= phi.n:
        raise ValueError(f"level {k} out of range 0..{phi.n}")
    total = sum(phi.value(i) for i in level_indices(phi.n, k))
    return Fraction(total, math.comb(phi.n, k))


def boland_signature(phi: StructureFunction) -> Signature:
    """Design signature of a semicoherent system.

    Entry k is the drop in the level average between n - k + 1 and n - k
    working components; the boundary values 0 and 1 make the entries
    telescope to exactly 1.
    """
    if not phi.semicoherent:
        raise ValueError(
            "signature needs value 0 at the all-failed state and 1 at the "
            "all-working state"
        )
    levels = [phi_level(phi, k) for k in range(phi.n + 1)]
    return Signature(
        tuple(levels[phi.n - k + 1] - levels[phi.n - k] for k in range(1, phi.n + 1))
    )


def weighted_phi_level(phi: StructureFunction, w: WeightFunction, k: int) -> Fraction:
    """Weighted sum of ``phi`` over the level-k state vectors.

    The value at k = 0 is 0 by convention (not w(0) * phi(0)), which makes
    signature entries telescope cleanly for any weights.
    """
    if w.n != phi.n:
        raise ValueError("weight function and system disagree on component count")
    if not 0 <= k <= phi.n:
        raise ValueError(f"level {k} out of range 0..{phi.n}")
    if k == 0:
        return Fraction(0)
    return sum(
        (w.values[i] * phi.value(i) for i in level_indices(phi.n, k)), Fraction(0)
    )


def probability_signature(
    phi: StructureFunction, quality: "QualityFunction"
) -> Signature:
    """Signature with levels weighted by a relative quality function.

    For a quality function derived from a no-ties distribution, entry k is
    the probability that the system lifetime equals the k-th smallest
    component lifetime. The entries always sum to exactly 1 because the
    quality of the full component set is 1 by convention.
    """
    if quality.from_tied:
        raise TiesError(
            "probability signature is undefined for distributions with tied lifetimes"
        )
    if quality.n != phi.n:
        raise ValueError("quality function and system disagree on component count")
    w = WeightFunction.from_quality(quality)
    n = phi.n
    return Signature(
        tuple(
            weighted_phi_level(phi, w, n - k + 1) - weighted_phi_level(phi, w, n - k)
            for k in range(1, n + 1)
        )
    )


def signatures_agree(phi: StructureFunction, quality: "QualityFunction") -> bool:
    """Exact equality of the design and probability signatures of ``phi``."""
    return probability_signature(phi, quality) == boland_signature(phi)
