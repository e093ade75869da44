"""Monotone binary structure functions: construction, enumeration, bases.

A structure function maps a vector of n component states (1 = working,
0 = failed) to a system state in {0, 1}. Truth tables are packed into a
single integer: a state vector is encoded as the index whose bit i - 1 is
the state of component i (component 1 is the least significant bit), and
bit j of ``table`` is the system state at index j. Index 0 is the
all-failed state, index 2**n - 1 the all-working state.

Classification vocabulary used throughout:

* monotone: never decreases when a component is repaired (enforced for
  every constructed function),
* semicoherent: monotone with value 0 at the all-failed state and 1 at the
  all-working state,
* coherent: monotone with every component essential, n >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import EnumerationBoundError, NonMonotoneError

__all__ = [
    "ENUMERATION_LIMIT",
    "StructureFunction",
    "SystemClass",
    "appendix_basis",
    "enumerate_systems",
    "evaluate",
    "from_path_sets",
    "from_truth_table",
    "k_out_of_n",
    "level_indices",
    "rank_over_rationals",
    "system_from_json",
    "system_to_json",
]

# Enumeration is exhaustive over all monotone functions, whose number grows
# like the Dedekind sequence; five components (7581 functions) is the last
# size that stays trivially cheap.
ENUMERATION_LIMIT = 5


class SystemClass(Enum):
    """Family of systems an enumeration or basis construction ranges over."""

    COHERENT = "coherent"
    SEMICOHERENT = "semicoherent"

    @property
    def min_components(self) -> int:
        """Smallest admissible number of components (3 coherent, 2 otherwise)."""
        return 3 if self is SystemClass.COHERENT else 2


@lru_cache(maxsize=None)
def _low_side_mask(n: int, var: int) -> int:
    """Bitmask over all 2**n indices selecting those where component ``var`` is failed."""
    block = 1 << var
    segment = (1 << block) - 1
    mask = 0
    for start in range(0, 1 << n, block << 1):
        mask |= segment << start
    return mask


def _monotonicity_witness(n: int, table: int) -> tuple[int, int] | None:
    """First covering pair (j, j | bit) where the table decreases, else None.

    Checking single-bit repairs suffices: a function is monotone iff it is
    monotone along every coordinate.
    """
    for var in range(n):
        step = 1 << var
        bad = table & ~(table >> step) & _low_side_mask(n, var)
        if bad:
            low = (bad & -bad).bit_length() - 1
            return low, low | step
    return None


@lru_cache(maxsize=None)
def level_indices(n: int, k: int) -> tuple[int, ...]:
    """All table indices whose state vector has exactly k working components."""
    if not 0 <= k <= n:
        raise ValueError(f"level {k} out of range for n={n}")
    return tuple(
        sorted(sum(1 << b for b in combo) for combo in combinations(range(n), k))
    )


@dataclass(frozen=True)
class StructureFunction:
    """An n-component monotone structure function backed by a packed truth table.

    Construction rejects non-monotone tables (see :class:`NonMonotoneError`)
    and eagerly computes the classification flags, so instances are always
    monotone and the flags can be trusted without re-checking.
    """

    n: int
    table: int
    semicoherent: bool = field(init=False, compare=False)
    coherent: bool = field(init=False, compare=False)
    essential: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"need at least 2 components, got n={self.n!r}")
        size = 1 << self.n
        if not isinstance(self.table, int) or not 0 <= self.table < (1 << size):
            raise ValueError("truth table must pack exactly 2**n binary entries")
        witness = _monotonicity_witness(self.n, self.table)
        if witness is not None:
            raise NonMonotoneError(*witness)
        essential = tuple(
            var + 1
            for var in range(self.n)
            if (self.table ^ (self.table >> (1 << var))) & _low_side_mask(self.n, var)
        )
        object.__setattr__(self, "essential", essential)
        semi = not (self.table & 1) and bool((self.table >> (size - 1)) & 1)
        object.__setattr__(self, "semicoherent", semi)
        object.__setattr__(
            self, "coherent", self.n >= 3 and len(essential) == self.n
        )

    def value(self, index: int) -> int:
        """System state at a packed state index."""
        if not 0 <= index < (1 << self.n):
            raise ValueError(f"state index {index} out of range")
        return (self.table >> index) & 1

    def __call__(self, states: Sequence[int]) -> int:
        return evaluate(self, states)

    def bits(self) -> str:
        """Truth table as a string of '0'/'1', index 0 first."""
        return "".join(str((self.table >> j) & 1) for j in range(1 << self.n))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"StructureFunction(n={self.n}, bits={self.bits()!r})"


def from_truth_table(n: int, bits: Sequence[int] | str) -> StructureFunction:
    """Build a structure function from its 2**n table entries, index 0 first."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"component count must be an integer, got {n!r}")
    if len(bits) != 1 << n:
        raise ValueError(f"expected {1 << n} table entries for n={n}, got {len(bits)}")
    table = 0
    for j, entry in enumerate(bits):
        if isinstance(entry, str):
            if entry not in ("0", "1"):
                raise ValueError(f"table entry {entry!r} at index {j} is not 0 or 1")
            bit = int(entry)
        elif entry in (0, 1):
            bit = int(entry)
        else:
            raise ValueError(f"table entry {entry!r} at index {j} is not 0 or 1")
        table |= bit << j
    return StructureFunction(n, table)


def from_path_sets(n: int, paths: Iterable[Iterable[int]]) -> StructureFunction:
    """System that works iff every component of some path works.

    ``paths`` holds 1-based component subsets. At least one path is
    required and each path must be a nonempty subset of 1..n.
    """
    masks = []
    for path in paths:
        members = list(path)
        if not members:
            raise ValueError("paths must be nonempty")
        mask = 0
        for comp in members:
            if not isinstance(comp, int) or isinstance(comp, bool) or not 1 <= comp <= n:
                raise ValueError(f"path component {comp!r} out of range 1..{n}")
            mask |= 1 << (comp - 1)
        masks.append(mask)
    if not masks:
        raise ValueError("at least one path is required")
    table = 0
    for j in range(1 << n):
        if any(j & mask == mask for mask in masks):
            table |= 1 << j
    return StructureFunction(n, table)


def k_out_of_n(n: int, k: int) -> StructureFunction:
    """Order-statistic system: works iff at least n - k + 1 components work.

    Its lifetime is the k-th smallest component lifetime, so k = 1 is the
    series system and k = n the parallel system.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    threshold = n - k + 1
    table = 0
    for j in range(1 << n):
        if j.bit_count() >= threshold:
            table |= 1 << j
    return StructureFunction(n, table)


def evaluate(phi: StructureFunction, states: Sequence[int]) -> int:
    """Apply ``phi`` to a component state vector (component 1 first)."""
    if len(states) != phi.n:
        raise ValueError(f"expected {phi.n} component states, got {len(states)}")
    index = 0
    for i, state in enumerate(states):
        if state not in (0, 1):
            raise ValueError(f"component state {state!r} is not 0 or 1")
        index |= int(state) << i
    return phi.value(index)


@lru_cache(maxsize=None)
def _monotone_tables(n: int) -> tuple[int, ...]:
    """All monotone truth tables on n components, ascending as integers.

    Built by doubling: a table on k components is a pair (g, h) of monotone
    tables on k - 1 components with g <= h pointwise, where g is the slice
    with component k failed and h the slice with it working.
    """
    tables: tuple[int, ...] = (0, 1)
    for k in range(1, n + 1):
        shift = 1 << (k - 1)
        merged = [
            g | (h << shift)
            for g in tables
            for h in tables
            if g & ~h == 0
        ]
        tables = tuple(sorted(merged))
    return tables


@lru_cache(maxsize=None)
def enumerate_systems(
    n: int, system_class: SystemClass
) -> tuple[StructureFunction, ...]:
    """Every system of the class on n components, tables ascending as integers.

    Both classes range over monotone functions in which every component is
    essential (which forces the boundary values 0 and 1); COHERENT requires
    n >= 3 while SEMICOHERENT also admits n = 2, where the only two such
    systems are the series and parallel pair.
    """
    if not isinstance(system_class, SystemClass):
        raise ValueError(f"unknown system class {system_class!r}")
    if n < system_class.min_components:
        raise ValueError(
            f"{system_class.value} systems need at least "
            f"{system_class.min_components} components, got n={n}"
        )
    if n > ENUMERATION_LIMIT:
        raise EnumerationBoundError(
            f"enumeration supports n <= {ENUMERATION_LIMIT}, got n={n}"
        )
    out = []
    for table in _monotone_tables(n):
        phi = StructureFunction(n, table)
        if len(phi.essential) == n:
            out.append(phi)
    return tuple(out)


def _monomial_table(n: int, subset: int) -> int:
    """Table of the indicator that every component in ``subset`` works."""
    table = 0
    for j in range(1 << n):
        if j & subset == subset:
            table |= 1 << j
    return table


def _pairing_map(n: int) -> dict[int, int]:
    """Fixed-point-free pairing of components used by the coherent basis.

    All cycles have odd length, which is what keeps the resulting family
    linearly independent; n = 4 uses a special non-bijective map because no
    fixed-point-free permutation of 4 elements has only odd cycles.
    """
    if n % 2 == 1:
        return {k: k % n + 1 for k in range(1, n + 1)}
    if n == 4:
        return {1: 2, 2: 3, 3: 4, 4: 2}
    mapping = {1: 2, 2: 3, 3: 1}
    for k in range(4, n + 1):
        mapping[k] = k + 1 if k < n else 4
    return mapping


def appendix_basis(n: int, system_class: SystemClass) -> list[StructureFunction]:
    """A spanning family of 2**n - 1 systems of the given class.

    SEMICOHERENT: the all-of-subset indicators for every nonempty subset.
    COHERENT: for each nonempty proper subset A, the OR of the A indicator
    with a covering (n-1)-subset indicator; the full set maps to the series
    system. The partner of an (n-1)-subset [n] \\ {k} is [n] \\ {pair(k)};
    smaller subsets take [n] minus their own maximum, which always has size
    n - 1 and always covers [n] together with A. Every coherent-basis member
    really is coherent: the two subsets jointly cover [n] and neither
    contains the other.

    Functions are returned ordered by subset bitmask.
    """
    if not isinstance(system_class, SystemClass):
        raise ValueError(f"unknown system class {system_class!r}")
    if n < system_class.min_components:
        raise ValueError(
            f"{system_class.value} basis needs at least "
            f"{system_class.min_components} components, got n={n}"
        )
    full = (1 << n) - 1
    functions = []
    if system_class is SystemClass.SEMICOHERENT:
        for subset in range(1, 1 << n):
            functions.append(StructureFunction(n, _monomial_table(n, subset)))
        return functions
    pairing = _pairing_map(n)
    for subset in range(1, 1 << n):
        if subset == full:
            table = _monomial_table(n, full)
        else:
            if subset.bit_count() <= n - 2:
                partner = full & ~(1 << (subset.bit_length() - 1))
            else:
                missing = (full & ~subset).bit_length()
                partner = full & ~(1 << (pairing[missing] - 1))
            table = _monomial_table(n, subset) | _monomial_table(n, partner)
        functions.append(StructureFunction(n, table))
    return functions


_RANK_PRIME = (1 << 31) - 1


def _rank_mod_prime(rows: list[list[int]]) -> int:
    """Row rank of an integer matrix over the field with _RANK_PRIME elements."""
    a = np.array(rows, dtype=np.int64) % _RANK_PRIME
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.nonzero(a[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, col]), _RANK_PRIME - 2, _RANK_PRIME)
        a[rank] = (a[rank] * inv) % _RANK_PRIME
        below = a[rank + 1 :, col]
        # Entries stay below the prime, so products fit comfortably in int64.
        a[rank + 1 :] = (a[rank + 1 :] - below[:, None] * a[rank][None, :]) % _RANK_PRIME
        rank += 1
    return rank


def _rank_over_q(rows: list[list[int]]) -> int:
    """Exact rank over the rationals by Fraction Gaussian elimination."""
    work = [[Fraction(v) for v in row] for row in rows]
    n_rows = len(work)
    n_cols = len(work[0])
    rank = 0
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, n_rows) if work[r][col]), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        pivot = work[rank][col]
        for r in range(rank + 1, n_rows):
            factor = work[r][col]
            if factor:
                scale = factor / pivot
                row_r = work[r]
                row_p = work[rank]
                for c in range(col, n_cols):
                    row_r[c] -= scale * row_p[c]
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank_over_rationals(functions: Iterable[StructureFunction]) -> int:
    """Exact rank over the rationals of the functions' value vectors.

    Each function contributes the length-2**n row of its table entries.
    A modular elimination provides a fast certificate: rank over a prime
    field never exceeds the rank over the rationals, so a modular result
    equal to min(rows, cols) is already exact. Anything short of that falls
    back to exact Fraction elimination.
    """
    fs = list(functions)
    if not fs:
        return 0
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise ValueError("all functions must share the same component count")
    rows = [[(f.table >> j) & 1 for j in range(1 << n)] for f in fs]
    modular = _rank_mod_prime(rows)
    if modular == min(len(rows), len(rows[0])):
        return modular
    return _rank_over_q(rows)


def system_to_json(phi: StructureFunction) -> dict:
    """System-file form of a structure function."""
    return {"n": phi.n, "kind": "truth_table", "bits": phi.bits()}


def system_from_json(obj: object) -> StructureFunction:
    """Parse the system-file form: a truth table or a list of path sets."""
    if not isinstance(obj, dict):
        raise ValueError("system file must be a JSON object")
    try:
        n = obj["n"]
        kind = obj["kind"]
    except KeyError as exc:
        raise ValueError(f"system file is missing the {exc.args[0]!r} field") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"system field 'n' must be an integer, got {n!r}")
    if kind == "truth_table":
        bits = obj.get("bits")
        if not isinstance(bits, str):
            raise ValueError("truth_table systems need a 'bits' string")
        return from_truth_table(n, bits)
    if kind == "paths":
        paths = obj.get("paths")
        if not isinstance(paths, list) or not all(isinstance(p, list) for p in paths):
            raise ValueError("paths systems need a 'paths' list of lists")
        return from_path_sets(n, paths)
    raise ValueError(f"unknown system kind {kind!r}")
