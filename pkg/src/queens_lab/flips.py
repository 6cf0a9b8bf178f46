"""Flip algebra over the base configuration.

A flip removes four queens of the base placement and re-adds four squares
obtained by exchanging row coordinates within two companion pairs.  For
any rows y1 != y2 the companion rows are

    y3 = (m + 1)^-1 * (m * y2 + y1)   (mod n)
    y4 = (m + 1)^-1 * (m * y1 + y2)   (mod n)

with m = 2^k, and the eight diagonal balance equations then guarantee the
result is again a toroidal solution.  The companion map is an involution
on unordered row pairs with no fixed point, so the number of distinct
flips is n(n-1)/4 and each unoccupied square belongs to the added set of
exactly one flip.  Disjoint flips (sharing no removed queen) compose
freely and the composition is reversible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

from .construction import BaseParams, build_base_config, mod_inverse
from .core import QueensConfig, Square, validate_toroidal
from .errors import (
    FlipError,
    GreedyExhaustionError,
    InternalConsistencyError,
    ReconstructionError,
)


@dataclass(frozen=True)
class Flip:
    """Four removed queens (sorted by row) and four added squares (sorted).

    Any added square determines the flip uniquely, so the lexicographic
    minimum of the added set is a stable canonical key.
    """

    removed: tuple[Square, Square, Square, Square]
    added: tuple[Square, Square, Square, Square]

    @property
    def canonical_id(self) -> Square:
        return self.added[0]

    @property
    def rows(self) -> frozenset[int]:
        return frozenset(s.y for s in self.removed)


@dataclass(frozen=True)
class FlipSet:
    """A pairwise-disjoint collection of flips, sorted by canonical id."""

    flips: tuple[Flip, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "flips", tuple(sorted(self.flips, key=lambda f: f.canonical_id))
        )
        seen: set[int] = set()
        for flip in self.flips:
            if seen & flip.rows:
                raise FlipError("flips are not pairwise disjoint")
            seen |= flip.rows

    def __iter__(self) -> Iterator[Flip]:
        return iter(self.flips)

    def __len__(self) -> int:
        return len(self.flips)

    def canonical_ids(self) -> tuple[Square, ...]:
        return tuple(f.canonical_id for f in self.flips)


def companion_pair(params: BaseParams, y1: int, y2: int) -> tuple[int, int]:
    """Companion rows (y3, y4) for the pair (y1, y2); verifies the eight
    diagonal balance equations before returning."""
    n, m = params.n, params.m
    if y1 % n == y2 % n:
        raise FlipError(f"companion pair requires distinct rows, got {y1} and {y2}")
    inv = mod_inverse(m + 1, n)
    y3 = (inv * (m * y2 + y1)) % n
    y4 = (inv * (m * y1 + y2)) % n
    _verify_balance(params, y1 % n, y2 % n, y3, y4)
    return y3, y4


def _verify_balance(params: BaseParams, y1: int, y2: int, y3: int, y4: int) -> None:
    # The eight equations say each vacated diagonal is re-covered by an
    # added square: they must hold identically, so a failure is a bug.
    n, m = params.n, params.m
    x1, x2, x3, x4 = ((m * y) % n for y in (y1, y2, y3, y4))
    equations = (
        x1 + y1 - x3 - y4,
        x2 + y2 - x4 - y3,
        x3 + y3 - x2 - y1,
        x4 + y4 - x1 - y2,
        (x3 - y3) - (x1 - y2),
        (x2 - y2) - (x3 - y4),
        (x1 - y1) - (x4 - y3),
        (x4 - y4) - (x2 - y1),
    )
    if any(e % n for e in equations) or len({y1, y2, y3, y4}) != 4:
        raise InternalConsistencyError(
            f"diagonal balance failed for rows ({y1}, {y2}, {y3}, {y4}) at n = {n}"
        )


def _flip_from_pair(params: BaseParams, y1: int, y2: int) -> Flip:
    n, m = params.n, params.m
    y3, y4 = companion_pair(params, y1, y2)
    col = {y: (m * y) % n for y in (y1, y2, y3, y4)}
    removed = tuple(
        sorted((Square(col[y], y) for y in (y1, y2, y3, y4)), key=lambda s: s.y)
    )
    added = tuple(
        sorted(
            (
                Square(col[y1], y2),
                Square(col[y2], y1),
                Square(col[y3], y4),
                Square(col[y4], y3),
            )
        )
    )
    return Flip(removed=removed, added=added)  # type: ignore[arg-type]


def flip_for_square(params: BaseParams, square: Square) -> Flip:
    """The unique flip whose added set contains the unoccupied square.

    It involves the base queens in the square's row and column: the row
    gives y2 and the column queen's row gives y1.
    """
    n, m = params.n, params.m
    x, y = square
    if not (0 <= x < n and 0 <= y < n):
        raise FlipError(f"square {tuple(square)} outside board of size {n}")
    y1 = (mod_inverse(m, n) * x) % n
    if y1 == y:
        raise FlipError(f"square {tuple(square)} is occupied in the base configuration")
    flip = _flip_from_pair(params, y1, y)
    if square not in flip.added:
        raise InternalConsistencyError(f"flip for {tuple(square)} does not add it")
    return flip


def enumerate_flips(params: BaseParams) -> list[Flip]:
    """All n(n-1)/4 flips of the base configuration, sorted by canonical id.

    Each flip arises from exactly two row pairs (a pair and its
    companion), so deduplication by canonical id halves the pair count.
    """
    n = params.n
    by_id: dict[Square, Flip] = {}
    for y1 in range(n):
        for y2 in range(y1 + 1, n):
            flip = _flip_from_pair(params, y1, y2)
            by_id.setdefault(flip.canonical_id, flip)
    flips = [by_id[key] for key in sorted(by_id)]
    if len(flips) != n * (n - 1) // 4:
        raise InternalConsistencyError(
            f"expected {n * (n - 1) // 4} flips, found {len(flips)}"
        )
    return flips


def flips_disjoint(f1: Flip, f2: Flip) -> bool:
    """True when the two flips share no removed queen."""
    return not (f1.rows & f2.rows)


def greedy_disjoint_flips(params: BaseParams, t: int, seed: int | None = None) -> FlipSet:
    """Greedily pick t pairwise-disjoint flips.

    Candidates are scanned in canonical-id order, or in a seeded uniform
    shuffle when a seed is given.  Each flip rules out at most 4(n-1)
    others, so t = floor(n/16) always succeeds; larger t may exhaust the
    pass and raises with the count achieved.
    """
    if t < 0:
        raise FlipError(f"t must be >= 0, got {t}")
    candidates = enumerate_flips(params)
    if seed is not None:
        random.Random(seed).shuffle(candidates)
    chosen: list[Flip] = []
    used: set[int] = set()
    for flip in candidates:
        if len(chosen) == t:
            break
        if not (used & flip.rows):
            chosen.append(flip)
            used |= flip.rows
    if len(chosen) < t:
        raise GreedyExhaustionError(requested=t, achieved=len(chosen))
    return FlipSet(flips=tuple(chosen))


def _require_base(base: QueensConfig) -> BaseParams:
    params = BaseParams.from_board_size(base.n)
    expected = build_base_config(params.k)
    if base.p != expected.p:
        raise FlipError("flips are defined only over the base configuration")
    return params


def apply_flips(base: QueensConfig, flip_set: FlipSet) -> QueensConfig:
    """Apply a disjoint flip set to the base configuration."""
    params = _require_base(base)
    p = list(base.p)
    for flip in flip_set:
        for square in flip.removed:
            if base.p[square.y] != square.x:
                raise FlipError(
                    f"flip removes {tuple(square)} which is not a base queen"
                )
        for x, y in flip.added:
            p[y] = x
    result = QueensConfig(n=params.n, p=tuple(p))
    if not validate_toroidal(result).is_valid:
        raise InternalConsistencyError("flip application broke toroidal validity")
    return result


def reconstruct_flips(base: QueensConfig, modified: QueensConfig) -> FlipSet:
    """Recover the unique disjoint flip set turning base into modified.

    Every displaced queen sits on an added square of exactly one flip, so
    scanning displaced rows and re-deriving each queen's flip either
    reproduces the set or proves the board unreachable.
    """
    params = _require_base(base)
    if modified.n != base.n:
        raise FlipError(f"board sizes differ: {base.n} vs {modified.n}")
    displaced = [y for y in range(base.n) if base.p[y] != modified.p[y]]
    displaced_set = set(displaced)
    consumed: set[int] = set()
    flips: dict[Square, Flip] = {}
    for y in displaced:
        if y in consumed:
            continue
        queen = Square(modified.p[y], y)
        flip = flip_for_square(params, queen)
        for x2, y2 in flip.added:
            if y2 not in displaced_set:
                raise ReconstructionError(
                    queen, f"its flip needs row {y2} displaced, but row {y2} is unchanged"
                )
            if modified.p[y2] != x2:
                raise ReconstructionError(
                    queen,
                    f"its flip places column {x2} in row {y2}, found {modified.p[y2]}",
                )
        if consumed & flip.rows:
            raise ReconstructionError(queen, "its flip overlaps an earlier flip")
        consumed |= flip.rows
        flips[flip.canonical_id] = flip
    return FlipSet(flips=tuple(flips.values()))


def lower_bound_log_count(n: int) -> float:
    """Natural log of the greedy selection count for t = floor(n/16) steps.

    The i-th pick has at least n(n-1)/4 - (i-1) * 4(n-1) candidates and
    the final tally is divided by t; all factors are positive for this t.
    Returns 0.0 when n < 16 (no steps).
    """
    if n < 1:
        raise FlipError(f"n must be >= 1, got {n}")
    t = n // 16
    if t == 0:
        return 0.0
    total = -math.log(t)
    base_count = n * (n - 1) / 4.0
    per_step = 4.0 * (n - 1)
    for i in range(1, t + 1):
        factor = base_count - (i - 1) * per_step
        if factor <= 0:
            raise InternalConsistencyError(
                f"non-positive factor at step {i} for n = {n}"
            )
        total += math.log(factor)
    return total
