"""Board representation and validity checking for n-queens placements.

A configuration stores one queen per row as a permutation ``p`` with
``p[y] = x`` meaning a queen on square ``(x, y)``; all coordinates are
residues ``0 .. n-1``.  On the toroidal board the two diagonal families
are the residue classes of ``x + y`` and ``x - y`` mod n, so a placement
is a toroidal solution exactly when both families are hit once each.
On the classical board the same differences are taken over the integers.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidConfigError

CONSTRAINT_KINDS = ("row", "column", "plus-diagonal", "minus-diagonal")


class Square(NamedTuple):
    """A board square; compares lexicographically by (x, y)."""

    x: int
    y: int


class Violation(NamedTuple):
    """One over-occupied constraint line: kind, line index, queens on it."""

    kind: str
    index: int
    multiplicity: int


@dataclass(frozen=True)
class ValidityReport:
    is_valid: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class QueensConfig:
    """A placement of n queens, one per row, as a column permutation.

    Structural invariants (length, range, permutation) are enforced at
    construction; validators below assume them and only ever report
    diagonal violations.
    """

    n: int
    p: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConfigError(f"field 'n': must be >= 1, got {self.n}")
        object.__setattr__(self, "p", tuple(self.p))
        if len(self.p) != self.n:
            raise InvalidConfigError(
                f"field 'p': expected length {self.n}, got {len(self.p)}"
            )
        for y, x in enumerate(self.p):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidConfigError(f"field 'p': entry at index {y} is not an integer")
            if not 0 <= x < self.n:
                raise InvalidConfigError(
                    f"field 'p': entry {x} at index {y} out of range 0..{self.n - 1}"
                )
        if len(set(self.p)) != self.n:
            raise InvalidConfigError("field 'p': not a permutation (repeated column)")

    def squares(self) -> tuple[Square, ...]:
        return tuple(Square(x, y) for y, x in enumerate(self.p))

    def occupied(self, square: Square) -> bool:
        x, y = square
        return 0 <= y < self.n and self.p[y] == x


def _diagonal_report(pairs: list[tuple[str, int]]) -> ValidityReport:
    counts: Counter[tuple[str, int]] = Counter(pairs)
    violations = tuple(
        Violation(kind, index, mult)
        for (kind, index), mult in sorted(counts.items())
        if mult > 1
    )
    return ValidityReport(is_valid=not violations, violations=violations)


def validate_toroidal(config: QueensConfig) -> ValidityReport:
    """Check that both wrap-around diagonal families are exactly covered.

    Rows and columns are already guaranteed by the permutation invariant,
    so only repeated residues of ``x + y`` and ``x - y`` mod n can appear
    as violations.
    """
    n = config.n
    pairs = []
    for y, x in enumerate(config.p):
        pairs.append(("plus-diagonal", (x + y) % n))
        pairs.append(("minus-diagonal", (x - y) % n))
    return _diagonal_report(pairs)


def validate_classical(config: QueensConfig) -> ValidityReport:
    """Check the classical no-two-queens-attack condition.

    Diagonal indices are taken over the integers: ``x + y`` in
    ``0 .. 2n-2`` and ``x - y`` in ``-(n-1) .. n-1``, with no wrap.
    """
    pairs = []
    for y, x in enumerate(config.p):
        pairs.append(("plus-diagonal", x + y))
        pairs.append(("minus-diagonal", x - y))
    return _diagonal_report(pairs)


def serialize(config: QueensConfig) -> str:
    """Render the config as the canonical JSON schema {"n": ..., "p": [...]}."""
    return json.dumps({"n": config.n, "p": list(config.p)}, separators=(",", ":"))


def parse(text: str) -> QueensConfig:
    """Parse the JSON schema back into a config; inverse of serialize."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InvalidConfigError("top level: expected a JSON object")
    if "n" not in raw:
        raise InvalidConfigError("field 'n': missing")
    if "p" not in raw:
        raise InvalidConfigError("field 'p': missing")
    n = raw["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidConfigError("field 'n': must be an integer")
    p = raw["p"]
    if not isinstance(p, list):
        raise InvalidConfigError("field 'p': must be an array")
    return QueensConfig(n=n, p=tuple(p))
