"""Exception hierarchy shared across the package.

Every domain failure raises a subclass of QueensLabError so the CLI can
map library errors to exit code 1 and keep usage errors (exit code 2)
separate.
"""

from __future__ import annotations


class QueensLabError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class InvalidConfigError(QueensLabError):
    """A board configuration or its serialized form is malformed."""

    code = "invalid-config"


class SizeLimitError(QueensLabError):
    """A requested instance exceeds the configured size cap."""

    code = "size-limit"


class NotInvertibleError(QueensLabError):
    """Modular inverse requested for a non-unit; carries the gcd."""

    code = "not-invertible"

    def __init__(self, a: int, n: int, gcd: int):
        super().__init__(f"{a} is not invertible mod {n} (gcd = {gcd})")
        self.a = a
        self.n = n
        self.gcd = gcd


class FlipError(QueensLabError):
    """A flip operation was applied outside its domain."""

    code = "flip-error"


class GreedyExhaustionError(FlipError):
    """The greedy pass ran out of disjoint flips; carries the count reached."""

    code = "greedy-exhausted"

    def __init__(self, requested: int, achieved: int):
        super().__init__(
            f"only {achieved} pairwise-disjoint flips reachable, {requested} requested"
        )
        self.requested = requested
        self.achieved = achieved


class ReconstructionError(FlipError):
    """A modified board is not reachable from the base by disjoint flips."""

    code = "reconstruction-error"

    def __init__(self, queen, message: str):
        super().__init__(f"queen at {tuple(queen)}: {message}")
        self.queen = queen


class InternalConsistencyError(QueensLabError):
    """An internal algebraic identity failed; indicates a bug, never user input."""

    code = "internal-consistency"


class InvalidHypergraphError(QueensLabError):
    """A hypergraph or constructor input violates its structural contract."""

    code = "invalid-hypergraph"


class IrregularHypergraphError(QueensLabError):
    """An operation requiring a regular uniform hypergraph got an irregular one."""

    code = "irregular-hypergraph"


class SearchBudgetError(QueensLabError):
    """An exact search exceeded its node budget; carries nodes visited."""

    code = "search-budget"

    def __init__(self, nodes_visited: int, budget: int):
        super().__init__(
            f"search exceeded node budget ({nodes_visited} nodes, budget {budget})"
        )
        self.nodes_visited = nodes_visited
        self.budget = budget


class QuadratureError(QueensLabError):
    """Requested integration tolerance unreachable within the evaluation budget."""

    code = "quadrature-error"
