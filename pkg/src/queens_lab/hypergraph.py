"""Uniform hypergraphs, combinatorial reductions, and exact perfect
matching counts.

Several exact-cover style problems reduce to counting perfect matchings
in a d-uniform k-regular hypergraph with small codegrees: toroidal
queens placements, Latin square transversals, Sudoku squares, Steiner
systems, and decompositions of the flip structure itself.  The builders
here produce those hypergraphs with labelled vertex classes, ``stats``
measures (d, k, codegrees) exactly, ``count_perfect_matchings`` runs an
exact backtracking cover, and ``entropy_bound_log`` evaluates the
matching upper bound (k / e^(d-1))^(n/d) in log form.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb, log

from .construction import BaseParams
from .errors import (
    InvalidHypergraphError,
    IrregularHypergraphError,
    SearchBudgetError,
    SizeLimitError,
)
from .flips import enumerate_flips

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_EDGE_CAP = 1_000_000


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus a duplicate-free list of sorted edges.

    Labels are optional provenance annotations (one per vertex / edge)
    attached by the builders; they carry no semantics.
    """

    num_vertices: int
    edges: tuple[tuple[int, ...], ...]
    vertex_labels: tuple[str, ...] | None = None
    edge_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.num_vertices < 0:
            raise InvalidHypergraphError(f"negative vertex count {self.num_vertices}")
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen: set[tuple[int, ...]] = set()
        for e in edges:
            if not e:
                raise InvalidHypergraphError("empty edge")
            if len(set(e)) != len(e):
                raise InvalidHypergraphError(f"edge {e} repeats a vertex")
            if e[0] < 0 or e[-1] >= self.num_vertices:
                raise InvalidHypergraphError(f"edge {e} out of vertex range")
            if e in seen:
                raise InvalidHypergraphError(f"duplicate edge {e}")
            seen.add(e)
        if self.vertex_labels is not None and len(self.vertex_labels) != self.num_vertices:
            raise InvalidHypergraphError("vertex label count mismatch")
        if self.edge_labels is not None and len(self.edge_labels) != len(edges):
            raise InvalidHypergraphError("edge label count mismatch")


@dataclass(frozen=True)
class HypergraphStats:
    num_vertices: int
    num_edges: int
    d: int | None
    is_regular: bool
    k: int | None
    max_codegree: int
    edge_sizes: tuple[int, ...]


@dataclass(frozen=True)
class BoundReport:
    """Log of the matching upper bound, with the inputs that produced it."""

    log_bound: float
    formula_name: str
    num_vertices: int
    k: int
    d: int


def build_torus_queens_hg(n: int) -> Hypergraph:
    """Toroidal board as a 4-uniform hypergraph: one vertex per row,
    column, and wrap-around diagonal of each family, one edge per square.

    Perfect matchings are exactly the toroidal solutions.  Vertex id
    layout: rows 0..n-1, columns n..2n-1, plus-diagonals 2n..3n-1,
    minus-diagonals 3n..4n-1.
    """
    if n < 1:
        raise InvalidHypergraphError(f"board size must be >= 1, got {n}")
    labels = (
        [f"row:{i}" for i in range(n)]
        + [f"col:{i}" for i in range(n)]
        + [f"diag+:{i}" for i in range(n)]
        + [f"diag-:{i}" for i in range(n)]
    )
    edges = []
    edge_labels = []
    for x in range(n):
        for y in range(n):
            edges.append((y, n + x, 2 * n + (x + y) % n, 3 * n + (x - y) % n))
            edge_labels.append(f"square:({x},{y})")
    return Hypergraph(4 * n, tuple(edges), tuple(labels), tuple(edge_labels))


def validate_latin_square(latin: list[list[int]]) -> int:
    """Check the row/column Latin property; returns the order."""
    n = len(latin)
    if n < 1:
        raise InvalidHypergraphError("Latin square must have order >= 1")
    symbols = set(range(n))
    for i, row in enumerate(latin):
        if len(row) != n:
            raise InvalidHypergraphError(f"row {i} has length {len(row)}, expected {n}")
        if set(row) != symbols:
            raise InvalidHypergraphError(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        col = [latin[i][j] for i in range(n)]
        if set(col) != symbols:
            raise InvalidHypergraphError(f"column {j} is not a permutation of 0..{n - 1}")
    return n


def cyclic_latin_square(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def build_transversal_hg(latin: list[list[int]]) -> Hypergraph:
    """Latin square as a 3-uniform hypergraph over rows, columns and
    symbols; perfect matchings are exactly the transversals."""
    n = validate_latin_square(latin)
    labels = (
        [f"row:{i}" for i in range(n)]
        + [f"col:{i}" for i in range(n)]
        + [f"sym:{i}" for i in range(n)]
    )
    edges = []
    edge_labels = []
    for i in range(n):
        for j in range(n):
            edges.append((i, n + j, 2 * n + latin[i][j]))
            edge_labels.append(f"cell:({i},{j})")
    return Hypergraph(3 * n, tuple(edges), tuple(labels), tuple(edge_labels))


def build_sudoku_hg(b: int) -> Hypergraph:
    """Order-b^2 Sudoku as a 4-uniform hypergraph.

    Vertex classes are the constraint pairs (row, column),
    (column, symbol), (row, symbol) and (box, symbol), n^2 vertices each;
    one edge per (cell, symbol) choice gives n^3 edges.  Perfect
    matchings are exactly the completed Sudoku squares.
    """
    if b < 2:
        raise InvalidHypergraphError(f"box size must be >= 2, got {b}")
    n = b * b
    nn = n * n
    labels = (
        [f"rc:({i // n},{i % n})" for i in range(nn)]
        + [f"cs:({i // n},{i % n})" for i in range(nn)]
        + [f"rs:({i // n},{i % n})" for i in range(nn)]
        + [f"bs:({i // n},{i % n})" for i in range(nn)]
    )
    edges = []
    edge_labels = []
    for r in range(n):
        for c in range(n):
            box = (r // b) * b + c // b
            for s in range(n):
                edges.append((r * n + c, nn + c * n + s, 2 * nn + r * n + s, 3 * nn + box * n + s))
                edge_labels.append(f"cell-symbol:({r},{c},{s})")
    return Hypergraph(4 * nn, tuple(edges), tuple(labels), tuple(edge_labels))


def build_steiner_aux_hg(n: int, q: int, r: int, edge_cap: int = DEFAULT_EDGE_CAP) -> Hypergraph:
    """Auxiliary hypergraph whose perfect matchings are the
    (n, q, r)-Steiner systems: r-subsets as vertices, one edge per
    q-subset bundling all its r-subsets."""
    if not 0 < r < q < n:
        raise InvalidHypergraphError(f"need 0 < r < q < n, got ({n}, {q}, {r})")
    if comb(n, r) > edge_cap or comb(n, q) > edge_cap:
        raise SizeLimitError(
            f"({n},{q},{r}) exceeds the edge cap {edge_cap}"
        )
    r_sets = list(combinations(range(n), r))
    index = {s: i for i, s in enumerate(r_sets)}
    labels = tuple("set:" + ",".join(map(str, s)) for s in r_sets)
    edges = []
    edge_labels = []
    for f in combinations(range(n), q):
        edges.append(tuple(sorted(index[s] for s in combinations(f, r))))
        edge_labels.append("set:" + ",".join(map(str, f)))
    return Hypergraph(len(r_sets), tuple(edges), labels, tuple(edge_labels))


def build_flip_hg(k: int) -> Hypergraph:
    """Flip structure of the base configuration: queens (indexed by row)
    as vertices, the removed quadruple of each flip as an edge.

    The result is 4-uniform and (n-1)-regular.  Its vertex count
    n = 4^k + 1 is never divisible by 4, so it has no perfect matching;
    it is kept as a regularity and codegree test case.
    """
    params = BaseParams.from_k(k)
    flips = enumerate_flips(params)
    labels = tuple(f"queen-row:{y}" for y in range(params.n))
    edges = tuple(tuple(sorted(f.rows)) for f in flips)
    edge_labels = tuple(
        f"flip:({f.canonical_id.x},{f.canonical_id.y})" for f in flips
    )
    return Hypergraph(params.n, edges, labels, edge_labels)


def stats(hg: Hypergraph) -> HypergraphStats:
    """Exact uniformity, regularity, degree and maximum codegree."""
    sizes = tuple(sorted({len(e) for e in hg.edges}))
    d = sizes[0] if len(sizes) == 1 else None
    degrees = [0] * hg.num_vertices
    codegree: Counter[tuple[int, int]] = Counter()
    for e in hg.edges:
        for v in e:
            degrees[v] += 1
        for pair in combinations(e, 2):
            codegree[pair] += 1
    distinct = set(degrees) if degrees else {0}
    is_regular = len(distinct) == 1
    return HypergraphStats(
        num_vertices=hg.num_vertices,
        num_edges=len(hg.edges),
        d=d,
        is_regular=is_regular,
        k=distinct.pop() if is_regular else None,
        max_codegree=max(codegree.values(), default=0),
        edge_sizes=sizes,
    )


def relabel_vertices(hg: Hypergraph, mapping: list[int]) -> Hypergraph:
    """Apply a vertex-id permutation; matching counts are invariant."""
    if sorted(mapping) != list(range(hg.num_vertices)):
        raise InvalidHypergraphError("mapping is not a permutation of the vertex ids")
    new_labels = None
    if hg.vertex_labels is not None:
        slots = [""] * hg.num_vertices
        for old, new in enumerate(mapping):
            slots[new] = hg.vertex_labels[old]
        new_labels = tuple(slots)
    return Hypergraph(
        hg.num_vertices,
        tuple(tuple(sorted(mapping[v] for v in e)) for e in hg.edges),
        new_labels,
        hg.edge_labels,
    )


def _edge_masks(hg: Hypergraph) -> list[int]:
    masks = []
    for e in hg.edges:
        m = 0
        for v in e:
            m |= 1 << v
        masks.append(m)
    return masks


def _count_cover(
    num_vertices: int, masks: list[int], start: int, budget: int
) -> tuple[int, int]:
    """Count exact covers extending the partial cover ``start``.

    Always branches on the lowest-id uncovered vertex so the search tree,
    and with it the node count, is independent of edge order.
    """
    full = (1 << num_vertices) - 1
    incident: list[list[int]] = [[] for _ in range(num_vertices)]
    for m in masks:
        mm = m
        while mm:
            bit = mm & -mm
            incident[bit.bit_length() - 1].append(m)
            mm ^= bit
    nodes = 0

    def rec(cover: int) -> int:
        nonlocal nodes
        if cover == full:
            return 1
        free = full & ~cover
        v = (free & -free).bit_length() - 1
        total = 0
        for em in incident[v]:
            if not (em & cover):
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetError(nodes_visited=nodes, budget=budget)
                total += rec(cover | em)
        return total

    return rec(start), nodes


def _pm_subtree(args: tuple[int, tuple[tuple[int, ...], ...], int, int]) -> int:
    num_vertices, edges, edge_index, budget = args
    masks = []
    for e in edges:
        m = 0
        for v in e:
            m |= 1 << v
        masks.append(m)
    count, _ = _count_cover(num_vertices, masks, masks[edge_index], budget)
    return count


def count_perfect_matchings(
    hg: Hypergraph, max_nodes: int = DEFAULT_NODE_BUDGET, threads: int = 1
) -> int:
    """Exact number of edge subsets partitioning the vertex set.

    Backtracking cover of the lowest-id uncovered vertex; raises
    SearchBudgetError once more than ``max_nodes`` edges have been tried.
    With ``threads`` > 1 the subtrees below the first branching vertex
    are counted in a process pool (each subtree gets the full budget).
    """
    if hg.num_vertices == 0:
        return 1
    masks = _edge_masks(hg)
    if threads > 1:
        first = [i for i, e in enumerate(hg.edges) if 0 in e]
        if not first:
            return 0
        tasks = [(hg.num_vertices, hg.edges, i, max_nodes) for i in first]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(_pm_subtree, tasks))
    count, _ = _count_cover(hg.num_vertices, masks, 0, max_nodes)
    return count


def entropy_bound_log(hg_stats: HypergraphStats) -> BoundReport:
    """Log of the perfect-matching upper bound (k / e^(d-1))^(n/d) for a
    d-uniform k-regular hypergraph on n vertices (vanishing-order factor
    dropped)."""
    if not hg_stats.is_regular or hg_stats.d is None:
        raise IrregularHypergraphError(
            "matching bound requires a regular uniform hypergraph"
        )
    if hg_stats.k is None or hg_stats.k < 1:
        raise IrregularHypergraphError(f"degree must be >= 1, got {hg_stats.k}")
    n, d, k = hg_stats.num_vertices, hg_stats.d, hg_stats.k
    return BoundReport(
        log_bound=(n / d) * (log(k) - (d - 1)),
        formula_name="regular-hypergraph-matching-bound",
        num_vertices=n,
        k=k,
        d=d,
    )


def to_json(hg: Hypergraph) -> str:
    """Exchange format: {"n": <vertices>, "edges": [[ids] ...]}."""
    return json.dumps(
        {"n": hg.num_vertices, "edges": [list(e) for e in hg.edges]},
        separators=(",", ":"),
    )


def from_json(text: str) -> Hypergraph:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidHypergraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict) or "n" not in raw or "edges" not in raw:
        raise InvalidHypergraphError('expected an object with "n" and "edges"')
    if not isinstance(raw["n"], int) or isinstance(raw["n"], bool):
        raise InvalidHypergraphError('field "n": must be an integer')
    if not isinstance(raw["edges"], list) or not all(
        isinstance(e, list) and all(isinstance(v, int) for v in e) for e in raw["edges"]
    ):
        raise InvalidHypergraphError('field "edges": must be an array of integer arrays')
    return Hypergraph(raw["n"], tuple(tuple(e) for e in raw["edges"]))
