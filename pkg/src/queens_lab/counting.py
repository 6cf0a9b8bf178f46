"""Exact solution counters for the classical and toroidal boards.

The fast path is a row-by-row DFS over bit masks: the classical counter
shifts its two diagonal masks between rows, the toroidal counter keeps
two fixed n-bit rings indexed by (x + y) mod n and (x - y) mod n since
wrap-around diagonals never leave scope.  A brute-force permutation
filter (oracle_count) provides an independent slow check, and
enumerate_solutions yields the actual placements in lexicographic order.

Counting splits cleanly on the first-row choice, so the optional
``threads`` argument fans subtrees out to a process pool; the total is a
commutative sum and does not depend on the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from . import core
from .construction import board_size_cap
from .core import QueensConfig
from .errors import InvalidConfigError, SizeLimitError

MODES = ("classical", "toroidal")

DEFAULT_CAP = 16
ORACLE_CAP = 10


@dataclass(frozen=True)
class CountResult:
    n: int
    mode: str
    count: int
    nodes_visited: int
    elapsed: float


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise InvalidConfigError(f"mode must be one of {MODES}, got {mode!r}")


def _check_size(n: int, cap: int) -> None:
    if n < 1:
        raise SizeLimitError(f"board size must be >= 1, got {n}")
    if n > cap:
        raise SizeLimitError(f"board size {n} exceeds cap {cap}")


def _classical_subtree(args: tuple[int, int]) -> tuple[int, int]:
    """Count completions after placing the first queen at column x0."""
    n, x0 = args
    full = (1 << n) - 1
    nodes = 0

    def rec(cols: int, d1: int, d2: int) -> int:
        nonlocal nodes
        if cols == full:
            return 1
        free = full & ~(cols | d1 | d2)
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            nodes += 1
            total += rec(cols | bit, ((d1 | bit) << 1) & full, (d2 | bit) >> 1)
        return total

    bit = 1 << x0
    count = rec(bit, (bit << 1) & full, bit >> 1)
    return count, nodes


def _toroidal_subtree(args: tuple[int, int]) -> tuple[int, int]:
    n, x0 = args
    nodes = 0

    def rec(y: int, cols: int, plus: int, minus: int) -> int:
        nonlocal nodes
        if y == n:
            return 1
        total = 0
        for x in range(n):
            xb = 1 << x
            pb = 1 << ((x + y) % n)
            mb = 1 << ((x - y) % n)
            if (cols & xb) or (plus & pb) or (minus & mb):
                continue
            nodes += 1
            total += rec(y + 1, cols | xb, plus | pb, minus | mb)
        return total

    count = rec(1, 1 << x0, 1 << (x0 % n), 1 << (x0 % n))
    return count, nodes


def _count(n: int, mode: str, threads: int) -> tuple[int, int]:
    worker = _classical_subtree if mode == "classical" else _toroidal_subtree
    tasks = [(n, x0) for x0 in range(n)]
    if threads > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, tasks))
    else:
        results = [worker(task) for task in tasks]
    count = sum(c for c, _ in results)
    # Every first-row placement is itself a visited node.
    nodes = n + sum(m for _, m in results)
    return count, nodes


def count_classical(n: int, threads: int = 1) -> CountResult:
    """Exact number of classical n-queens solutions."""
    _check_size(n, board_size_cap(DEFAULT_CAP))
    start = time.perf_counter()
    count, nodes = _count(n, "classical", threads)
    return CountResult(n, "classical", count, nodes, time.perf_counter() - start)


def count_toroidal(n: int, threads: int = 1) -> CountResult:
    """Exact number of toroidal n-queens solutions."""
    _check_size(n, board_size_cap(DEFAULT_CAP))
    start = time.perf_counter()
    count, nodes = _count(n, "toroidal", threads)
    return CountResult(n, "toroidal", count, nodes, time.perf_counter() - start)


def oracle_count(n: int, mode: str) -> CountResult:
    """Independent slow count: filter all n! permutations through the
    core validator.  Capped at n <= 10."""
    _check_mode(mode)
    _check_size(n, ORACLE_CAP)
    validator = core.validate_toroidal if mode == "toroidal" else core.validate_classical
    start = time.perf_counter()
    count = 0
    checked = 0
    for perm in permutations(range(n)):
        checked += 1
        if validator(QueensConfig(n=n, p=perm)).is_valid:
            count += 1
    return CountResult(n, mode, count, checked, time.perf_counter() - start)


def enumerate_solutions(
    n: int, mode: str, limit: int | None = None
) -> list[QueensConfig]:
    """All solutions in lexicographic order of p, optionally truncated."""
    _check_mode(mode)
    _check_size(n, board_size_cap(DEFAULT_CAP))
    if limit is not None and limit < 0:
        raise InvalidConfigError(f"limit must be >= 0, got {limit}")
    if limit == 0:
        return []
    out: list[QueensConfig] = []
    full = (1 << n) - 1
    p: list[int] = []

    if mode == "classical":

        def rec(cols: int, d1: int, d2: int) -> bool:
            if len(p) == n:
                out.append(QueensConfig(n=n, p=tuple(p)))
                return limit is not None and len(out) >= limit
            free = full & ~(cols | d1 | d2)
            for x in range(n):
                bit = 1 << x
                if free & bit:
                    p.append(x)
                    done = rec(cols | bit, ((d1 | bit) << 1) & full, (d2 | bit) >> 1)
                    p.pop()
                    if done:
                        return True
            return False

        rec(0, 0, 0)
    else:

        def rec_t(cols: int, plus: int, minus: int) -> bool:
            y = len(p)
            if y == n:
                out.append(QueensConfig(n=n, p=tuple(p)))
                return limit is not None and len(out) >= limit
            for x in range(n):
                xb = 1 << x
                pb = 1 << ((x + y) % n)
                mb = 1 << ((x - y) % n)
                if (cols & xb) or (plus & pb) or (minus & mb):
                    continue
                p.append(x)
                done = rec_t(cols | xb, plus | pb, minus | mb)
                p.pop()
                if done:
                    return True
            return False

        rec_t(0, 0, 0)
    return out
