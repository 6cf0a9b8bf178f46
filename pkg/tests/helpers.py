"""Independent oracles used by the tests.

Everything here is deliberately written against different data structures
and search orders than the package code: pairwise attack scans instead of
permutation residue sets, direct pair-cover search for triple systems,
row-permutation enumeration for Sudoku grids.
"""

from __future__ import annotations

from itertools import combinations, permutations


def naive_classical_valid(p) -> bool:
    """O(n^2) pairwise attack scan on the bounded board."""
    n = len(p)
    for y1 in range(n):
        for y2 in range(y1 + 1, n):
            if p[y1] == p[y2]:
                return False
            if abs(p[y1] - p[y2]) == abs(y1 - y2):
                return False
    return True


def naive_toroidal_valid(p) -> bool:
    """O(n^2) pairwise attack scan with wrap-around diagonals."""
    n = len(p)
    for y1 in range(n):
        for y2 in range(y1 + 1, n):
            if p[y1] == p[y2]:
                return False
            if (p[y1] + y1) % n == (p[y2] + y2) % n:
                return False
            if (p[y1] - y1) % n == (p[y2] - y2) % n:
                return False
    return True


def brute_force_diagonal_exposure(n: int, i: int, j: int) -> int:
    """Count squares sharing a diagonal with (i, j) by direct scan."""
    count = 0
    for i2 in range(n):
        for j2 in range(n):
            if (i2, j2) == (i, j):
                continue
            if i2 + j2 == i + j or i2 - j2 == i - j:
                count += 1
    return count


def independent_transversal_count(latin) -> int:
    """Transversals of a Latin square by filtering all permutations."""
    n = len(latin)
    count = 0
    for perm in permutations(range(n)):
        symbols = {latin[i][perm[i]] for i in range(n)}
        if len(symbols) == n:
            count += 1
    return count


def independent_sts_count(n: int) -> int:
    """Triple systems on n points covering every pair exactly once,
    counted by backtracking directly over point pairs."""
    pairs = list(combinations(range(n), 2))
    pair_index = {pair: i for i, pair in enumerate(pairs)}
    triple_masks = []
    for triple in combinations(range(n), 3):
        mask = 0
        for pair in combinations(triple, 2):
            mask |= 1 << pair_index[pair]
        triple_masks.append(mask)
    full = (1 << len(pairs)) - 1

    def rec(covered: int) -> int:
        if covered == full:
            return 1
        free = full & ~covered
        lowest = (free & -free).bit_length() - 1
        total = 0
        for mask in triple_masks:
            if (mask >> lowest) & 1 and not (mask & covered):
                total += rec(covered | mask)
        return total

    return rec(0)


def independent_sudoku_count(b: int) -> int:
    """Completed order-b^2 Sudoku grids, enumerated row by row over
    permutations with column and box pruning."""
    n = b * b
    rows: list[tuple[int, ...]] = []
    count = 0

    def consistent(candidate: tuple[int, ...]) -> bool:
        for c in range(n):
            for prev in rows:
                if prev[c] == candidate[c]:
                    return False
        box_row = (len(rows) // b) * b
        for box_col in range(0, n, b):
            seen = set()
            for prev in rows[box_row:]:
                seen.update(prev[box_col : box_col + b])
            for cc in range(box_col, box_col + b):
                if candidate[cc] in seen:
                    return False
                seen.add(candidate[cc])
        return True

    def rec() -> None:
        nonlocal count
        if len(rows) == n:
            count += 1
            return
        for perm in permutations(range(n)):
            if consistent(perm):
                rows.append(perm)
                rec()
                rows.pop()

    rec()
    return count


# Diagonal exposure grid for the 5x5 board: (n-3) + 2 * ring depth.
EXPOSURE_5 = [
    [4, 4, 4, 4, 4],
    [4, 6, 6, 6, 4],
    [4, 6, 8, 6, 4],
    [4, 6, 6, 6, 4],
    [4, 4, 4, 4, 4],
]
