"""Numeric identities behind the solution-count upper bounds.

Two families of checks live here.  The board-geometry side: for a fixed
classical solution, each non-queen position in a row is ruled out by 1,
2 or 3 other rows (column plus up to two diagonals), the per-row counts
(by_three, by_two, by_one) always sum to n - 1, and the diagonal-pair
total sum(2 * by_three + by_two) equals the summed diagonal exposure
D(i, j) over the queens, a quantity constant on concentric square rings
and bounded below by (5/4) n^2 - 6n.  The analytic side: quadrature
cross-checks of the closed forms appearing in the entropy-style bounds,
including the classical-board constant alpha = 3 - 2 sqrt(3/5) *
arctan(sqrt(5/3)) ~ 1.5875 in Q(n) <= (n / e^alpha)^n, against its
integral definition alpha = 1 - integral_0^1 log((5/8) x^2 + 3/8) dx.

All finite-n comparisons against actual counts are reports, never
assertions: the bounds hold asymptotically, with a vanishing-order
factor this module drops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import QueensConfig, validate_classical
from .errors import InvalidConfigError
from .quadrature import DEFAULT_TOL, QuadratureResult, integrate


@dataclass(frozen=True)
class RowProfile:
    """Counts of row positions ruled out by exactly 3, 2, or 1 other rows."""

    row: int
    by_three: int
    by_two: int
    by_one: int


def diagonal_exposure(n: int, i: int, j: int) -> int:
    """Number of squares sharing a diagonal with (i, j), excluding itself.

    Equals (n - 3) + 2 * min(i + 1, j + 1, n - i, n - j) in 0-based
    coordinates: constant on concentric square rings, growing by 2 per
    ring inward.
    """
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidConfigError(f"position ({i}, {j}) outside board of size {n}")
    return (n - 3) + 2 * min(i + 1, j + 1, n - i, n - j)


def diagonal_exposure_matrix(n: int) -> list[list[int]]:
    return [[diagonal_exposure(n, i, j) for j in range(n)] for i in range(n)]


def attack_profiles(config: QueensConfig) -> list[RowProfile]:
    """Per-row rule-out profile of a classical solution.

    A position (x, y) with x != p[y] is ruled out by the row of the queen
    in column x, plus the row of the queen on each of its two diagonals
    when occupied; that count is always 1, 2 or 3, and the queen's own
    square is the unique position ruled out by no other row.
    """
    if not validate_classical(config).is_valid:
        raise InvalidConfigError("config is not a valid classical solution")
    n = config.n
    sum_rows = {config.p[y] + y for y in range(n)}
    diff_rows = {config.p[y] - y for y in range(n)}
    profiles = []
    for y in range(n):
        by = [0, 0, 0, 0]
        for x in range(n):
            if x == config.p[y]:
                continue
            count = 1  # the queen in column x, never in row y
            if x + y in sum_rows:
                count += 1
            if x - y in diff_rows:
                count += 1
            by[count] += 1
        profiles.append(RowProfile(row=y, by_three=by[3], by_two=by[2], by_one=by[1]))
    return profiles


def concentric_sum(config: QueensConfig) -> int:
    """sum over rows of (2 * by_three + by_two).

    Counts (queen, empty square) pairs sharing a diagonal, so it also
    equals the diagonal exposure summed over the queens; tests check the
    two routes against each other.
    """
    return sum(2 * p.by_three + p.by_two for p in attack_profiles(config))


def concentric_lower_bound(n: int) -> float:
    """The ring-counting lower bound (5/4) n^2 - 6n for concentric_sum."""
    return 1.25 * n * n - 6.0 * n


def log_poly_integral(
    a: float, b: float, c: float, with_one: bool, tol: float = DEFAULT_TOL
) -> QuadratureResult:
    """integral_0^1 log((1 if with_one else 0) + a x^3 + b x^2 + c x) dx.

    Without the constant term the integrand has an integrable log
    singularity at 0, handled by the geometric-panel path.  The gap
    between the two variants is O(n^(-1/2)) when a + b + c = n - 1.
    """
    if min(a, b, c) < 0:
        raise InvalidConfigError("coefficients must be non-negative")
    if not with_one and a + b + c == 0:
        raise InvalidConfigError("integrand is identically -inf: a + b + c must be > 0")
    shift = 1.0 if with_one else 0.0

    def f(x: float) -> float:
        return math.log(shift + ((a * x + b) * x + c) * x)

    return integrate(f, 0.0, 1.0, tol=tol, singular_left=not with_one)


def classical_alpha(method: str = "closed_form", tol: float = 1e-12) -> float:
    """The classical-board bound constant, by either route.

    closed_form: 3 - 2 sqrt(3/5) arctan(sqrt(5/3)).
    quadrature:  1 - integral_0^1 log((5/8) x^2 + 3/8) dx.
    The two agree to 1e-9 and lie strictly between 1.587 and 1.588.
    """
    if method == "closed_form":
        return 3.0 - 2.0 * math.sqrt(3.0 / 5.0) * math.atan(math.sqrt(5.0 / 3.0))
    if method == "quadrature":
        result = integrate(
            lambda x: math.log(0.625 * x * x + 0.375), 0.0, 1.0, tol=tol
        )
        return 1.0 - result.value
    raise InvalidConfigError(f"method must be 'closed_form' or 'quadrature', got {method!r}")


def torus_bound_log(n: int) -> float:
    """log of the toroidal-count upper bound (n / e^3)^n, vanishing-order
    factor dropped: n (log n - 3)."""
    if n < 1:
        raise InvalidConfigError(f"n must be >= 1, got {n}")
    return n * (math.log(n) - 3.0)


def classical_bound_log(n: int) -> float:
    """log of the classical-count upper bound (n / e^alpha)^n: n (log n - alpha)."""
    if n < 1:
        raise InvalidConfigError(f"n must be >= 1, got {n}")
    return n * (math.log(n) - classical_alpha("closed_form"))


def hypergraph_integral_check(
    k: float, d: int, c_bad: float = 0.0, tol: float = DEFAULT_TOL
) -> QuadratureResult:
    """Quadrature of d * integral_0^1 x^(d-1) log(k x^(d(d-1)) + c_bad) dx.

    For c_bad = 0 the closed form is log k - (d - 1), the per-vertex term
    of the matching bound; a positive c_bad models the additive noise the
    bound absorbs into its vanishing-order factor.
    """
    if k < 1 or d < 1 or c_bad < 0:
        raise InvalidConfigError("need k >= 1, d >= 1, c_bad >= 0")
    power = d * (d - 1)

    def f(x: float) -> float:
        return x ** (d - 1) * math.log(k * x**power + c_bad)

    singular = c_bad == 0 and d >= 2
    result = integrate(f, 0.0, 1.0, tol=tol, singular_left=singular)
    return QuadratureResult(
        value=d * result.value,
        abs_error_estimate=d * result.abs_error_estimate,
        evaluations=result.evaluations,
    )
