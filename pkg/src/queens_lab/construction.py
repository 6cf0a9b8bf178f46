"""The explicit toroidal base configuration for board sizes n = 4^k + 1.

With m = 2^k the placement ``x = m * y (mod n)`` is a toroidal solution:
since m^2 = -1 (mod n), the three multipliers m - 1, m, m + 1 are all
units of Z_n, which makes rows, columns and both diagonal families
bijective images of y.  This holds even when n is composite (k = 3 gives
n = 65).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import QueensConfig
from .errors import InvalidConfigError, NotInvertibleError, SizeLimitError

# n = 4^8 + 1 = 65537 keeps n^2 comfortably within native indexing.
DEFAULT_MAX_K = 8

_ENV_CAP = "QUEENS_LAB_CAP"


def board_size_cap(default: int) -> int:
    """Resolve a size cap, honouring the QUEENS_LAB_CAP override."""
    raw = os.environ.get(_ENV_CAP)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise SizeLimitError(f"{_ENV_CAP} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise SizeLimitError(f"{_ENV_CAP} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class BaseParams:
    """Parameters of the base configuration: k, the board size n = 4^k + 1,
    and the row multiplier m = 2^k mod n."""

    k: int
    n: int
    m: int

    @classmethod
    def from_k(cls, k: int) -> "BaseParams":
        if k < 1:
            raise InvalidConfigError(f"k must be >= 1, got {k}")
        n = 4**k + 1
        return cls(k=k, n=n, m=pow(2, k, n))

    @classmethod
    def from_board_size(cls, n: int) -> "BaseParams":
        """Recover k from n; fails unless n - 1 is a power of 4."""
        if n < 5 or (n - 1) & (n - 2) != 0 or (n - 1).bit_length() % 2 == 0:
            raise InvalidConfigError(f"board size {n} is not of the form 4^k + 1")
        return cls.from_k(((n - 1).bit_length() - 1) // 2)


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a mod n via the extended Euclidean algorithm.

    Works for any modulus n >= 1, composite included.  Raises
    NotInvertibleError carrying the gcd when a is not a unit.
    """
    if n < 1:
        raise InvalidConfigError(f"modulus must be >= 1, got {n}")
    old_r, r = a % n, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1 and n != 1:
        raise NotInvertibleError(a, n, old_r)
    return old_s % n


def check_units(params: BaseParams) -> bool:
    """True when m - 1, m and m + 1 are all invertible mod n.

    For n = 4^k + 1 this always holds; the check exists so the algebraic
    precondition of the flip machinery can be asserted at runtime.
    """
    for a in (params.m - 1, params.m, params.m + 1):
        try:
            mod_inverse(a, params.n)
        except NotInvertibleError:
            return False
    return True


def build_base_config(k: int, max_k: int | None = None) -> QueensConfig:
    """Build the base placement p[y] = 2^k * y mod n on the n = 4^k + 1 board."""
    params = BaseParams.from_k(k)
    cap = max_k if max_k is not None else board_size_cap(4**DEFAULT_MAX_K + 1)
    if max_k is not None:
        if k > max_k:
            raise SizeLimitError(f"k = {k} exceeds cap {max_k}")
    elif params.n > cap:
        raise SizeLimitError(f"board size {params.n} exceeds cap {cap}")
    return QueensConfig(n=params.n, p=tuple((params.m * y) % params.n for y in range(params.n)))
