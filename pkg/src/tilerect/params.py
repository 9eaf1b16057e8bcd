"""Counter parameters for the k x N thin-rectangle construction."""

from __future__ import annotations

from dataclasses import dataclass

MIN_HEIGHT = 49


class ParamError(ValueError):
    pass


def iroot_ceil(a: int, d: int) -> int:
    """Smallest integer x >= 0 with x**d >= a (exact, no floating point)."""
    if a < 0 or d < 1:
        raise ValueError("iroot_ceil needs a >= 0 and d >= 1")
    if a <= 1:
        return a
    lo, hi = 1, 1
    while hi**d < a:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**d >= a:
            hi = mid
        else:
            lo = mid + 1
    return lo


def ceil_log2(m: int) -> int:
    """Exact ceil(log2(m)) for m >= 1."""
    if m < 1:
        raise ValueError("ceil_log2 needs m >= 1")
    return (m - 1).bit_length()


@dataclass(frozen=True)
class ConstructionParams:
    k: int
    N: int
    d: int
    m: int
    l: int
    s: int
    c: int
    r: int

    @property
    def row_height(self) -> int:
        return 3 * self.l + 2

    @property
    def seed_height(self) -> int:
        return 3 * self.l + 1

    @property
    def rows(self) -> int:
        """Number of counter rows n = m^d - s."""
        return self.m**self.d - self.s

    @property
    def counter_height(self) -> int:
        """Height h of the construction before the roof adds r rows."""
        return self.rows * self.row_height + self.seed_height

    def as_tuple(self) -> tuple:
        return (self.d, self.m, self.l, self.s, self.c, self.r)


def compute_params(k: int, N: int) -> ConstructionParams:
    if k < 3:
        raise ParamError("width too small for one digit column")
    if N < MIN_HEIGHT:
        raise ParamError("height below construction minimum")
    d = k // 3
    # ceil((N/5)^(1/d)) is the least m with m^d >= N/5, i.e. m^d >= ceil(N/5)
    m = iroot_ceil(-(-N // 5), d)
    assert m >= 2, "base 1 cannot occur for N >= 6"
    l = ceil_log2(m) + 1
    H = 3 * l + 2
    s = m**d - (N - 3 * l - 1) // H
    c = k % 3
    r = (N + 1) % H
    assert 0 <= s < m**d, "start value out of range"
    assert 6 * l + 3 <= N <= m**d * H + 3 * l + 1
    return ConstructionParams(k, N, d, m, l, s, c, r)
