"""The hard instance f*: W-coefficient N on sets of size <= k, -1 above.

Its W-distance tends to 1, yet telling it apart from a coverage function
takes at least 2^k queries; 2^(k+1) suffice by reading one coefficient of
size k + 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    CoverageError,
    CountingOracle,
    DenseSetFunction,
    ResourceGuard,
    as_bits,
    check_m,
    full_mask,
    popcount,
    to_elements,
    to_fraction,
    _submasks,
)


DEFAULT_N_MAX_M = 12  # (2^12)! already has about 13,000 digits


def default_N(m: int) -> Fraction:
    """(2^m)! + 1, large enough for every small-|S| constraint to be slack."""
    if m > DEFAULT_N_MAX_M:
        raise ResourceGuard(f"default N = (2^{m})! + 1 is impractical for m > {DEFAULT_N_MAX_M}; pass N explicitly")
    return Fraction(math.factorial(1 << m) + 1)


@dataclass(frozen=True)
class FStarParams:
    m: int
    k: int
    N: Optional[Fraction] = None

    def __post_init__(self):
        check_m(self.m)
        if not 0 <= self.k < self.m:
            raise ValueError(f"need 0 <= k < m, got k={self.k}, m={self.m}")
        N = default_N(self.m) if self.N is None else to_fraction(self.N)
        if N <= 0:
            raise ValueError(f"N must be positive, got {N}")
        object.__setattr__(self, "N", N)

    def oracle(self) -> CountingOracle:
        return CountingOracle(self.m, lambda t: fstar_eval(self, t), backend="fstar")

    def table(self) -> DenseSetFunction:
        return DenseSetFunction.from_callable(self.m, lambda t: fstar_eval(self, t))


def fstar_w(p: FStarParams, S) -> Fraction:
    s = as_bits(S, p.m)
    if s == 0:
        raise ValueError("W-coefficients are defined for nonempty S only")
    return p.N if popcount(s) <= p.k else Fraction(-1)


def fstar_eval(p: FStarParams, T) -> Fraction:
    """f*(T) in closed form; depends on |T| only.

    C(m, j) - C(m - t, j) counts the size-j sets meeting a t-set T.
    """
    t = popcount(as_bits(T, p.m))
    m = p.m
    low = sum(math.comb(m, j) - math.comb(m - t, j) for j in range(1, p.k + 1))
    high = sum(math.comb(m, j) - math.comb(m - t, j) for j in range(p.k + 1, m + 1))
    return p.N * low - high


def fstar_wdistance(p: FStarParams) -> Fraction:
    negatives = sum(math.comb(p.m, j) for j in range(p.k + 1, p.m + 1))
    return Fraction(negatives, (1 << p.m) - 1)


class NotNegative(CoverageError):
    def __init__(self, S: int, value: Fraction):
        self.S, self.value = S, value
        super().__init__(f"w({to_elements(S)}) = {value} is not negative")


@dataclass(frozen=True)
class NonCoverageCertificate:
    m: int
    S: int
    entries: tuple[tuple[int, Fraction], ...]
    coefficient: Fraction

    def __len__(self):
        return len(self.entries)


def _certificate_sets(m: int, s: int) -> list[int]:
    base = full_mask(m) ^ s
    return [base | x for x in _submasks(s)]


def _alternating_sum(s: int, entries) -> Fraction:
    acc = Fraction(0)
    for t, v in entries:
        acc += v if popcount(t & s) & 1 else -v
    return acc


def extract_certificate(o: CountingOracle, S) -> NonCoverageCertificate:
    s = as_bits(S, o.m)
    if s == 0:
        raise ValueError("certificates are indexed by nonempty S")
    entries = tuple((t, o(t)) for t in _certificate_sets(o.m, s))
    value = _alternating_sum(s, entries)
    if value >= 0:
        raise NotNegative(s, value)
    return NonCoverageCertificate(o.m, s, entries, value)


def verify_certificate(c: NonCoverageCertificate) -> bool:
    if c.S == 0 or c.coefficient >= 0:
        return False
    if sorted(t for t, _ in c.entries) != sorted(_certificate_sets(c.m, c.S)):
        return False
    if len({t for t, _ in c.entries}) != len(c.entries):
        return False
    return _alternating_sum(c.S, c.entries) == c.coefficient
