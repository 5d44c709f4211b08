"""The W-transform of a set function and what it certifies.

For nonempty S the W-coefficient is

    w(S) = sum over T with S | T = [m] of (-1)^(|S & T| + 1) f(T)

and the transform is inverted by f(T) = sum of w(S) over S meeting T.  A set
function vanishing on the empty set is a coverage function exactly when all
of its W-coefficients are non-negative; the positive ones are the universe.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import (
    CountingOracle,
    CoverageInstance,
    DenseSetFunction,
    DENSE_MAX_M,
    NotNormalized,
    as_bits,
    check_m,
    full_mask,
    popcount,
    _submasks,
)


@dataclass(frozen=True)
class WCoefficients:
    """W-coefficients indexed by bit pattern; slot 0 (the empty set) is unused and 0."""

    m: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        check_m(self.m)
        if len(self.values) != 1 << self.m:
            raise ValueError(f"expected {1 << self.m} slots, got {len(self.values)}")
        if self.values[0] != 0:
            raise ValueError("the empty set carries no W-coefficient")

    @classmethod
    def from_mapping(cls, m: int, coeffs: dict, *, max_m: int = DENSE_MAX_M) -> "WCoefficients":
        check_m(m, max_m)
        values = [Fraction(0)] * (1 << m)
        for s, v in coeffs.items():
            s = as_bits(s, m)
            if s == 0:
                raise ValueError("the empty set carries no W-coefficient")
            values[s] = Fraction(v)
        return cls(m, tuple(values))

    def __getitem__(self, S) -> Fraction:
        return self.values[as_bits(S, self.m)]

    def items(self):
        return ((s, self.values[s]) for s in range(1, 1 << self.m))

    def support(self) -> list[int]:
        return [s for s, v in self.items() if v > 0]

    def negatives(self) -> list[int]:
        return [s for s, v in self.items() if v < 0]


def forward(f: DenseSetFunction, *, method: str = "direct") -> WCoefficients:
    """W-coefficients of ``f``.

    ``method="direct"`` expands the defining sum per S over T = comp(S) | X,
    X subseteq S (3^m terms overall).  ``method="moebius"`` uses the identity
    w(S) = -sum_{Z subseteq S} (-1)^{|S|-|Z|} f([m] - Z), evaluated with an
    in-place Moebius transform in m * 2^m steps.
    """
    if f.values[0] != 0:
        raise NotNormalized("W-transform requires f(emptyset) = 0")
    m = f.m
    full = full_mask(m)
    vals = f.values
    if method == "direct":
        out = [Fraction(0)] * (1 << m)
        for s in range(1, 1 << m):
            base = full ^ s
            acc = Fraction(0)
            for x in _submasks(s):
                if popcount(x) & 1:
                    acc += vals[base | x]
                else:
                    acc -= vals[base | x]
            out[s] = acc
    elif method == "moebius":
        h = [vals[full ^ z] for z in range(1 << m)]
        for i in range(m):
            bit = 1 << i
            for z in range(1 << m):
                if z & bit:
                    h[z] -= h[z ^ bit]
        out = [-v for v in h]
        out[0] = Fraction(0)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WCoefficients(m, tuple(out))


def inverse(w: WCoefficients) -> DenseSetFunction:
    """f(T) = total - (sum of w over nonempty subsets of the complement of T)."""
    m = w.m
    full = full_mask(m)
    z = list(w.values)
    for i in range(m):
        bit = 1 << i
        for y in range(1 << m):
            if y & bit:
                z[y] += z[y ^ bit]
    total = z[full]
    return DenseSetFunction(m, tuple(total - z[full ^ t] for t in range(1 << m)))


@dataclass(frozen=True)
class Coverage:
    instance: CoverageInstance

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotCoverage:
    S: int
    value: Fraction

    def __bool__(self):
        return False


Verdict = Union[Coverage, NotCoverage]


def coverage_verdict(w: WCoefficients) -> Verdict:
    for s, v in w.items():
        if v < 0:
            return NotCoverage(s, v)
    return Coverage(CoverageInstance.from_weights(w.m, {s: v for s, v in w.items() if v > 0}))


def is_coverage(f: DenseSetFunction) -> Verdict:
    """``Coverage(instance)`` with the support as universe, or the least negative witness.

    Witnesses are ordered by bit pattern, so the reported S is the first
    negative coefficient in that order.
    """
    return coverage_verdict(forward(f, method="moebius"))


def probe_coefficient(o: CountingOracle, S) -> Fraction:
    """w(S) from the 2^|S| oracle values f(comp(S) | X), X subseteq S."""
    s = as_bits(S, o.m)
    if s == 0:
        raise ValueError("W-coefficients are defined for nonempty S only")
    base = full_mask(o.m) ^ s
    acc = Fraction(0)
    for x in _submasks(s):
        v = o(base | x)
        acc += v if popcount(x) & 1 else -v
    return acc


def w_distance(w: WCoefficients) -> Fraction:
    """Fraction of the 2^m - 1 coefficients that are negative."""
    return Fraction(len(w.negatives()), (1 << w.m) - 1)
