"""Subsets, exact set functions, coverage instances and counted value oracles.

Subsets of the ground set [m] = {1, ..., m} are encoded as integer bit
patterns: element ``i`` lives at bit ``i - 1``.  Algorithms work on plain
``int`` masks; :class:`SubsetMask` is the validated, dimension-carrying form
used at API boundaries.  All values are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

MAX_M = 30
DENSE_MAX_M = 24


class CoverageError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(CoverageError, ValueError):
    pass


class NotNormalized(CoverageError, ValueError):
    """A set function table with f(emptyset) != 0."""


class MissingEntry(CoverageError, KeyError):
    pass


class ResourceGuard(CoverageError):
    """Ground set too large for the requested (dense) operation."""


def check_m(m: int, limit: int = MAX_M) -> int:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"ground-set size must be a positive integer, got {m!r}")
    if m > limit:
        raise ResourceGuard(f"m={m} exceeds the configured limit {limit}")
    return m


@dataclass(frozen=True, order=True)
class SubsetMask:
    bits: int
    m: int

    def __post_init__(self):
        check_m(self.m)
        if not 0 <= self.bits < (1 << self.m):
            raise DimensionMismatch(f"bit pattern {self.bits} is not a subset of [{self.m}]")

    @classmethod
    def of(cls, elements: Iterable[int], m: int) -> "SubsetMask":
        return cls(from_elements(elements, m), m)

    def elements(self) -> list[int]:
        return to_elements(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.m and bool(self.bits >> (i - 1) & 1)

    def complement(self) -> "SubsetMask":
        return SubsetMask(full_mask(self.m) ^ self.bits, self.m)


def popcount(x: int) -> int:
    return bin(x).count("1")


def full_mask(m: int) -> int:
    return (1 << m) - 1


def from_elements(elements: Iterable[int], m: int) -> int:
    bits = 0
    for i in elements:
        if not 1 <= i <= m:
            raise DimensionMismatch(f"element {i} outside ground set [{m}]")
        bits |= 1 << (i - 1)
    return bits


def to_elements(bits: int) -> list[int]:
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def as_bits(T: "int | SubsetMask", m: int) -> int:
    """Validate ``T`` against ground-set size ``m`` and return its bit pattern."""
    if isinstance(T, SubsetMask):
        if T.m != m:
            raise DimensionMismatch(f"subset over [{T.m}] used with ground set [{m}]")
        return T.bits
    if not 0 <= T < (1 << m):
        raise DimensionMismatch(f"bit pattern {T} is not a subset of [{m}]")
    return T


def enumerate_subsets(S: "int | SubsetMask") -> Iterator:
    """Yield every X subseteq S once, in ascending bit-pattern order.

    Yields ``SubsetMask`` when given one, plain ints otherwise.
    """
    if isinstance(S, SubsetMask):
        for x in _submasks(S.bits):
            yield SubsetMask(x, S.m)
    else:
        yield from _submasks(S)


def _submasks(s: int) -> Iterator[int]:
    x = 0
    while True:
        yield x
        if x == s:
            return
        x = (x - s) & s


def to_fraction(v) -> Fraction:
    """Parse ``"p/q"``, ``"n"``, ints or Fractions. Floats are rejected."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError(f"refusing inexact value {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"not a rational literal: {v!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {v!r} as a rational")


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DenseSetFunction:
    """A set function on 2^[m], stored as a list indexed by bit pattern."""

    m: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        check_m(self.m)
        if len(self.values) != 1 << self.m:
            raise ValueError(f"expected {1 << self.m} values, got {len(self.values)}")
        if self.values[0] != 0:
            raise NotNormalized(f"f(emptyset) must be 0, got {self.values[0]}")

    @classmethod
    def from_values(cls, m: int, values: Sequence, *, max_m: int = DENSE_MAX_M) -> "DenseSetFunction":
        check_m(m, max_m)
        return cls(m, tuple(to_fraction(v) for v in values))

    @classmethod
    def from_callable(cls, m: int, fn: Callable[[int], Fraction], *, max_m: int = DENSE_MAX_M):
        check_m(m, max_m)
        return cls(m, tuple(to_fraction(fn(T)) for T in range(1 << m)))

    def __call__(self, T: "int | SubsetMask") -> Fraction:
        return self.values[as_bits(T, self.m)]

    def __add__(self, other: "DenseSetFunction") -> "DenseSetFunction":
        _same_m(self, other)
        return DenseSetFunction(self.m, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "DenseSetFunction") -> "DenseSetFunction":
        _same_m(self, other)
        return DenseSetFunction(self.m, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "DenseSetFunction":
        c = to_fraction(c)
        return DenseSetFunction(self.m, tuple(c * v for v in self.values))


def _same_m(a, b):
    if a.m != b.m:
        raise DimensionMismatch(f"ground sets differ: {a.m} vs {b.m}")


@dataclass(frozen=True)
class CoverageInstance:
    """A weighted set system given by its elements' membership masks.

    An element with membership mask ``S`` belongs to ``A_i`` iff ``i in S``.
    Duplicate masks are merged by adding weights; elements come out sorted by
    mask.
    """

    m: int
    elements: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        check_m(self.m)
        merged: dict[int, Fraction] = {}
        for mask, weight in self.elements:
            mask = as_bits(mask, self.m)
            weight = to_fraction(weight)
            if mask == 0:
                raise ValueError("element with empty membership mask")
            if weight <= 0:
                raise ValueError(f"element weight must be positive, got {weight}")
            merged[mask] = merged.get(mask, Fraction(0)) + weight
        object.__setattr__(self, "elements", tuple(sorted(merged.items())))

    @classmethod
    def from_weights(cls, m: int, weights: Mapping[int, Fraction]) -> "CoverageInstance":
        return cls(m, tuple(weights.items()))

    def __len__(self) -> int:
        return len(self.elements)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.elements)

    def __call__(self, T: "int | SubsetMask") -> Fraction:
        return eval_instance(self, T)


def eval_instance(inst: CoverageInstance, T: "int | SubsetMask") -> Fraction:
    """Total weight of the elements whose membership meets ``T``."""
    t = as_bits(T, inst.m)
    return sum((w for mask, w in inst.elements if mask & t), Fraction(0))


class CountingOracle:
    """Value oracle that counts every evaluation.

    ``fn`` maps an int mask to a Fraction.  The counter is lock-protected so
    an oracle may be shared between threads.
    """

    def __init__(self, m: int, fn: Callable[[int], Fraction], *, backend: str = "callable"):
        self.m = check_m(m)
        self.backend = backend
        self._fn = fn
        self._lock = threading.Lock()
        self.queries_made = 0

    def __call__(self, T: "int | SubsetMask") -> Fraction:
        return oracle_eval(self, T)

    def reset(self) -> None:
        with self._lock:
            self.queries_made = 0

    def __repr__(self):
        return f"CountingOracle(m={self.m}, backend={self.backend!r}, queries_made={self.queries_made})"

    @classmethod
    def from_table(cls, f: DenseSetFunction) -> "CountingOracle":
        return cls(f.m, f.values.__getitem__, backend="table")

    @classmethod
    def from_instance(cls, inst: CoverageInstance) -> "CountingOracle":
        return cls(inst.m, lambda t: eval_instance(inst, t), backend="instance")

    @classmethod
    def from_mapping(cls, m: int, values: Mapping[int, Fraction]) -> "CountingOracle":
        """Possibly partial table; querying an absent set raises MissingEntry."""
        table = {as_bits(t, m): to_fraction(v) for t, v in values.items()}

        def lookup(t: int) -> Fraction:
            try:
                return table[t]
            except KeyError:
                raise MissingEntry(f"table has no value for {to_elements(t)}") from None

        return cls(m, lookup, backend="file")


def oracle_eval(o: CountingOracle, T: "int | SubsetMask") -> Fraction:
    t = as_bits(T, o.m)
    with o._lock:
        o.queries_made += 1
    return o._fn(t)


def random_instance(rng, m: int, n: int, *, max_numerator: int = 20, max_denominator: int = 5) -> CoverageInstance:
    """``n`` distinct nonempty membership masks with random positive rational weights.

    ``rng`` is a ``random.Random``; n is capped at 2^m - 1.
    """
    n = min(n, (1 << m) - 1)
    masks = rng.sample(range(1, 1 << m), n)
    return CoverageInstance(
        m,
        tuple((s, Fraction(rng.randint(1, max_numerator), rng.randint(1, max_denominator))) for s in masks),
    )
