"""Reconstructing succinct coverage functions from a value oracle.

The algorithm keeps a partition of 2^[m] by prefix: at level k the part of a
prefix x subseteq [k] is F(x) = {S : S & [k] = x}, and only parts of positive
total weight are kept.  Each level costs two queries per live part, so a
coverage function with n support sets is recovered with at most 2mn + 1
queries.  For comparison, any reconstruction needs Omega(mn / log n) queries
in the worst case (each answer is one of n + 1 values for unit weights).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import (
    CoverageError,
    CountingOracle,
    CoverageInstance,
    eval_instance,
    full_mask,
    popcount,
    to_elements,
    to_fraction,
)


class NegativeWeight(CoverageError):
    """A refined part came out with negative weight: the oracle is not coverage."""

    def __init__(self, prefix: int, level: int, weight: Fraction):
        self.prefix, self.level, self.weight = prefix, level, weight
        super().__init__(f"part {to_elements(prefix)} at level {level} has weight {weight}")


class SupportExceeded(CoverageError):
    def __init__(self, level: int, live: int, bound: int):
        self.level, self.live, self.bound = level, live, bound
        super().__init__(f"{live} live parts at level {level} exceed support bound {bound}")


@dataclass(frozen=True)
class PartitionNode:
    prefix: int  # subset of the first k elements, as a bit pattern
    weight: Fraction


@dataclass
class ReconstructionReport:
    instance: CoverageInstance
    queries_used: int
    levels: list[int] = field(default_factory=list)


def refine_level(
    o: CountingOracle, k: int, live: list[PartitionNode], *, predecessors: str = "subset"
) -> list[PartitionNode]:
    """Split every live level-k part on element k + 1.

    For part x the two queries F0 = f([k] - x) and F1 = f(([k] - x) + {k+1})
    give F1 - F0 = weight of {S : S & [k] subseteq x, k+1 in S}; subtracting
    the already-computed deltas of the live parts y strictly inside x leaves
    the weight of F(x + 1).  Parts are processed by popcount, then bit
    pattern, so those y always come first.

    ``predecessors="order"`` subtracts the deltas of *all* earlier parts
    instead.  That reading is wrong whenever incomparable prefixes are live;
    it exists so tests can demonstrate the difference.
    """
    if predecessors not in ("subset", "order"):
        raise ValueError(f"unknown predecessor rule {predecessors!r}")
    order = sorted(live, key=lambda node: (popcount(node.prefix), node.prefix))
    low = full_mask(k)
    new_bit = 1 << k
    deltas: list[tuple[int, Fraction]] = []
    out: list[PartitionNode] = []
    for node in order:
        x = node.prefix
        rest = low ^ x
        f0 = o(rest)
        f1 = o(rest | new_bit)
        if predecessors == "subset":
            correction = sum((d for y, d in deltas if y & x == y), Fraction(0))
        else:
            correction = sum((d for _, d in deltas), Fraction(0))
        delta = f1 - f0 - correction
        deltas.append((x, delta))
        for prefix, weight in ((x | new_bit, delta), (x, node.weight - delta)):
            if weight < 0:
                raise NegativeWeight(prefix, k + 1, weight)
            if weight > 0:
                out.append(PartitionNode(prefix, weight))
    return out


def recover(o: CountingOracle, max_support: int, *, predecessors: str = "subset") -> ReconstructionReport:
    """Recover the support {(S, w(S)) : w(S) > 0} of a coverage oracle.

    Raises SupportExceeded once more than ``max_support`` parts are live, and
    NegativeWeight from refinement; either means the oracle is not a coverage
    function with support at most ``max_support``.
    """
    if max_support < 1:
        raise ValueError("max_support must be positive")
    m = o.m
    start = o.queries_made
    total = o(full_mask(m))
    if total < 0:
        raise NegativeWeight(0, 0, total)
    live = [PartitionNode(0, total)] if total > 0 else []
    levels = [len(live)]
    try:
        for k in range(m):
            live = refine_level(o, k, live, predecessors=predecessors)
            if len(live) > max_support:
                raise SupportExceeded(k + 1, len(live), max_support)
            levels.append(len(live))
    except (NegativeWeight, SupportExceeded) as e:
        e.levels, e.queries = levels, o.queries_made - start
        raise
    inst = CoverageInstance.from_weights(m, {node.prefix: node.weight for node in live})
    return ReconstructionReport(inst, o.queries_made - start, levels)


@dataclass(frozen=True)
class Yes:
    instance: CoverageInstance
    queries: int
    samples: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class No:
    reason: str  # "negative-weight" | "support-exceeded" | "sample-mismatch"
    detail: dict
    queries: int
    samples: int

    def __bool__(self):
        return False


TestVerdict = Union[Yes, No]


def sample_count(eps: Fraction) -> int:
    return math.ceil(2 / eps)


def random_subset(rng: random.Random, m: int) -> int:
    """Uniform subset of [m]: each element present independently with probability 1/2."""
    return rng.getrandbits(m)


def test_coverage(o: CountingOracle, n: int, eps, seed: int) -> TestVerdict:
    """Tester for coverage functions with support at most ``n``.

    Coverage functions with support <= n always pass.  After a successful
    reconstruction ceil(2/eps) uniform sets are compared with the oracle,
    so a function eps-far from that class is rejected with probability at
    least 1 - (1 - eps)^(2/eps) >= 1 - e^-2.  Sampling uses
    ``random.Random(seed)`` (Mersenne Twister), ``getrandbits(m)`` per set.
    """
    eps = to_fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    start = o.queries_made
    s = sample_count(eps)
    try:
        report = recover(o, n)
    except NegativeWeight as e:
        return No("negative-weight", {"set": to_elements(e.prefix), "level": e.level, "weight": e.weight},
                  o.queries_made - start, 0)
    except SupportExceeded as e:
        return No("support-exceeded", {"level": e.level, "live": e.live, "bound": e.bound},
                  o.queries_made - start, 0)
    rng = random.Random(seed)
    for i in range(s):
        t = random_subset(rng, o.m)
        got = o(t)
        expected = eval_instance(report.instance, t)
        if got != expected:
            return No("sample-mismatch", {"set": to_elements(t), "expected": expected, "got": got},
                      o.queries_made - start, i + 1)
    return Yes(report.instance, o.queries_made - start, s)


test_coverage.__test__ = False  # keep pytest from collecting it
