"""Can a partial query log be completed to a coverage function?

With the logged sets J fixed, a completion exists iff there are values
f(T) >= 0 for T not in J such that, for every nonempty S,

    sum over T not in J with S | T = [m] of (-1)^(|S & T|+1) f(T)  >=  b(S),
    b(S) = sum over T in J with S | T = [m] of (-1)^|S & T| f(T).

That system is solved exactly; when it is infeasible the Farkas multipliers
alpha(S) >= 0 satisfy sum alpha(S) b(S) > 0 and g(T) <= 0 for every
unlogged T, where g(T) = sum over S with S | T = [m] of
(-1)^(|S & T|+1) alpha(S).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .adversarial import FStarParams, default_N, fstar_eval
from .core import (
    CoverageError,
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
from .lp import Row, phase_one
from .wtransform import Coverage, is_coverage

COMPLETION_MAX_M = 8


class InconsistentLog(CoverageError, ValueError):
    pass


@dataclass(frozen=True)
class QueryLog:
    m: int
    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        check_m(self.m)
        seen: dict[int, Fraction] = {}
        for t, v in self.entries:
            t = as_bits(t, self.m)
            v = to_fraction(v)
            if t in seen and seen[t] != v:
                raise InconsistentLog(f"set {to_elements(t)} logged with {seen[t]} and {v}")
            if v < 0:
                raise InconsistentLog(f"negative value {v} at {to_elements(t)}")
            if t == 0 and v != 0:
                raise InconsistentLog(f"f(emptyset) logged as {v}")
            seen[t] = v
        object.__setattr__(self, "entries", tuple(sorted(seen.items())))

    @classmethod
    def from_mapping(cls, m: int, values: Mapping) -> "QueryLog":
        return cls(m, tuple(values.items()))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def sets(self) -> set[int]:
        return {t for t, _ in self.entries}


def _complement_supersets(m: int, s: int):
    """All T with S | T = [m], i.e. T = comp(S) | X for X subseteq S."""
    base = full_mask(m) ^ s
    for x in _submasks(s):
        yield base | x


def b_value(log: QueryLog, S: int) -> Fraction:
    known = log.as_dict()
    acc = Fraction(0)
    for t in _complement_supersets(log.m, S):
        v = known.get(t)
        if v is not None:
            acc += -v if popcount(S & t) & 1 else v
    return acc


@dataclass(frozen=True)
class FarkasWitness:
    m: int
    alpha: Mapping[int, Fraction]

    def value(self, S: int) -> Fraction:
        return self.alpha.get(S, Fraction(0))

    def b(self, log: QueryLog, S: int) -> Fraction:
        return b_value(log, S)

    def g(self, T: int) -> Fraction:
        acc = Fraction(0)
        comp_t = full_mask(self.m) ^ T
        for s, a in self.alpha.items():
            if s & comp_t == comp_t:  # S | T = [m]
                acc += a if popcount(s & T) & 1 else -a
        return acc

    def objective(self, log: QueryLog) -> Fraction:
        return sum((a * b_value(log, s) for s, a in self.alpha.items()), Fraction(0))


@dataclass(frozen=True)
class Feasible:
    completion: DenseSetFunction

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Infeasible:
    witness: FarkasWitness

    def __bool__(self):
        return False


CompletionResult = Union[Feasible, Infeasible]


def completion_feasible(log: QueryLog, *, max_m: int = COMPLETION_MAX_M) -> CompletionResult:
    """Solve the completion system exactly.

    f(emptyset) is pinned to 0 whether or not it was logged; only nonempty S
    index constraints (the transform has no coefficient at the empty set).
    """
    m = log.m
    if m > max_m:
        raise ResourceGuard(f"completion LP limited to m <= {max_m}, got {m}")
    known = log.as_dict()
    known.setdefault(0, Fraction(0))
    free = [t for t in range(1 << m) if t not in known]
    col = {t: j for j, t in enumerate(free)}
    sets = list(range(1, 1 << m))
    rows = []
    for s in sets:
        coeffs = {}
        rhs = Fraction(0)
        for t in _complement_supersets(m, s):
            odd = popcount(s & t) & 1
            if t in col:
                coeffs[col[t]] = 1 if odd else -1
            else:
                rhs += -known[t] if odd else known[t]
        rows.append(Row(coeffs, ">=", rhs))
    res = phase_one(len(free), rows)
    if res.feasible:
        values = dict(known)
        values.update(zip(free, res.x))
        f = DenseSetFunction(m, tuple(values[t] for t in range(1 << m)))
        if not isinstance(is_coverage(f), Coverage):
            raise RuntimeError("simplex returned a completion that is not coverage")
        return Feasible(f)
    total = sum(res.farkas, Fraction(0))
    alpha = {s: a / total for s, a in zip(sets, res.farkas) if a != 0}
    wit = FarkasWitness(m, alpha)
    if not check_farkas_witness(wit, log):
        raise RuntimeError("simplex returned an invalid Farkas witness")
    return Infeasible(wit)


def check_farkas_witness(wit: FarkasWitness, log: QueryLog) -> bool:
    """alpha >= 0, sum alpha(S) b(S) > 0, and g(T) <= 0 off the log."""
    if wit.m != log.m:
        return False
    if any(s == 0 or not 0 < s < (1 << wit.m) for s in wit.alpha):
        return False
    if any(a < 0 for a in wit.alpha.values()):
        return False
    if wit.objective(log) <= 0:
        return False
    logged = log.sets()
    return all(wit.g(t) <= 0 for t in range(1 << wit.m) if t not in logged)


@dataclass
class NotesterReport:
    m: int
    k: int
    N: Fraction
    seed: int
    trials: int
    log_size: int
    feasible: int = 0
    infeasible: int = 0
    logs: list = field(default_factory=list)
    certificate_set: int = 0
    certificate_feasible: Optional[bool] = None
    certificate_witness_valid: Optional[bool] = None


def random_log(rng: random.Random, p: FStarParams, size: int) -> QueryLog:
    """``size`` distinct sets drawn uniformly from all of 2^[m] (the empty set included)."""
    ts = rng.sample(range(1 << p.m), size)
    return QueryLog(p.m, tuple((t, fstar_eval(p, t)) for t in ts))


def certificate_log(p: FStarParams, S: int) -> QueryLog:
    return QueryLog(p.m, tuple((t, fstar_eval(p, t)) for t in _complement_supersets(p.m, S)))


def notester_experiment(m: int, k: int, trials: int, seed: int, N=None) -> NotesterReport:
    """Check completability of f* logs with fewer than 2^k queries.

    Also runs the 2^(k+1)-set log that pins w(S) for S = {1, ..., k+1}, which
    must be rejected.
    """
    if m > COMPLETION_MAX_M:
        raise ResourceGuard(f"notester experiment limited to m <= {COMPLETION_MAX_M}")
    p = FStarParams(m, k, default_N(m) if N is None else N)
    size = (1 << k) - 1
    rep = NotesterReport(m, k, p.N, seed, trials, size)
    rng = random.Random(seed)
    for _ in range(trials):
        log = random_log(rng, p, size)
        res = completion_feasible(log)
        rep.logs.append((log, bool(res)))
        if res:
            rep.feasible += 1
        else:
            rep.infeasible += 1
    s = full_mask(k + 1)
    rep.certificate_set = s
    res = completion_feasible(certificate_log(p, s))
    rep.certificate_feasible = bool(res)
    if not res:
        rep.certificate_witness_valid = check_farkas_witness(res.witness, certificate_log(p, s))
    return rep
