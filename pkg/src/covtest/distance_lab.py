"""Constructions comparing W-distance with the usual (Hamming) distance.

* ``build_wnear_ufar``: few negative coefficients, yet strictly supermodular
  everywhere and so at least 1/4-far from coverage.
* ``build_wfar_unear``: a symmetric correction that repairs almost every
  coefficient of an f*-like function while touching few table entries.
* ``symmetric_zero_count``: zeros of g(i) = sum_j lam_j C(i, j) when the
  high-order lam_j are negative (symmetric case of the zero-count conjecture).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import DenseSetFunction, ResourceGuard, as_bits, full_mask, popcount, to_fraction
from .wtransform import WCoefficients, inverse, w_distance


@dataclass(frozen=True)
class SymmetricFunction:
    m: int
    levels: tuple[Fraction, ...]  # levels[i] = value on every i-set

    def __post_init__(self):
        if len(self.levels) != self.m + 1:
            raise ValueError(f"need {self.m + 1} levels, got {len(self.levels)}")
        object.__setattr__(self, "levels", tuple(to_fraction(v) for v in self.levels))


@dataclass(frozen=True)
class SymmetricWCoefficients:
    m: int
    levels: tuple[Fraction, ...]  # levels[j] = coefficient of every j-set; levels[0] unused

    def __getitem__(self, j: int) -> Fraction:
        if not 1 <= j <= self.m:
            raise IndexError(j)
        return self.levels[j]


def expand_symmetric(s: SymmetricFunction, *, max_m: int = 20) -> DenseSetFunction:
    if s.m > max_m:
        raise ResourceGuard(f"expanding m={s.m} exceeds limit {max_m}")
    return DenseSetFunction(s.m, tuple(s.levels[popcount(t)] for t in range(1 << s.m)))


def symmetric_levels(f: DenseSetFunction) -> SymmetricFunction:
    """Inverse of :func:`expand_symmetric`; raises if ``f`` is not symmetric."""
    levels: list[Optional[Fraction]] = [None] * (f.m + 1)
    for t, v in enumerate(f.values):
        c = popcount(t)
        if levels[c] is None:
            levels[c] = v
        elif levels[c] != v:
            raise ValueError(f"not symmetric at cardinality {c}")
    return SymmetricFunction(f.m, tuple(levels))


def symmetric_w(s: SymmetricFunction) -> SymmetricWCoefficients:
    """W-coefficients of a symmetric function, per cardinality.

    w(j) = sum_i C(j, i) (-1)^(i+j+1) f(m - i).  For |S| = j the sets T with
    S | T = [m] are comp(S) plus any subset of S; C(j, i) of them have size m - i.
    """
    m = s.m
    out = [Fraction(0)] * (m + 1)
    for j in range(1, m + 1):
        out[j] = sum(
            (math.comb(j, i) * (-1) ** (i + j + 1) * s.levels[m - i] for i in range(j + 1)),
            Fraction(0),
        )
    return SymmetricWCoefficients(m, tuple(out))


# -- squares and the quadruple bound -----------------------------------------

def square_value(f: DenseSetFunction, T, i: int, j: int) -> Fraction:
    """f(T+i+j) - f(T+i) - f(T+j) + f(T); positive means submodularity fails here."""
    t = as_bits(T, f.m)
    if i == j or not (1 <= i <= f.m and 1 <= j <= f.m):
        raise ValueError(f"need distinct elements of [{f.m}], got {i}, {j}")
    a, b = 1 << (i - 1), 1 << (j - 1)
    if t & (a | b):
        raise ValueError("i and j must lie outside T")
    v = f.values
    return v[t | a | b] - v[t | a] - v[t | b] + v[t]


def all_squares(f: DenseSetFunction):
    for t in range(1 << f.m):
        outside = [i for i in range(1, f.m + 1) if not t >> (i - 1) & 1]
        for i, j in itertools.combinations(outside, 2):
            yield t, i, j, square_value(f, t, i, j)


def quadruple_distance_lower_bound(f: DenseSetFunction) -> Fraction:
    """Violating quadruples {S, S+1, S+2, S+1+2} over the subsets of 2^m.

    Coverage functions are submodular, so every quadruple with a positive
    square needs at least one changed entry.
    """
    if f.m < 2:
        raise ValueError("need m >= 2")
    rest = full_mask(f.m) ^ 0b11
    bad = 0
    s = rest
    while True:
        if square_value(f, s, 1, 2) > 0:
            bad += 1
        if s == 0:
            break
        s = (s - 1) & rest
    return Fraction(bad, 1 << f.m)


def exact_usual_distance(f: DenseSetFunction, *, max_m: int = 3) -> Fraction:
    """Least fraction of entries to change to reach a coverage function.

    Tries keep-sets from largest down and asks the completion LP; 2^(2^m)
    candidates, hence the tiny ``max_m``.
    """
    from .completion import QueryLog, completion_feasible

    if f.m > max_m:
        raise ResourceGuard(f"exact distance limited to m <= {max_m}")
    points = list(range(1 << f.m))
    keepable = [t for t in points if f.values[t] >= 0]
    for size in range(len(keepable), -1, -1):
        for keep in itertools.combinations(keepable, size):
            if completion_feasible(QueryLog(f.m, tuple((t, f.values[t]) for t in keep))):
                return Fraction(len(points) - size, len(points))
    raise AssertionError("the empty log is always completable")


# -- W-near but far -----------------------------------------------------------

@dataclass
class WnearUfar:
    coefficients: WCoefficients
    function: DenseSetFunction
    report: dict


def build_wnear_ufar(m: int) -> WnearUfar:
    """w = m on singletons, -1 on pairs, 0 above."""
    if not 2 <= m <= 12:
        raise ValueError(f"need 2 <= m <= 12, got {m}")
    vals = [Fraction(0)] * (1 << m)
    for s in range(1, 1 << m):
        c = popcount(s)
        if c == 1:
            vals[s] = Fraction(m)
        elif c == 2:
            vals[s] = Fraction(-1)
    w = WCoefficients(m, tuple(vals))
    f = inverse(w)
    squares = {v for *_, v in all_squares(f)}
    monotone = all(
        f.values[t | 1 << i] >= f.values[t] for t in range(1 << m) for i in range(m) if not t >> i & 1
    )
    report = {
        "m": m,
        "w_distance": w_distance(w),
        "expected_w_distance": Fraction(math.comb(m, 2), (1 << m) - 1),
        "square_values": sorted(squares),
        "all_squares_one": squares == {Fraction(1)},
        "monotone": monotone,
        "nonnegative": all(v >= 0 for v in f.values),
        "quadruple_lower_bound": quadruple_distance_lower_bound(f),
    }
    return WnearUfar(w, f, report)


# -- Mahler basis and W-far but near ------------------------------------------

def mahler_coefficients(values: Sequence) -> list[Fraction]:
    """a_i = i-th forward difference at 0, so that sum_i a_i C(j, i) = p(j)."""
    row = [to_fraction(v) for v in values]
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


def mahler_eval(alpha: Sequence[Fraction], j: int) -> Fraction:
    return sum((a * math.comb(j, i) for i, a in enumerate(alpha)), Fraction(0))


def _h1(m: int, j: int) -> Fraction:
    half = Fraction(1, 2)
    out = Fraction(4 * (-1) ** (5 * m // 8))
    for k in range(m // 4 + 1, 5 * m // 8):
        out *= j - k - half
    return out


def _h2(m: int, j: int) -> Fraction:
    half = Fraction(1, 2)
    out = Fraction((20 * math.factorial(m) + 4) * (-1) ** (m - 1))
    for r in range(5 * m // 8 + 1):
        out *= j - r
    for k in range(5 * m // 8 + 1, m - 1):
        out *= j - k - half
    return out


@dataclass
class WfarUnear:
    delta_f: SymmetricFunction
    delta_w: SymmetricWCoefficients
    N: Fraction
    report: dict


def build_wfar_unear(m: int) -> WfarUnear:
    """Symmetric correction vanishing on the middle levels 3m/8..5m/8.

    Two polynomials fix the target coefficients: h1 (degree 3m/8 - 1) is
    positive-after-sign on (m/4, 5m/8], h2 vanishes on 0..5m/8 and dominates
    above.  Their Mahler coefficients become the level values, alternating
    in sign and mirrored.  N is max(5 m!, |w(m)|) because h2(m) != 0 makes
    the top coefficient far more negative than 5 m!.
    """
    if m <= 0 or m % 8 or m > 16:
        raise ValueError(f"m must be a positive multiple of 8 (at most 16), got {m}")
    lo, mid_lo, mid_hi = m // 4, 3 * m // 8, 5 * m // 8
    h1 = [_h1(m, j) for j in range(m + 1)]
    h2 = [_h2(m, j) for j in range(m + 1)]
    a1 = mahler_coefficients(h1)
    a2 = mahler_coefficients(h2)
    if any(a1[i] for i in range(mid_lo, m + 1)):
        raise AssertionError("h1 has degree >= 3m/8")
    if any(a2[i] for i in range(m + 1) if not mid_hi < i < m):
        raise AssertionError("h2 Mahler coefficients outside (5m/8, m)")
    alpha = [a1[i] + a2[i] for i in range(m + 1)]
    # alpha_i = (-1)^(i+1) f(m - i)
    levels = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        levels[m - i] = (-1) ** (i + 1) * alpha[i]
    delta_f = SymmetricFunction(m, tuple(levels))
    closed = [Fraction(0)] + [(-1) ** j * (h1[j] + h2[j]) for j in range(1, m + 1)]
    delta_w = SymmetricWCoefficients(m, tuple(closed))
    N = max(Fraction(5 * math.factorial(m)), abs(closed[m]))
    via_wf = symmetric_w(delta_f)
    off_band = sum(math.comb(m, i) for i in range(m + 1) if not mid_lo <= i <= mid_hi)
    nonzero = sum(math.comb(m, i) for i in range(m + 1) if levels[i] != 0)
    report = {
        "m": m,
        "N": N,
        "band_zero": all(levels[i] == 0 for i in range(mid_lo, mid_hi + 1)),
        "w_upper_ok": all(closed[j] >= 1 for j in range(lo + 1, m)),
        "w_lower_ok": all(closed[j] >= -N for j in list(range(1, lo + 1)) + [m]),
        "off_band_fraction": Fraction(off_band, 1 << m),
        "nonzero_fraction": Fraction(nonzero, 1 << m),
        "w_levels_consistent": via_wf.levels == delta_w.levels,
    }
    return WfarUnear(delta_f, delta_w, N, report)


# -- zero counts for symmetric functions --------------------------------------

def binomial_transform(lams: Sequence, m: int) -> list[Fraction]:
    """g(i) = sum_j lam_j C(i, j) for i = 0..m."""
    return [sum((to_fraction(l) * math.comb(i, j) for j, l in enumerate(lams)), Fraction(0)) for i in range(m + 1)]


def symmetric_zero_count(lams: Sequence, k: int) -> int:
    m = len(lams) - 1
    if any(to_fraction(l) >= 0 for l in lams[k + 1:]):
        raise ValueError("need lam_j < 0 for every j > k")
    return sum(1 for v in binomial_transform(lams, m) if v == 0)


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    rows = [r[:] + [v] for r, v in zip(a, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        pivot = rows[c][c]
        rows[c] = [v / pivot for v in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[r][n] for r in range(n)]


def draw_lambdas(rng: random.Random, m: int, k: int, mode: str) -> list[Fraction]:
    """Random coefficients with a negative tail above ``k``.

    ``mode`` is "free" (random head), "one" (lam_0 set to zero g at a random
    point) or "pinned" (head solved so g vanishes at k+1 random points).
    """
    tail = [Fraction(-rng.randint(1, 9), rng.randint(1, 3)) for _ in range(m - k)]
    head = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(k + 1)]
    lams = head + tail
    if mode == "free":
        return lams
    if mode == "one":
        i = rng.randint(0, m)
        lams[0] -= binomial_transform(lams, m)[i]
        return lams
    if mode == "pinned":
        pts = sorted(rng.sample(range(m + 1), k + 1))
        a = [[Fraction(math.comb(i, j)) for j in range(k + 1)] for i in pts]
        b = [-sum((tail[j - k - 1] * math.comb(i, j) for j in range(k + 1, m + 1)), Fraction(0)) for i in pts]
        return _solve(a, b) + tail
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class ConjectureReport:
    seed: int
    trials: int
    draws: list  # (m, k, mode, zero count)
    violations: int
    max_zeros_minus_bound: int


def conjecture_sym_trials(trials: int, seed: int, *, m: Optional[int] = None, k: Optional[int] = None,
                          max_m: int = 20) -> ConjectureReport:
    """Zero counts over random draws; ``m``/``k`` left as None are drawn per trial."""
    rng = random.Random(seed)
    draws = []
    for t in range(trials):
        mm = m if m is not None else rng.randint(1, max_m)
        kk = k if k is not None else rng.randint(0, mm - 1)
        if not 0 <= kk < mm:
            raise ValueError(f"need 0 <= k < m, got k={kk}, m={mm}")
        mode = ("free", "one", "pinned")[t % 3]
        lams = draw_lambdas(rng, mm, kk, mode)
        draws.append((mm, kk, mode, symmetric_zero_count(lams, kk)))
    slack = [z - (kk + 1) for mm, kk, _, z in draws]
    return ConjectureReport(seed, trials, draws, sum(1 for s in slack if s > 0), max(slack, default=0))
