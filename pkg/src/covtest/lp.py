"""Exact-rational phase-one simplex.

Decides whether {x >= 0 : a_i . x (>=|=|<=) b_i for every row i} is nonempty.
On success it returns a basic feasible x; otherwise it returns Farkas
multipliers y with

    y_i >= 0 on ">=" rows, y_i <= 0 on "<=" rows, y_i free on "=" rows,
    sum_i y_i a_ij <= 0 for every column j,  and  sum_i y_i b_i > 0,

which proves the system infeasible.  The multipliers are the optimal duals of
the phase-one problem, read off the columns that formed the starting basis.
Pivoting follows Bland's rule, so the method terminates.  Tableau rows are
sparse dicts of gmpy2 ``mpq`` values; inputs and outputs are Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


@dataclass(frozen=True)
class Row:
    coeffs: Mapping[int, Fraction]  # column index -> coefficient
    sense: str  # ">=", "=" or "<="
    rhs: Fraction


@dataclass
class PhaseOneResult:
    feasible: bool
    x: Optional[list[Fraction]] = None
    farkas: Optional[list[Fraction]] = None
    pivots: int = 0


def phase_one(n: int, rows: Sequence[Row], *, max_pivots: int = 1_000_000) -> PhaseOneResult:
    """Find x in R^n_{>=0} satisfying ``rows`` or a Farkas certificate."""
    tab: list[dict] = []
    rhs: list = []
    basis: list[int] = []
    signs: list[int] = []
    start_col: list[int] = []
    artificial: set[int] = set()
    col = n
    for r in rows:
        if r.sense not in (">=", "=", "<="):
            raise ValueError(f"bad sense {r.sense!r}")
        coeffs = {j: _q(v) for j, v in r.coeffs.items() if v != 0}
        if any(not 0 <= j < n for j in coeffs):
            raise ValueError("column index out of range")
        b = _q(r.rhs)
        slack = None
        if r.sense == ">=":
            slack, slack_coef = col, -ONE
            col += 1
        elif r.sense == "<=":
            slack, slack_coef = col, ONE
            col += 1
        # orient the row so rhs >= 0, preferring a +1 slack when rhs is 0
        sign = 1
        if b < 0 or (b == 0 and slack is not None and slack_coef < 0):
            sign = -1
        row = {j: sign * v for j, v in coeffs.items()}
        if slack is not None:
            row[slack] = sign * slack_coef
        b = sign * b
        if slack is not None and row[slack] == 1:
            start = slack
        else:
            start = col
            col += 1
            row[start] = ONE
            artificial.add(start)
        tab.append(row)
        rhs.append(b)
        basis.append(start)
        signs.append(sign)
        start_col.append(start)

    # reduced costs of the phase-one objective (sum of artificials)
    cost = {j: ONE for j in artificial}
    red = dict(cost)
    obj = ZERO
    for i, row in enumerate(tab):
        if basis[i] in artificial:
            for j, v in row.items():
                red[j] = red.get(j, ZERO) - v
            obj += rhs[i]
    red = {j: v for j, v in red.items() if v != 0}

    pivots = 0
    while True:
        entering = min((j for j, v in red.items() if v < 0), default=None)
        if entering is None:
            break
        leave = None
        best = None
        for i, row in enumerate(tab):
            a = row.get(entering)
            if a is not None and a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best:
                    best, leave = key, i
        if leave is None:
            # phase one is bounded below by 0; cannot happen
            raise RuntimeError("unbounded phase-one problem")
        obj = _pivot(tab, rhs, red, obj, leave, entering)
        basis[leave] = entering
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit reached")

    if obj == 0:
        x = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                x[b] = _frac(rhs[i])
        return PhaseOneResult(True, x=x, pivots=pivots)

    row_cost = [cost.get(b, ZERO) for b in basis]
    farkas = []
    for r, c0 in enumerate(start_col):
        y = sum((row_cost[i] * tab[i].get(c0, ZERO) for i in range(len(tab)) if row_cost[i]), ZERO)
        farkas.append(_frac(signs[r] * y))
    return PhaseOneResult(False, farkas=farkas, pivots=pivots)


def _q(v):
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _pivot(tab, rhs, red, obj, r: int, c: int) -> Fraction:
    prow = tab[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        for j in prow:
            prow[j] *= inv
        rhs[r] *= inv
    pitems = list(prow.items())
    pb = rhs[r]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row.get(c)
        if f is None:
            continue
        for j, v in pitems:
            nv = row.get(j, ZERO) - f * v
            if nv:
                row[j] = nv
            else:
                row.pop(j, None)
        rhs[i] -= f * pb
    f = red.get(c)
    if f is not None:
        for j, v in pitems:
            nv = red.get(j, ZERO) - f * v
            if nv:
                red[j] = nv
            else:
                red.pop(j, None)
        obj += f * pb
    return obj
