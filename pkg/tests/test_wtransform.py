import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covtest.adversarial import FStarParams
from covtest.core import CountingOracle, CoverageInstance, DenseSetFunction, NotNormalized, random_instance
from covtest.wtransform import (
    Coverage,
    NotCoverage,
    WCoefficients,
    forward,
    inverse,
    is_coverage,
    probe_coefficient,
    w_distance,
)
from oracles import bits, brute_f, brute_w, random_function, random_weights


def table(m, d):
    return DenseSetFunction(m, tuple(Fraction(d.get(t, 0)) for t in range(1 << m)))


def test_forward_zero():
    w = forward(table(3, {}))
    assert all(v == 0 for v in w.values)


def test_forward_examples():
    w = forward(table(2, {1: 1, 2: 1, 3: 1}))
    assert (w[1], w[2], w[3]) == (0, 0, 1)
    w = forward(table(2, {1: 1, 2: 1, 3: 3}))
    assert w[3] == -1


def test_forward_rejects_unnormalized():
    f = DenseSetFunction.__new__(DenseSetFunction)
    object.__setattr__(f, "m", 1)
    object.__setattr__(f, "values", (Fraction(1), Fraction(1)))
    with pytest.raises(NotNormalized):
        forward(f)


def test_inverse_examples():
    f = inverse(WCoefficients.from_mapping(2, {3: 1}))
    assert f.values == (0, 1, 1, 1)
    assert inverse(WCoefficients.from_mapping(3, {})).values == (0,) * 8


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**9))
def test_forward_matches_definition(m, seed):
    f = random_function(random.Random(seed), m)
    expected = brute_w(f.values, m)
    assert list(forward(f).values) == expected
    assert list(forward(f, method="moebius").values) == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**9))
def test_inverse_matches_definition(m, seed):
    w = random_weights(random.Random(seed), m)
    assert list(inverse(WCoefficients(m, tuple(w))).values) == brute_f(w, m)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 10), st.integers(0, 10**9))
def test_round_trips(m, seed):
    rng = random.Random(seed)
    f = random_function(rng, m)
    assert inverse(forward(f)) == f
    w = WCoefficients(m, tuple(random_weights(rng, m)))
    assert forward(inverse(w)) == w


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**9), st.fractions(max_denominator=7), st.fractions(max_denominator=7))
def test_linearity(m, seed, a, b):
    rng = random.Random(seed)
    f, g = random_function(rng, m), random_function(rng, m)
    lhs = forward(f.scale(a) + g.scale(b))
    wf, wg = forward(f), forward(g)
    assert list(lhs.values) == [a * x + b * y for x, y in zip(wf.values, wg.values)]


def test_is_coverage_examples():
    assert is_coverage(table(2, {1: 1, 2: 1, 3: 3})) == NotCoverage(3, Fraction(-1))
    assert is_coverage(table(2, {})) == Coverage(CoverageInstance(2))


def test_not_coverage_reports_least_negative():
    w = WCoefficients.from_mapping(3, {6: -2, 5: -1, 1: 4})
    assert is_coverage(inverse(w)) == NotCoverage(5, Fraction(-1))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 20), st.integers(0, 10**9))
def test_characterization_recovers_instance(m, n, seed):
    inst = random_instance(random.Random(seed), m, n)
    f = DenseSetFunction.from_callable(m, inst)
    assert is_coverage(f) == Coverage(inst)


def test_negating_any_weight_flips_verdict_m6():
    rng = random.Random(6)
    for _ in range(5):
        inst = random_instance(rng, 6, 10)
        weights = inst.as_dict()
        for s in weights:
            flipped = dict(weights)
            flipped[s] = -weights[s]
            f = inverse(WCoefficients.from_mapping(6, flipped))
            assert is_coverage(f) == NotCoverage(s, -weights[s])


def test_probe_coefficient_examples():
    inst = CoverageInstance(3, ((0b011, 2), (0b110, Fraction(7, 3))))
    o = CountingOracle.from_instance(inst)
    assert probe_coefficient(o, 0b110) == Fraction(7, 3)
    assert probe_coefficient(o, 0b011) == 2
    o.reset()
    assert probe_coefficient(o, 0b100) == 0
    assert o.queries_made == 2
    fo = FStarParams(4, 1, 25).oracle()
    assert probe_coefficient(fo, bits([1, 2])) == -1
    assert fo.queries_made == 4


def test_probe_equals_forward_m8():
    f = random_function(random.Random(88), 8)
    w = forward(f)
    o = CountingOracle.from_table(f)
    for s in range(1, 256):
        before = o.queries_made
        assert probe_coefficient(o, s) == w[s]
        assert o.queries_made - before == 2 ** bin(s).count("1")


def test_w_distance_examples():
    assert w_distance(WCoefficients.from_mapping(3, {1: 1})) == 0
    assert w_distance(WCoefficients.from_mapping(3, {3: -1, 5: -1, 6: -1, 1: 3})) == Fraction(3, 7)
    assert w_distance(forward(FStarParams(4, 1, 25).table())) == Fraction(11, 15)
