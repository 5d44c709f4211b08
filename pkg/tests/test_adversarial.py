import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covtest.adversarial import (
    FStarParams,
    NotNegative,
    default_N,
    extract_certificate,
    fstar_eval,
    fstar_w,
    fstar_wdistance,
    verify_certificate,
)
from covtest.core import CountingOracle, ResourceGuard, random_instance
from covtest.wtransform import WCoefficients, forward, inverse, w_distance
from oracles import bits, brute_f


def fstar_coefficients(p):
    return WCoefficients(p.m, (Fraction(0),) + tuple(fstar_w(p, s) for s in range(1, 1 << p.m)))


def test_default_N():
    assert default_N(2) == 25
    assert default_N(6) == math.factorial(64) + 1


def test_params_validation():
    with pytest.raises(ValueError):
        FStarParams(3, 3)
    with pytest.raises(ValueError):
        FStarParams(3, -1)
    with pytest.raises(ValueError):
        FStarParams(3, 1, 0)


def test_fstar_m4_k1_values():
    p = FStarParams(4, 1, 25)
    levels = [fstar_eval(p, (1 << t) - 1) for t in range(5)]
    assert levels == [0, 18, 40, 64, 89]
    assert fstar_w(p, bits([1, 2])) == -1
    assert fstar_w(p, bits([3])) == 25
    assert fstar_wdistance(p) == Fraction(11, 15)
    assert w_distance(fstar_coefficients(p)) == Fraction(11, 15)


def test_fstar_w_rejects_empty():
    with pytest.raises(ValueError):
        fstar_w(FStarParams(3, 1, 5), 0)


@pytest.mark.parametrize("m", range(2, 9))
def test_closed_form_matches_inverse(m):
    for k in range(m):
        p = FStarParams(m, k, 7)
        w = fstar_coefficients(p)
        table = inverse(w)
        assert all(fstar_eval(p, t) == table(t) for t in range(1 << m))
        assert forward(p.table()) == w


def test_closed_form_matches_brute_small():
    p = FStarParams(4, 2, 3)
    w = [Fraction(0)] + [fstar_w(p, s) for s in range(1, 16)]
    assert brute_f(w, 4) == [fstar_eval(p, t) for t in range(16)]


def test_wdistance_tends_to_one():
    # k = m/4: the negative fraction of coefficients approaches 1
    vals = [fstar_wdistance(FStarParams(m, m // 4, 1)) for m in (8, 16, 24)]
    assert vals == sorted(vals)
    assert vals[-1] > Fraction(98, 100)


def test_certificate_on_fstar():
    p = FStarParams(6, 2, default_N(6))
    o = p.oracle()
    c = extract_certificate(o, bits([1, 2, 3]))
    assert o.queries_made == 8 == len(c)
    assert c.coefficient == -1
    assert verify_certificate(c)


def test_certificate_tamper_detected():
    p = FStarParams(4, 1, 25)
    c = extract_certificate(p.oracle(), bits([1, 2]))
    entries = list(c.entries)
    entries[0] = (entries[0][0], entries[0][1] + 1)
    assert not verify_certificate(type(c)(c.m, c.S, tuple(entries), c.coefficient))
    assert not verify_certificate(type(c)(c.m, c.S, c.entries[1:], c.coefficient))


def test_certificate_rejects_empty_set():
    with pytest.raises(ValueError):
        extract_certificate(FStarParams(3, 1, 5).oracle(), 0)


@pytest.mark.parametrize("m", range(1, 7))
def test_no_certificate_on_coverage(m):
    inst = random_instance(random.Random(m), m, 2 * m)
    o = CountingOracle.from_instance(inst)
    for s in range(1, 1 << m):
        with pytest.raises(NotNegative):
            extract_certificate(o, s)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 7), st.data())
def test_every_large_set_certifies(m, data):
    k = data.draw(st.integers(0, m - 1))
    p = FStarParams(m, k, 11)
    s = data.draw(st.integers(1, (1 << m) - 1))
    if bin(s).count("1") <= k:
        with pytest.raises(NotNegative):
            extract_certificate(p.oracle(), s)
    else:
        o = p.oracle()
        c = extract_certificate(o, s)
        assert verify_certificate(c) and o.queries_made == 1 << bin(s).count("1")


def test_default_N_guard():
    with pytest.raises(ResourceGuard):
        FStarParams(13, 1)
    assert FStarParams(13, 1, 10**6).N == 10**6
