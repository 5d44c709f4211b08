"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``).
"""
import math
import random
import sys
from fractions import Fraction

import pytest

from covtest import cli
from covtest.adversarial import (
    FStarParams,
    NotNegative,
    default_N,
    extract_certificate,
    fstar_eval,
    fstar_w,
    verify_certificate,
)
from covtest.completion import certificate_log, check_farkas_witness, completion_feasible, notester_experiment
from covtest.core import CountingOracle, CoverageInstance, DenseSetFunction, random_instance
from covtest.distance_lab import build_wfar_unear, build_wnear_ufar, conjecture_sym_trials
from covtest.reconstruct import Yes, recover, test_coverage as run_tester
from covtest.wtransform import Coverage, NotCoverage, WCoefficients, forward, inverse, is_coverage, w_distance
from oracles import bits, brute_w, random_function, random_weights, wspace_feasible


@pytest.fixture
def report(capsys):
    def emit(n, name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[AC{n:>2}] {'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {n} failed: {detail}"
    return emit


def test_ac01_transform_round_trip(report):
    rng = random.Random(101)
    bad = 0
    for i in range(100):
        m = 1 + i % 10
        f = random_function(rng, m)
        w = WCoefficients(m, tuple(random_weights(rng, m)))
        bad += inverse(forward(f, method="moebius")) != f or forward(inverse(w), method="moebius") != w
        if m <= 6:
            bad += inverse(forward(f)) != f
    report(1, "transform round-trip, 100 functions, m=1..10", bad == 0, f"{bad} mismatches")


def test_ac02_characterization(report):
    rng = random.Random(202)
    bad = flips = 0
    for i in range(100):
        m = 1 + i % 10
        inst = random_instance(rng, m, rng.randint(0, 20))
        bad += is_coverage(DenseSetFunction.from_callable(m, inst)) != Coverage(inst)
        weights = inst.as_dict()
        for s, v in weights.items():
            flipped = dict(weights)
            flipped[s] = -v
            flips += 1
            bad += is_coverage(inverse(WCoefficients.from_mapping(m, flipped))) != NotCoverage(s, -v)
    report(2, "coverage iff all W-coefficients >= 0", bad == 0, f"{bad} errors over 100 instances, {flips} flips")


def test_ac03_reconstruction(report):
    rng = random.Random(303)
    bad = worst = 0
    for i in range(100):
        m = 1 + i % 16
        inst = random_instance(rng, m, rng.randint(0, 50))
        n = max(1, len(inst))
        o = CountingOracle.from_instance(inst)
        rep = recover(o, n)
        bound = 2 * m * len(inst) + 1
        bad += rep.instance != inst or o.queries_made > bound
        worst = max(worst, Fraction(o.queries_made, bound))
    report(3, "exact recovery within 2mn+1 queries, 100 instances m<=16 n<=50", bad == 0,
           f"{bad} failures, max queries/bound = {float(worst):.3f}")


def test_ac04_refine_counterexample(report):
    inst = CoverageInstance.from_weights(3, {bits([1, 3]): 1, bits([2]): 1, bits([2, 3]): 2})
    truth = {s: v for s, v in enumerate(brute_w([inst(t) for t in range(8)], 3)) if v}
    good = recover(CountingOracle.from_instance(inst), 10).instance.as_dict()
    bad = recover(CountingOracle.from_instance(inst), 10, predecessors="order").instance.as_dict()
    report(4, "subset-predecessor correction fixes the m=3 counterexample", good == truth and bad != truth,
           f"order rule gives {sorted(bad.items())}")


def test_ac05_fstar_equivalence(report):
    bad = 0
    for m in range(2, 11):
        for k in range(m):
            p = FStarParams(m, k, 7)
            w = WCoefficients(m, (Fraction(0),) + tuple(fstar_w(p, s) for s in range(1, 1 << m)))
            table = inverse(w)
            bad += any(fstar_eval(p, t) != table(t) for t in range(1 << m))
    p = FStarParams(4, 1, 25)
    dist = w_distance(forward(p.table()))
    report(5, "f* closed form equals inverse transform, m=2..10; W-distance(4,1) = 11/15",
           bad == 0 and dist == Fraction(11, 15), f"{bad} mismatching (m,k); distance {dist}")


def test_ac06_certificates(report):
    bad = 0
    for m in range(2, 9):
        for k in range(m):
            o = FStarParams(m, k, 13).oracle()
            c = extract_certificate(o, (1 << (k + 1)) - 1)
            bad += o.queries_made != 1 << (k + 1) or not verify_certificate(c)
    rng = random.Random(606)
    checked = 0
    for m in range(1, 7):
        for _ in range(3):
            o = CountingOracle.from_instance(random_instance(rng, m, rng.randint(0, 2 * m)))
            for s in range(1, 1 << m):
                checked += 1
                try:
                    extract_certificate(o, s)
                    bad += 1
                except NotNegative:
                    pass
    report(6, "f* certificates use 2^(k+1) queries and verify; none on coverage oracles (m<=6)", bad == 0,
           f"{bad} failures, {checked} coverage probes")


def test_ac07_notester(report):
    rep = notester_experiment(6, 2, 50, seed=7, N=default_N(6))
    p = FStarParams(6, 2, default_N(6))
    cross = sum(wspace_feasible(6, log.as_dict()) == ok for log, ok in rep.logs)
    cert = certificate_log(p, bits([1, 2, 3]))
    res = completion_feasible(cert)
    cert_ok = not res and check_farkas_witness(res.witness, cert) and not wspace_feasible(6, cert.as_dict())
    ok = rep.feasible == 50 and rep.log_size == 3 and cert_ok and cross == 50 and rep.certificate_witness_valid
    report(7, "f* logs of size 3 complete; 8-query certificate family does not (m=6, k=2)", ok,
           f"{rep.feasible}/50 feasible, w-space agrees on {cross}/50, certificate rejected: {cert_ok}")


def test_ac08_wnear_ufar(report):
    bad = []
    for m in range(2, 9):
        rep = build_wnear_ufar(m).report
        if not (rep["square_values"] == [1] and rep["quadruple_lower_bound"] == Fraction(1, 4)
                and rep["w_distance"] == Fraction(math.comb(m, 2), 2**m - 1)):
            bad.append(m)
    report(8, "W-near but 1/4-far: squares all 1, quadruple bound 1/4, m=2..8", not bad, f"failing m: {bad}")


def test_ac09_wfar_unear(report):
    built = build_wfar_unear(8)
    rep = built.report
    checks = {
        "band": all(built.delta_f.levels[i] == 0 for i in (3, 4, 5)),
        "upper": all(built.delta_w[j] >= 1 for j in range(3, 8)),
        "lower": all(built.delta_w[j] >= -built.N for j in (1, 2, 8)),
        "74/256": rep["off_band_fraction"] == Fraction(74, 256) and rep["nonzero_fraction"] <= Fraction(74, 256),
        "w_levels": rep["w_levels_consistent"],
    }
    failed = [k for k, v in checks.items() if not v]
    report(9, "W-far but near at m=8", not failed,
           f"N = {built.N}, nonzero fraction {rep['nonzero_fraction']}, failed: {failed}")


def test_ac10_symmetric_zero_count(report):
    rep = conjecture_sym_trials(1200, seed=1010, max_m=20)
    report(10, "symmetric zero count <= k+1", rep.violations == 0 and len(rep.draws) >= 1000,
           f"{len(rep.draws)} draws, {rep.violations} violations, max excess {rep.max_zeros_minus_bound}")


def perturbed_table(rng, inst, eps):
    m = inst.m
    vals = [inst(t) for t in range(1 << m)]
    count = math.ceil(eps * (1 << m))
    for t in rng.sample(range(1, 1 << m), count):
        delta = Fraction(rng.randint(1, 5), rng.randint(1, 3)) * rng.choice((-1, 1))
        vals[t] += delta
    return DenseSetFunction(m, tuple(vals))


def test_ac11_tester_power(report):
    eps = Fraction(1, 8)
    rng = random.Random(1111)
    rejected = accepted = 0
    reasons = {}
    for trial in range(200):
        m = rng.randint(4, 7)
        inst = random_instance(rng, m, rng.randint(1, 8))
        n = max(1, len(inst))
        res = run_tester(CountingOracle.from_table(perturbed_table(rng, inst, eps)), n, eps, seed=trial)
        if not res:
            rejected += 1
            reasons[res.reason] = reasons.get(res.reason, 0) + 1
        clean = run_tester(CountingOracle.from_instance(inst), n, eps, seed=trial)
        accepted += isinstance(clean, Yes) and clean.instance == inst
    ok = rejected >= Fraction(2, 3) * 200 and accepted == 200
    report(11, "tester rejects 1/8-perturbed tables, accepts coverage", ok,
           f"rejected {rejected}/200 {sorted(reasons.items())}, accepted clean {accepted}/200")


BATTERY = [
    ["gen", "fstar", "--m", "5", "--k", "2", "--format", "table"],
    ["gen", "random-coverage", "--m", "8", "--n", "12", "--seed", "5"],
    ["gen", "wnear", "--m", "4"],
    ["gen", "wfar", "--m", "8"],
    ["notester", "--m", "5", "--k", "2", "--trials", "20", "--seed", "3"],
    ["conjecture-sym", "--trials", "300", "--seed", "9"],
    ["transform", "{table}"],
    ["reconstruct", "{instance}", "--n", "12", "--eps", "1/8", "--seed", "4"],
    ["test", "{instance}", "--n", "12", "--eps", "1/4", "--seed", "8"],
    ["complete", "--log", "{log}"],
]


def test_ac12_cli_determinism(report, tmp_path):
    inputs = {"table": tmp_path / "table.json", "instance": tmp_path / "instance.json", "log": tmp_path / "log.json"}
    cli.main(["gen", "fstar", "--m", "4", "--k", "1", "--format", "table", "--out", str(inputs["table"])])
    cli.main(["gen", "random-coverage", "--m", "7", "--n", "9", "--seed", "2", "--out", str(inputs["instance"])])
    inputs["log"].write_text('{"m": 3, "values": [{"set": [1], "value": "2"}, {"set": [2, 3], "value": "5/2"}]}')
    mismatched = []
    for i, cmd in enumerate(BATTERY):
        argv = [a.format(**inputs) for a in cmd]
        outs = []
        for run in range(2):
            out = tmp_path / f"r{i}-{run}.json"
            code = cli.main(argv + ["--out", str(out)])
            outs.append((code, out.read_bytes()))
        if outs[0] != outs[1] or outs[0][0] != 0:
            mismatched.append(" ".join(cmd[:2]))
    report(12, f"CLI battery of {len(BATTERY)} commands is byte-identical across runs", not mismatched,
           f"differing: {mismatched}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
