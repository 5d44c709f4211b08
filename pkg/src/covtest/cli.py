"""Command-line front end.

Every command writes one JSON report (stdout, or ``--out``).  Exit codes:
0 analysis finished (whatever the verdict), 2 bad input, 3 ground set too
large.  Randomized commands take ``--seed``; without one a seed is drawn
from the OS and recorded in the report.  All randomness comes from
``random.Random(seed)`` (Mersenne Twister), which is reproducible across
platforms.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import io
from .adversarial import FStarParams, fstar_wdistance
from .completion import QueryLog, check_farkas_witness, completion_feasible, notester_experiment
from .core import (
    CoverageError,
    CountingOracle,
    ResourceGuard,
    fraction_str,
    random_instance,
    to_elements,
    to_fraction,
)
from .distance_lab import build_wfar_unear, build_wnear_ufar, conjecture_sym_trials
from .reconstruct import NegativeWeight, SupportExceeded, recover, sample_count, test_coverage
from .wtransform import forward, w_distance

EXIT_OK, EXIT_INPUT, EXIT_GUARD = 0, 2, 3


class InputError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _seed(args) -> int:
    if args.seed is None:
        args.seed = random.SystemRandom().getrandbits(63)
    return args.seed


def _guard(m: int, args) -> None:
    if m > args.max_m:
        raise ResourceGuard(f"m={m} exceeds --max-m {args.max_m}")


def _load(path):
    try:
        return io.load_json(path)
    except OSError as e:
        raise InputError(str(e)) from e


def _fraction_arg(s: str) -> Fraction:
    try:
        return to_fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from e


# -- commands -----------------------------------------------------------------

def cmd_transform(args) -> dict:
    doc = _load(args.table)
    f = io.table_from_json(doc, limit=args.max_m)
    w = forward(f)
    report = {
        "m": f.m,
        "coefficients": io.coefficients_to_json(w)["coefficients"],
        "w_distance": w_distance(w),
    }
    negatives = w.negatives()
    if negatives:
        s = negatives[0]
        report.update(verdict="not-coverage", support=None, witness=io.set_entry(s, "value", w.values[s]))
    else:
        support = [io.set_entry(s, "weight", w.values[s]) for s in w.support()]
        report.update(verdict="coverage", support=support, witness=None)
    return report


def _recover_report(o: CountingOracle, n: int) -> dict:
    try:
        rep = recover(o, n)
    except NegativeWeight as e:
        return {"instance": None, "queries": e.queries, "levels": e.levels, "verdict": "not-coverage",
                "detail": {"reason": "negative-weight", "set": to_elements(e.prefix), "level": e.level,
                           "weight": e.weight}}
    except SupportExceeded as e:
        return {"instance": None, "queries": e.queries, "levels": e.levels, "verdict": "support-exceeded",
                "detail": {"reason": "support-exceeded", "level": e.level, "live": e.live, "bound": e.bound}}
    return {"instance": io.instance_to_json(rep.instance), "queries": rep.queries_used, "levels": rep.levels,
            "verdict": "coverage", "detail": None}


def _test_report(o: CountingOracle, n: int, eps: Fraction, seed: int) -> dict:
    res = test_coverage(o, n, eps, seed)
    out = {"eps": eps, "seed": seed, "samples_planned": sample_count(eps), "queries": res.queries,
           "samples": res.samples, "verdict": "yes" if res else "no"}
    if not res:
        out["reason"] = res.reason
        out["detail"] = res.detail
    return out


def cmd_reconstruct(args) -> dict:
    o = io.oracle_from_json(_load(args.spec), max_m=args.max_m)
    report = {"m": o.m, "n": args.n, **_recover_report(o, args.n)}
    if args.eps is not None:
        report["test"] = _test_report(io.oracle_from_json(_load(args.spec), max_m=args.max_m), args.n,
                                      args.eps, _seed(args))
    return report


def cmd_test(args) -> dict:
    o = io.oracle_from_json(_load(args.spec), max_m=args.max_m)
    return {"m": o.m, "n": args.n, **_test_report(o, args.n, args.eps, _seed(args))}


def cmd_gen(args) -> dict:
    if args.what == "fstar":
        _need(args, "m", "k")
        if args.format == "table":
            _guard(args.m, args)
        p = FStarParams(args.m, args.k, args.n_override)
        if args.format == "table":
            return io.table_to_json(p.table())
        return io.fstar_spec(p)
    if args.what == "random-coverage":
        _need(args, "m", "n")
        inst = random_instance(random.Random(_seed(args)), args.m, args.n)
        return {**io.instance_to_json(inst), "seed": args.seed}
    if args.what == "wnear":
        _need(args, "m")
        _guard(args.m, args)
        built = build_wnear_ufar(args.m)
        _emit(args, coefficients=io.coefficients_to_json(built.coefficients), table=io.table_to_json(built.function))
        return built.report
    if args.what == "wfar":
        _need(args, "m")
        _guard(args.m, args)
        from .distance_lab import expand_symmetric

        built = build_wfar_unear(args.m)
        levels = {"m": built.delta_f.m,
                  "table_levels": list(built.delta_f.levels),
                  "w_levels": list(built.delta_w.levels[1:])}
        _emit(args, levels=levels, table=io.table_to_json(expand_symmetric(built.delta_f)))
        return {**built.report, **levels}
    raise InputError(f"unknown generator {args.what!r}")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"gen {args.what} needs --{' --'.join(missing)}")


def _emit(args, **docs) -> None:
    if not args.emit_dir:
        return
    d = Path(args.emit_dir)
    d.mkdir(parents=True, exist_ok=True)
    for name, doc in docs.items():
        (d / f"{args.what}-m{args.m}.{name}.json").write_text(io.dumps(_jsonable(doc)))


def cmd_complete(args) -> dict:
    doc = _load(args.log)
    m, table = io.table_entries(doc, limit=args.max_m)
    log = QueryLog.from_mapping(m, table)
    res = completion_feasible(log)
    if res:
        return {"feasible": True, "completion": io.table_to_json(res.completion), "witness": None}
    alpha = [io.set_entry(s, "value", a) for s, a in sorted(res.witness.alpha.items())]
    return {"feasible": False, "completion": None,
            "witness": {"alpha": alpha, "valid": check_farkas_witness(res.witness, log)}}


def cmd_notester(args) -> dict:
    rep = notester_experiment(args.m, args.k, args.trials, _seed(args), args.n_override)
    return {
        "m": rep.m, "k": rep.k, "N": rep.N, "seed": rep.seed, "trials": rep.trials, "log_size": rep.log_size,
        "feasible": rep.feasible, "infeasible": rep.infeasible,
        "logs": [{"sets": [to_elements(t) for t, _ in log.entries], "feasible": ok} for log, ok in rep.logs],
        "certificate_family": {"set": to_elements(rep.certificate_set), "queries": 1 << (rep.k + 1),
                               "feasible": rep.certificate_feasible,
                               "witness_valid": rep.certificate_witness_valid},
    }


def cmd_conjecture(args) -> dict:
    rep = conjecture_sym_trials(args.trials, _seed(args), m=args.m, k=args.k)
    hist: dict[str, int] = {}
    for _, _, _, z in rep.draws:
        hist[str(z)] = hist.get(str(z), 0) + 1
    return {"seed": rep.seed, "trials": rep.trials, "m": args.m, "k": args.k,
            "zero_count_histogram": hist, "violations": rep.violations,
            "max_zeros_minus_bound": rep.max_zeros_minus_bound}


def cmd_bench(args) -> dict:
    rng = random.Random(_seed(args))
    rows = []
    for m in range(2, args.m + 1):
        inst = random_instance(rng, m, args.n)
        o = CountingOracle.from_instance(inst)
        t0 = time.perf_counter()
        rep = recover(o, max(1, len(inst)))
        rows.append({"m": m, "n": len(inst), "queries": rep.queries_used, "bound": 2 * m * len(inst) + 1,
                     "seconds": round(time.perf_counter() - t0, 6)})
    return {"seed": args.seed, "reconstruct": rows,
            "fstar_wdistance": [{"m": m, "k": m // 4, "w_distance": fstar_wdistance(FStarParams(m, m // 4, 1))}
                                for m in range(4, args.m + 1, 4)]}


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--max-m", type=int, default=20, help="resource guard for dense operations")

    p = argparse.ArgumentParser(prog="covtest", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("transform", parents=[common], help="W-transform and coverage verdict of a table")
    s.add_argument("table")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("reconstruct", parents=[common], help="recover a succinct coverage function")
    s.add_argument("spec")
    s.add_argument("--n", type=int, required=True, help="support bound")
    s.add_argument("--eps", type=_fraction_arg, default=None)
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("test", parents=[common], help="coverage tester")
    s.add_argument("spec")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps", type=_fraction_arg, required=True)
    s.set_defaults(func=cmd_test)

    s = sub.add_parser("gen", parents=[common], help="generate instances")
    s.add_argument("what", choices=["fstar", "wnear", "wfar", "random-coverage"])
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int, help="support size for random-coverage")
    s.add_argument("--n-override", type=_fraction_arg, default=None, help="f* weight N (default (2^m)!+1)")
    s.add_argument("--format", choices=["spec", "table"], default="spec")
    s.add_argument("--emit-dir", default=None)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("complete", parents=[common], help="coverage completion of a partial log")
    s.add_argument("--log", required=True)
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("notester", parents=[common], help="small-log completability of f*")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--n-override", type=_fraction_arg, default=None)
    s.set_defaults(func=cmd_notester)

    s = sub.add_parser("conjecture-sym", parents=[common], help="zero counts of symmetric polynomials")
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--trials", type=int, default=1000)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("bench", parents=[common], help="reconstruction query counts and timings")
    s.add_argument("--m", type=int, default=12)
    s.add_argument("--n", type=int, default=20)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # f* values at the default N run to thousands of digits
    try:
        report = args.func(args)
    except ResourceGuard as e:
        print(f"covtest: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, io.FormatError, CoverageError, ValueError, TypeError) as e:
        print(f"covtest: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = io.dumps(_jsonable(report))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
