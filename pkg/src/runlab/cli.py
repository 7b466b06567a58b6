"""Command-line front end.

Subcommands: ``gen`` (seeded corpora), ``runs`` (run discovery),
``lz`` (factorization, optionally instrumented), ``bench``
(comparison-budget CSV sweeps), ``verify`` (assertion suites tying the
instrumented algorithms back to the brute-force oracles).

Strings travel as files of bytes; byte order is alphabet order
(latin-1 keeps the mapping one byte per symbol).  A single trailing
newline on input is treated as a shell artifact and dropped.

Exit codes: 0 success, 1 failed assertion or engine disagreement,
2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import random
import sys
import time
from fractions import Fraction

import numpy as np

from .generators import GENERATOR_NAMES, ExperimentConfig, make_string
from .linear_runs import DEFAULT_LOOKAHEAD, run_search
from .lz import (
    AdversarialInstance,
    gen_adversarial,
    lengths_to_csv,
    lower_bound_floor,
    lz_equivalent,
    lz_factorize,
    lz_factorize_instrumented,
    perturb_adversarial,
)
from .oracle import ComparisonOracle
from .periodicity import (
    all_periods,
    check_runs_count,
    cubic_exponent_sum,
    find_runs_bruteforce,
    fine_wilf_check,
    gen_kolpakov_word,
    runs_to_json_lines,
)
from .symbols import alphabet, as_symbols

BENCH_HEADER = (
    "generator,n,sigma,d,seed,charged_ineq,charged_eq,runs_found,ratio,wall_ms"
)


# -- byte I/O ----------------------------------------------------------


def _read_input(path: str | None) -> str:
    if path in (None, "-"):
        data = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    text = data.decode("latin-1")
    return text[:-1] if text.endswith("\n") else text


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="latin-1") as fh:
            fh.write(text)


# -- gen ---------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        generator=args.generator,
        n=args.n,
        sigma=args.sigma,
        d=args.d,
        p=args.p,
        seed=args.seed,
    )
    _emit(make_string(config, base=args.base) + "\n", args.out)
    return 0


# -- runs --------------------------------------------------------------


def _linear_summary(report, sigma: int) -> str:
    return json.dumps(
        {
            "n": report.n,
            "sigma": sigma,
            "d": report.lookahead,
            "charged_ineq": report.charged_ineq,
            "charged_eq": report.charged_eq,
            "free_hits": report.free_hits,
            "recursion_depth": report.max_depth,
            "runs": len(report.runs),
            "engine": "linear",
        }
    )


def cmd_runs(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    s = as_symbols(text)
    out_lines: list[str] = []

    linear_report = None
    brute_runs = None
    if args.engine in ("linear", "both"):
        linear_report = run_search(s, d=args.d)
    if args.engine in ("brute", "both"):
        brute_runs = find_runs_bruteforce(s)

    if args.engine == "both":
        assert linear_report is not None and brute_runs is not None
        if set(linear_report.runs) != brute_runs:
            print("FAIL: engines disagree", file=sys.stderr)
            return 1

    if linear_report is not None:
        out_lines.append(runs_to_json_lines(linear_report.runs))
        out_lines.append(_linear_summary(linear_report, s.sigma) + "\n")
    else:
        assert brute_runs is not None
        out_lines.append(runs_to_json_lines(brute_runs))
        out_lines.append(
            json.dumps(
                {"n": s.n, "sigma": s.sigma, "runs": len(brute_runs), "engine": "brute"}
            )
            + "\n"
        )
    _emit("".join(out_lines), args.out)
    return 0


# -- lz ----------------------------------------------------------------


def _maybe_adversarial(raw: str) -> AdversarialInstance | None:
    if not raw.lstrip().startswith("{"):
        return None
    try:
        rec = json.loads(raw)
    except json.JSONDecodeError:
        return None
    if isinstance(rec, dict) and {"n", "sigma", "queries", "text"} <= rec.keys():
        return AdversarialInstance.from_json(raw)
    return None


def cmd_lz(args: argparse.Namespace) -> int:
    raw = _read_input(args.input)
    inst = _maybe_adversarial(raw)
    s = inst.text if inst is not None else as_symbols(raw)

    lines: list[str] = []
    if args.mode == "plain":
        lines.append(lengths_to_csv(lz_factorize(s)) + "\n")
    else:
        oracle = ComparisonOracle(s, record_entries=False)
        lengths, tr = lz_factorize_instrumented(oracle)
        lines.append(lengths_to_csv(lengths) + "\n")
        lines.append(
            f"# charged_eq={tr.charged_eq} charged_ineq={tr.charged_ineq} "
            f"charged_total={tr.charged_total}\n"
        )
        if inst is not None:
            floor = lower_bound_floor(inst.n, inst.sigma)
            lines.append(
                f"# lower_bound_floor={floor:.4f} k={inst.k} "
                f"measured={tr.charged_total}\n"
            )
    _emit("".join(lines), args.out)
    return 0


# -- bench -------------------------------------------------------------


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(x) for x in str(args.n).split(",") if x]
    rows: list[str] = [BENCH_HEADER]
    points: list[tuple[int, int]] = []
    for n in sizes:
        for r in range(args.repeats):
            seed = args.seed + r
            config = ExperimentConfig(
                generator=args.generator,
                n=n,
                sigma=args.sigma,
                d=args.d,
                p=args.p,
                seed=seed,
            )
            s = make_string(config)
            m = len(s)
            t0 = time.perf_counter()
            report = run_search(s, d=args.d)
            wall_ms = (time.perf_counter() - t0) * 1000.0
            ci = report.charged_ineq
            ratio = Fraction(ci, m)
            rows.append(
                f"{args.generator},{m},{args.sigma},{args.d},{seed},"
                f"{ci},{report.charged_eq},{len(report.runs)},"
                f"{ratio.numerator}/{ratio.denominator}={ci / m:.6f},"
                f"{wall_ms:.2f}"
            )
            points.append((m, ci))

    slope = _loglog_slope(points)
    rows.append(f"# loglog_slope={slope:.4f}" if slope is not None else "# loglog_slope=nan")
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _loglog_slope(points: list[tuple[int, int]]) -> float | None:
    """Least-squares slope of log(charged) vs log(n); None if degenerate."""
    pts = [(n, c) for n, c in points if n > 1 and c > 0]
    if len({n for n, _ in pts}) < 2:
        return None
    xs = np.log([n for n, _ in pts])
    ys = np.log([c for _, c in pts])
    return float(np.polyfit(xs, ys, 1)[0])


# -- verify ------------------------------------------------------------

Check = tuple[str, bool, str]


def _random_corpus(count: int, max_n: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        letters = alphabet(rng.choice((2, 4, 26)))
        out.append("".join(rng.choice(letters) for _ in range(n)))
    return out


def verify_lemmas() -> list[Check]:
    corpus = _random_corpus(1000, 300, seed=2024)
    rng = random.Random(99)

    count_ok = sum(1 for s in corpus if check_runs_count(s))
    checks = [
        (
            "runs-count-below-n",
            count_ok == len(corpus),
            f"{count_ok}/{len(corpus)} strings",
        )
    ]

    cubic_total = cubic_bad = 0
    for s in corpus:
        for p in (2, 4, 8, 16):
            cubic_total += 1
            if cubic_exponent_sum(s, p) >= Fraction(12 * len(s), p):
                cubic_bad += 1
    checks.append(
        (
            "cubic-exponent-sum",
            cubic_bad == 0,
            f"{cubic_total - cubic_bad}/{cubic_total} (string, period) cells",
        )
    )

    # uniform strings rarely have two compatible periods, so the premise
    # sampling draws from repetition-heavy strings as well
    periodic_pool = list(corpus)
    for _ in range(300):
        base = "".join(rng.choice("ab") for _ in range(rng.randint(1, 6)))
        power = base * rng.randint(2, 8)
        periodic_pool.append(power[: rng.randint(2, len(power))])

    fw_total = fw_bad = 0
    for s in periodic_pool:
        if len(s) < 2:
            continue
        periods = all_periods(s)
        pairs = [
            (p, q)
            for p in periods
            for q in periods
            if p < q and p + q - math.gcd(p, q) <= len(s)
        ]
        for p, q in rng.sample(pairs, min(3, len(pairs))):
            fw_total += 1
            if not fine_wilf_check(s, p, q):
                fw_bad += 1
    checks.append(
        (
            "fine-wilf",
            fw_bad == 0,
            f"{fw_total - fw_bad}/{fw_total} sampled (w,p,q) triples",
        )
    )

    kol_total = kol_bad = 0
    for k in rng.sample(range(1, 51), 12):
        runs = find_runs_bruteforce(gen_kolpakov_word(k))
        ps = sorted(rng.sample(range(1, 2 * k), min(4, 2 * k - 1)))
        for p in ps:
            kol_total += 1
            found = sum(1 for r in runs if r.period >= p)
            if found < k - p // 2:
                kol_bad += 1
    checks.append(
        (
            "kolpakov-large-period-runs",
            kol_bad == 0,
            f"{kol_total - kol_bad}/{kol_total} sampled (k,p) cells",
        )
    )
    return checks


def verify_exhaustive() -> list[Check]:
    checks: list[Check] = []
    for letters, max_n in (("ab", 14), ("abc", 9)):
        total = bad = 0
        for n in range(1, max_n + 1):
            for tup in itertools.product(letters, repeat=n):
                s = "".join(tup)
                expected = find_runs_bruteforce(s)
                for d in (2, 48):
                    total += 1
                    if set(run_search(s, d=d).runs) != expected:
                        bad += 1
        checks.append(
            (
                f"exhaustive-sigma{len(letters)}-n{max_n}",
                bad == 0,
                f"{total - bad}/{total} (string, d) cells",
            )
        )
    return checks


def verify_leafdet() -> list[Check]:
    run_groups: dict[tuple, frozenset] = {}
    lz_groups: dict[tuple, list[int]] = {}
    total = run_bad = lz_bad = 0
    for n in range(1, 9):
        for tup in itertools.product("abc", repeat=n):
            s = "".join(tup)
            total += 1

            report = run_search(s, record_entries=True)
            key = (n, report.transcript.key())
            answer = frozenset((r.start, r.end, r.period) for r in report.runs)
            if run_groups.setdefault(key, answer) != answer:
                run_bad += 1

            oracle = ComparisonOracle(as_symbols(s), record_entries=True)
            lengths, tr = lz_factorize_instrumented(oracle)
            lz_key = (n, tr.key())
            if not lz_equivalent(lz_groups.setdefault(lz_key, lengths), lengths):
                lz_bad += 1
    return [
        (
            "leaf-determinism-runs",
            run_bad == 0,
            f"{total - run_bad}/{total} strings, {len(run_groups)} transcripts",
        ),
        (
            "leaf-determinism-lz",
            lz_bad == 0,
            f"{total - lz_bad}/{total} strings, {len(lz_groups)} transcripts",
        ),
    ]


def verify_lowerbound() -> list[Check]:
    rng = random.Random(7)
    pert_total = pert_bad = 0
    floor_total = floor_bad = 0
    growth_ok = True
    growth_note = []
    for sigma in (8, 16):
        means = []
        for n in (120, 240):
            totals = []
            k = None
            for _ in range(20):
                inst = gen_adversarial(n, sigma, seed=rng.randrange(2**30))
                k = inst.k
                base = lz_factorize(inst.text)
                for which in range(1, inst.k + 1):
                    pert_total += 1
                    if lz_equivalent(base, lz_factorize(perturb_adversarial(inst, which))):
                        pert_bad += 1
                oracle = ComparisonOracle(inst.text, record_entries=False)
                _, tr = lz_factorize_instrumented(oracle)
                floor_total += 1
                if tr.charged_total < lower_bound_floor(n, sigma):
                    floor_bad += 1
                totals.append(tr.charged_total)
            means.append((k, sum(totals) / len(totals)))
        (k1, m1), (k2, m2) = means
        if (m2 - m1) / (k2 - k1) < 1.0:
            growth_ok = False
        growth_note.append(f"sigma={sigma}: +{(m2 - m1) / (k2 - k1):.1f} charged/query")
    return [
        (
            "perturbation-changes-parse",
            pert_bad == 0,
            f"{pert_total - pert_bad}/{pert_total} single-letter perturbations",
        ),
        (
            "charged-total-above-floor",
            floor_bad == 0,
            f"{floor_total - floor_bad}/{floor_total} instances",
        ),
        ("charge-grows-with-queries", growth_ok, "; ".join(growth_note)),
    ]


VERIFY_SUITES = {
    "lemmas": verify_lemmas,
    "exhaustive": verify_exhaustive,
    "leafdet": verify_leafdet,
    "lowerbound": verify_lowerbound,
}


def cmd_verify(args: argparse.Namespace) -> int:
    checks = VERIFY_SUITES[args.suite]()
    failed = 0
    lines = []
    for name, ok, detail in checks:
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += 0 if ok else 1
    lines.append(f"{len(checks) - failed}/{len(checks)} assertions passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


# -- parser ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runlab",
        description="Corpus generators, run/LZ drivers, benchmarks, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a deterministic corpus string")
    gen.add_argument("generator", choices=GENERATOR_NAMES)
    gen.add_argument("--n", type=int, required=True, help="target length")
    gen.add_argument("--sigma", type=int, default=2)
    gen.add_argument("--d", type=int, default=DEFAULT_LOOKAHEAD)
    gen.add_argument("--p", type=int, default=1, help="base length for power")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--base", default=None, help="explicit base for power")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    runs = sub.add_parser("runs", help="find all runs of the input")
    runs.add_argument("input", nargs="?", default=None, help="file or - for stdin")
    runs.add_argument("--d", type=int, default=DEFAULT_LOOKAHEAD)
    runs.add_argument("--engine", choices=("linear", "brute", "both"), default="linear")
    runs.add_argument("--out", default=None)
    runs.set_defaults(func=cmd_runs)

    lz = sub.add_parser("lz", help="Lempel-Ziv factor lengths of the input")
    lz.add_argument("input", nargs="?", default=None, help="file or - for stdin")
    lz.add_argument("--mode", choices=("plain", "instrumented"), default="plain")
    lz.add_argument("--out", default=None)
    lz.set_defaults(func=cmd_lz)

    bench = sub.add_parser("bench", help="comparison-budget CSV sweep")
    bench.add_argument("generator", choices=GENERATOR_NAMES)
    bench.add_argument("--n", required=True, help="comma list of lengths")
    bench.add_argument("--sigma", type=int, default=2)
    bench.add_argument("--d", type=int, default=DEFAULT_LOOKAHEAD)
    bench.add_argument("--p", type=int, default=1)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--repeats", type=int, default=1)
    bench.add_argument("--out", default=None)
    bench.set_defaults(func=cmd_bench)

    verify = sub.add_parser("verify", help="run an assertion suite")
    verify.add_argument("suite", choices=sorted(VERIFY_SUITES))
    verify.add_argument("--out", default=None)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
