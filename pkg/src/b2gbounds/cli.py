"""Command-line front end: reproducible experiments over the library.

Subcommands
    analyze   functionals + asymptotic constant of a series file
    bound     finite-N size bound for a series file at given N, g
    yu        one-parameter family constant (truncated or limit)
    optimize  box-constrained maximization of rho for the big family
    search    exact F(g, N) by branch and bound (optionally a CSV table)
    verify    self-check suites (identities / lemmas / bounds)

Every numeric output is JSON with 17-significant-digit decimals, so repeated
runs with identical flags are byte-identical.  When --out is given, a run
manifest (command, inputs, outputs, tool version, timestamp, tolerances) is
written alongside the output file; the timestamp is the only field excluded
from reproducibility guarantees.

Exit codes: 0 success, 2 input error, 3 hypothesis violation,
4 budget/tolerance exhausted, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, jsonutil
from .bounds import max_size_bound
from .combinatorics import (
    IntSet,
    d_identity_residual,
    diff_profile,
    exhaustive_f,
    f_table,
    s_comb,
    s_dft,
    sdft_inequality_scan,
)
from .errors import (
    BracketError,
    BudgetError,
    DomainError,
    HypothesisError,
    InputError,
    ToleranceError,
)
from .family import initial_params, optimize, to_series
from .series import (
    CosineSeries,
    coefficient_decay_bound,
    eval_w,
    fourier_coefficients,
    integral_i1,
    integral_i2,
    parseval_tail_bound,
    summarize,
)
from .yu import LIMIT, YuParams, yu_evaluate, yu_series

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
        return args.func(args, config)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HypothesisError, DomainError) as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BudgetError as exc:
        print(
            f"budget exhausted: {exc} (nodes={exc.nodes}, "
            f"lower bound {exc.size} via {list(exc.witness.elems)})",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    except (ToleranceError, BracketError) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="b2g",
        description="Upper bounds for B2[g] sets via nonnegative cosine series",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value defaults file; flags win")
        p.add_argument("--out", help="write the JSON result to this path")
        p.add_argument(
            "--threads",
            type=int,
            default=None,
            help="worker pool size (default: B2G_THREADS or all cores)",
        )

    p = sub.add_parser("analyze", help="functionals of a series file")
    p.add_argument("series_file")
    p.add_argument(
        "--require-negative-i1",
        action="store_true",
        help="fail (exit 3) unless I1 < 0",
    )
    p.add_argument(
        "--emit-samples",
        type=int,
        default=None,
        metavar="K",
        help="also write a CSV of (t, w(t)) at K+1 uniform points on [0,1]",
    )
    p.add_argument("--samples-out", help="CSV path for --emit-samples")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bound", help="finite-N size bound for a series")
    p.add_argument("series_file")
    p.add_argument("--n", required=True, help="interval endpoint N")
    p.add_argument("--g", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("yu", help="one-parameter family constant")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", help="truncation order M >= 0")
    group.add_argument("--limit", action="store_true", help="M -> infinity")
    p.add_argument("--tol", type=float, default=None, help="certified tolerance")
    common(p)
    p.set_defaults(func=cmd_yu)

    p = sub.add_parser("optimize", help="maximize rho over the big family")
    p.add_argument("--m", type=int, required=True, help="family order M >= 0")
    p.add_argument(
        "--init",
        default="yu-like",
        help='"paper", "yu-like", "random", or a params JSON path',
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--grad-tol", type=float, default=None)
    p.add_argument(
        "--checkpoint",
        type=int,
        default=0,
        metavar="EVERY",
        help="write a resumable checkpoint every EVERY iterations",
    )
    p.add_argument("--checkpoint-path")
    p.add_argument("--resume", help="params/checkpoint JSON to start from")
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("search", help="exact F(g, N) by branch and bound")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--budget", type=int, default=None, help="node limit")
    p.add_argument(
        "--table",
        action="store_true",
        help="emit CSV rows (g, N, F, witness) for all N up to --n",
    )
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument(
        "--suite",
        choices=["identities", "lemmas", "bounds", "all"],
        default="all",
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--nmax", type=int, default=None, help="enumeration depth for lemma scans"
    )
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


# -- plumbing ------------------------------------------------------------


def _load_config(path: str) -> dict:
    """Flat key = value lines; '#' comments; values read as strings."""
    config = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise InputError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                config[key.strip()] = value.strip().strip('"')
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    return config


def _resolve(flag_value, config, key, default, cast):
    """Precedence: explicit flag > config file > default."""
    if flag_value is not None:
        return flag_value
    if key in config:
        try:
            return cast(config[key])
        except ValueError as exc:
            raise InputError(f"config key {key}={config[key]!r}: {exc}") from exc
    return default


def _threads(args, config) -> int:
    value = _resolve(args.threads, config, "threads", None, int)
    if value is None:
        env = os.environ.get("B2G_THREADS")
        if env:
            try:
                value = int(env)
            except ValueError as exc:
                raise InputError(f"B2G_THREADS={env!r} is not an integer") from exc
    if value is None:
        value = os.cpu_count() or 1
    if value < 1:
        raise InputError(f"threads must be >= 1, got {value}")
    return value


def _parse_count(text: str, what: str) -> int:
    """Integer flag value, allowing scientific forms like 1e6."""
    try:
        value = int(text)
    except ValueError:
        try:
            as_float = float(text)
        except ValueError as exc:
            raise InputError(f"{what} must be an integer, got {text!r}") from exc
        value = int(as_float)
        if value != as_float:
            raise InputError(f"{what} must be an integer, got {text!r}")
    return value


def _emit(args, obj, tolerances: dict | None = None) -> None:
    """Print the JSON result; mirror it to --out plus a manifest if asked."""
    text = jsonutil.dumps(obj)
    sys.stdout.write(text)
    if args.out:
        jsonutil.write_text_atomic(args.out, text)
        _write_manifest(args, [args.out], tolerances or {})


def _write_manifest(args, outputs, tolerances) -> None:
    skip = {"func", "config", "out", "command"}
    inputs = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in skip and not k.startswith("_")
    }
    manifest = {
        "command": args.command,
        "inputs": inputs,
        "outputs": [os.path.abspath(p) for p in outputs],
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "tolerances": tolerances,
    }
    jsonutil.write_text_atomic(args.out + ".manifest.json", jsonutil.dumps(manifest))


# -- subcommands ----------------------------------------------------------


def cmd_analyze(args, config) -> int:
    series = jsonutil.load_series(args.series_file)
    summary = summarize(series)
    negative = summary.i1 < 0
    if args.require_negative_i1 and not negative:
        raise HypothesisError(
            f"I1 = {summary.i1!r} is not negative for {args.series_file}"
        )
    obj = {
        "summary": {
            "i1": summary.i1,
            "i2": summary.i2,
            "rho": summary.rho,
            "w0": summary.w0,
            "a_upper": summary.a_upper,
        },
        "i1_negative": negative,
        "constant": 2.0 * (1.0 - summary.rho) if negative else None,
    }
    if args.emit_samples is not None:
        if args.emit_samples < 1:
            raise InputError("--emit-samples needs K >= 1")
        path = args.samples_out or (args.out + ".samples.csv" if args.out else None)
        if path is None:
            raise InputError("--emit-samples requires --samples-out or --out")
        grid = np.arange(args.emit_samples + 1) / args.emit_samples
        values = eval_w(series, grid)
        buf = io.StringIO()
        buf.write("t,w\n")
        for t, w in zip(grid, values):
            buf.write(f"{jsonutil.fmt17(t)},{jsonutil.fmt17(w)}\n")
        jsonutil.write_text_atomic(path, buf.getvalue())
        obj["samples"] = os.path.abspath(path)
    _emit(args, obj)
    return EXIT_OK


def cmd_bound(args, config) -> int:
    series = jsonutil.load_series(args.series_file)
    n = _parse_count(args.n, "--n")
    report = max_size_bound(series, n, args.g)
    _emit(args, report.to_obj())
    return EXIT_OK


def cmd_yu(args, config) -> int:
    tol = _resolve(args.tol, config, "tol", 1e-9, float)
    truncation = LIMIT if args.limit else _parse_count(args.m, "--m")
    params = YuParams(lam=args.lam, truncation=truncation)
    result = yu_evaluate(params, tol)
    _emit(args, result.to_obj(), tolerances={"tol": tol})
    return EXIT_OK


def cmd_optimize(args, config) -> int:
    max_iter = _resolve(args.max_iter, config, "max-iter", 20000, int)
    grad_tol = _resolve(args.grad_tol, config, "grad-tol", 1e-10, float)
    init = args.init
    if init not in ("paper", "yu-like", "random") and (
        init.endswith(".json") or os.path.exists(init)
    ):
        init = jsonutil.load_params(init)
    checkpoint_path = args.checkpoint_path
    if args.checkpoint > 0 and not checkpoint_path:
        if not args.out:
            raise InputError("--checkpoint requires --checkpoint-path or --out")
        checkpoint_path = args.out + ".checkpoint.json"
    result = optimize(
        args.m,
        init,
        max_iter=max_iter,
        grad_tol=grad_tol,
        seed=args.seed,
        checkpoint_every=args.checkpoint,
        checkpoint_path=checkpoint_path,
        resume=args.resume,
    )
    obj = jsonutil.params_to_obj(
        result.params,
        extra={
            "rho": result.rho,
            "constant": result.constant,
            "iterations": result.iterations,
            "converged": result.converged,
        },
    )
    _emit(args, obj, tolerances={"grad_tol": grad_tol})
    return EXIT_OK


def cmd_search(args, config) -> int:
    n = _parse_count(args.n, "--n")
    threads = _threads(args, config)
    if args.table:
        rows = f_table([args.g], n, threads=threads)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["g", "N", "F", "witness"])
        for g, n_val, size, elems in rows:
            writer.writerow([g, n_val, size, " ".join(map(str, elems))])
        sys.stdout.write(buf.getvalue())
        if args.out:
            jsonutil.write_text_atomic(args.out, buf.getvalue())
            _write_manifest(args, [args.out], {})
        return EXIT_OK
    size, witness = exhaustive_f(args.g, n, budget=args.budget, threads=threads)
    obj = {
        "g": args.g,
        "n": n,
        "F": size,
        "witness": jsonutil.intset_to_obj(witness),
    }
    _emit(args, obj)
    return EXIT_OK


# -- verification suites ---------------------------------------------------


def _random_series(rng, k_max=10, fmax=30.0, bmax=2.0) -> CosineSeries:
    k = int(rng.integers(1, k_max + 1))
    coeffs = rng.uniform(0.0, bmax, k)
    freqs = rng.uniform(0.0, fmax, k)
    return CosineSeries(list(zip(coeffs, freqs)))


def _random_intset(rng, n_max=30) -> IntSet:
    n = int(rng.integers(1, n_max + 1))
    mask = rng.random(n + 1) < 0.4
    return IntSet(elems=tuple(np.flatnonzero(mask)), n=n)


def suite_identities(seed, pairs=150):
    rng = np.random.default_rng(seed)
    checks = []
    worst_res, worst_gap, profile_bad = 0.0, 0.0, 0
    for _ in range(pairs):
        a = _random_intset(rng)
        series = _random_series(rng)
        lhs_scale = 1.0 + abs(
            sum(
                count * eval_w(series, d / a.n)
                for d, count in diff_profile(a).counts.items()
            )
        )
        worst_res = max(worst_res, d_identity_residual(a, series) / lhs_scale)
        d_end = diff_profile(a).counts.get(a.n, 0)
        gap = abs(s_dft(a) - (s_comb(a) + 2.0 * d_end * d_end))
        worst_gap = max(worst_gap, gap)
        profile = diff_profile(a).counts
        if sum(profile.values()) != a.size**2 or profile.get(0, 0) != a.size:
            profile_bad += 1
        if any(profile.get(-k, 0) != v for k, v in profile.items()):
            profile_bad += 1
    checks.append(
        (
            "difference-sum identity",
            worst_res < 1e-9,
            f"max relative residual {worst_res:.3e} over {pairs} pairs",
        )
    )
    checks.append(
        (
            "dft vs combinatorial count",
            worst_gap < 1e-9,
            f"max |s_dft - s_comb - 2 d(N)^2| = {worst_gap:.3e}",
        )
    )
    checks.append(
        ("difference profile invariants", profile_bad == 0, f"{profile_bad} bad")
    )
    return checks


def suite_lemmas(seed, nmax=14):
    rng = np.random.default_rng(seed)
    checks = []

    decay_bad = 0
    for _ in range(10):
        series = _random_series(rng, k_max=8, fmax=10.0, bmax=1.0)
        summary = summarize(series)
        coeffs = fourier_coefficients(series, 2000)
        for m in range(1, 2001):
            if abs(coeffs[m]) > coefficient_decay_bound(summary.a_upper, m) + 1e-12:
                decay_bad += 1
    checks.append(
        ("coefficient decay bound", decay_bad == 0, f"{decay_bad} violations")
    )

    parseval_bad = 0
    worst = 0.0
    for _ in range(10):
        series = _random_series(rng, k_max=6, fmax=8.0, bmax=1.0)
        i1 = integral_i1(series)
        i2 = integral_i2(series)
        summary = summarize(series)
        m_star = 20000
        coeffs = fourier_coefficients(series, m_star)
        tail = parseval_tail_bound(summary.a_upper, m_star)
        gap = abs(float(np.sum(coeffs[1:] ** 2)) - 2.0 * (i2 - i1 * i1))
        worst = max(worst, gap - tail)
        if gap > 1e-6 + tail:
            parseval_bad += 1
    checks.append(
        (
            "parseval within tail-bounded 1e-6",
            parseval_bad == 0,
            f"max excess over tail {worst:.3e}",
        )
    )

    for g in (1, 2):
        report = sdft_inequality_scan(g, nmax)
        checks.append(
            (
                f"s_dft <= (2g-1)|A|^2, g={g}, N<={nmax}",
                report.violations == 0,
                f"{report.checked} sets, max ratio {report.max_ratio:.4f} "
                f"of {2 * g - 1}",
            )
        )
    return checks


def suite_bounds(seed, threads=1):
    checks = []
    suite = [
        ("single term 3/4", CosineSeries([(1.0, 0.75)])),
        ("yu truncated", yu_series(YuParams(0.75, 10))),
        ("family paper prefix", to_series(initial_params(8, "paper"))),
    ]
    table = f_table([1, 2], 16, threads=threads)
    sound_bad = []
    for name, series in suite:
        for g, n_val, size, _ in table:
            if n_val < 1:
                continue
            report = max_size_bound(series, n_val, g)
            if size > report.max_size:
                sound_bad.append((name, g, n_val, size, report.max_size))
    checks.append(
        (
            "exhaustive F <= finite-N bound",
            not sound_bad,
            f"{len(sound_bad)} violations" + (f", first {sound_bad[0]}" if sound_bad else ""),
        )
    )

    mono_bad = 0
    for name, series in suite:
        for n_val in (10, 100, 1000):
            sizes = [max_size_bound(series, n_val, g).max_size for g in (1, 2, 3)]
            if sizes != sorted(sizes):
                mono_bad += 1
    checks.append(("bound nondecreasing in g", mono_bad == 0, f"{mono_bad} bad"))

    drift_bad = 0
    details = []
    for name, series in suite[:2]:
        target = math.sqrt(2.0 * (1.0 - summarize(series).rho))
        gaps = [
            abs(max_size_bound(series, n_val, 2).coefficient - target)
            for n_val in (10**4, 10**6, 10**8)
        ]
        if not (gaps[0] >= gaps[1] >= gaps[2]):
            drift_bad += 1
        details.append(f"{name}: gaps {gaps[0]:.2e} > {gaps[1]:.2e} > {gaps[2]:.2e}")
    checks.append(
        ("coefficient converges to asymptotic", drift_bad == 0, "; ".join(details))
    )
    return checks


def cmd_verify(args, config) -> int:
    seed = _resolve(args.seed, config, "seed", 0, int)
    nmax = _resolve(args.nmax, config, "nmax", 14, int)
    threads = _threads(args, config)
    suites = {
        "identities": lambda: suite_identities(seed),
        "lemmas": lambda: suite_lemmas(seed, nmax),
        "bounds": lambda: suite_bounds(seed, threads),
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    failures = 0
    for name in names:
        for check, passed, detail in suites[name]():
            verdict = "PASS" if passed else "FAIL"
            print(f"[{name}] {verdict} {check}: {detail}")
            failures += 0 if passed else 1
    print(f"{'all checks passed' if failures == 0 else f'{failures} FAILED'}")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
