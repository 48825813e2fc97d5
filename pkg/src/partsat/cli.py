"""Command-line front end: ``partsat <command> ...``.

JSON on stdout by default; ``--human`` prints aligned key/value tables.
Exit codes for ``decide``: 0 yes, 1 no, 3 inapplicable, 4 budget exceeded.
Parse and usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cnf, decider as dec, generators, nae, oracle, screen
from . import sigma_analysis as sigma

EXIT_CODES = {dec.YES: 0, dec.NO: 1, dec.INAPPLICABLE: 3}
EXIT_BUDGET = 4
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _load(args) -> cnf.Formula:
    try:
        return cnf.load(args.file, args.format, allow_duplicates=getattr(args, "permissive", False))
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None


def _parse_assignment(text: str, n: int) -> tuple[int, ...]:
    text = text.strip()
    if text == "all-false":
        return (-1,) * n
    if text == "all-true":
        return (1,) * n
    try:
        values = [int(v) for v in text.split(",")]
        return sigma.check_assignment(cnf.Formula(n, ()), values)
    except ValueError as exc:
        raise UsageError(f"bad assignment {text!r}: {exc}") from None


def _partition_spec(args) -> screen.PartitionSpec:
    if args.one_in_k:
        return screen.PartitionSpec(l=1)
    if args.l_in_k is not None:
        return screen.PartitionSpec(l=args.l_in_k)
    if args.mu is not None:
        return screen.PartitionSpec(mu=args.mu)
    raise UsageError("give --mu, --one-in-k or --l-in-k")


def _resolve(spec: screen.PartitionSpec, f: cnf.Formula) -> dec.Partition:
    try:
        return spec.resolve(f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _human(value, indent=0) -> str:
    pad = " " * indent
    if isinstance(value, dict):
        if not value:
            return pad + "-"
        width = max(len(str(k)) for k in value)
        lines = []
        for k, v in value.items():
            if isinstance(v, list) and v and isinstance(v[0], (dict, list)):
                lines.append(f"{pad}{str(k):<{width}}")
                lines.append(_human(v, indent + 2))
            elif isinstance(v, dict):
                lines.append(f"{pad}{str(k):<{width}}  " + ", ".join(f"{a}:{b}" for a, b in v.items()))
            elif isinstance(v, list):
                lines.append(f"{pad}{str(k):<{width}}  " + " ".join(map(str, v)))
            else:
                lines.append(f"{pad}{str(k):<{width}}  {v}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(_human(v, indent) if isinstance(v, (dict, list)) else pad + str(v) for v in value)
    return pad + str(value)


def _emit(obj, args) -> None:
    if getattr(args, "human", False):
        print(_human(obj))
    else:
        print(json.dumps(obj))


# --- commands ------------------------------------------------------------------

def cmd_stats(args) -> int:
    f = _load(args)
    _emit(f.stats.as_dict(), args)
    return 0


def cmd_classify(args) -> int:
    f = _load(args)
    _emit(f.flags.as_dict(), args)
    return 0


def cmd_sigma(args) -> int:
    f = _load(args)
    out = sigma.sigma_extremes(f).as_dict()
    if args.assign:
        x = _parse_assignment(args.assign, f.n)
        out = {
            "assignment": list(x),
            "sigma": sigma.sigma(f, x),
            "per_clause": sigma.sigma_per_clause(f, x),
            "profile": list(dec.clause_profile(f, x).nu),
            **out,
        }
    _emit(out, args)
    return 0


def cmd_decide(args) -> int:
    f = _load(args)
    p = _resolve(_partition_spec(args), f)
    try:
        d = dec.decide(f, p, args.budget)
    except dec.BudgetExceeded as exc:
        ext = sigma.sigma_extremes(f)
        _emit({"verdict": "budget_exceeded", "target": dec.target_total(p), "sigma_min": ext.sigma_min,
               "sigma_max": ext.sigma_max, "n_eq": exc.n_eq, "budget": exc.budget}, args)
        return EXIT_BUDGET
    _emit(d.as_dict(), args)
    return EXIT_CODES[d.verdict]


def cmd_oracle(args) -> int:
    f = _load(args)
    p = _resolve(_partition_spec(args), f)
    try:
        res = oracle.brute_partsat(f, p.mu, args.limit)
    except oracle.OracleLimitError as exc:
        raise UsageError(str(exc)) from None
    _emit({"mu": list(p.mu), **res.as_dict()}, args)
    return 0


def cmd_dist_check(args) -> int:
    f = _load(args)
    try:
        hist = sigma.sigma_histogram(f, args.limit)
    except sigma.EnumerationLimitError as exc:
        raise UsageError(str(exc)) from None
    applies = sigma.binomial_law_applies(f)
    rows = sigma.binomial_comparison(f, hist)
    matched = sum(obs == exp for _, obs, exp in rows)
    if applies:
        status = "PASS" if matched == len(rows) else "FAIL"
    else:
        status = "SKIP"
    if args.csv:
        Path(args.csv).write_text(sigma.histogram_csv(hist))
    if args.figure:
        sigma_n = f.n if applies else None
        from .plots import plot_sigma_histogram
        plot_sigma_histogram(hist, args.figure, sigma_n, title=Path(args.file).name)
    if args.human:
        print(f"{'sigma':>6} {'count':>10} {'binomial':>10}")
        for v, obs, exp in rows:
            mark = "" if obs == exp else "  *"
            print(f"{v:>6} {obs:>10} {exp:>10}{mark}")
        print(f"{status}: {matched}/{len(rows)} counts matched")
    else:
        print(json.dumps({
            "status": status,
            "applicable": applies,
            "matched": matched,
            "rows": [{"sigma": v, "count": obs, "binomial": exp} for v, obs, exp in rows],
        }))
    return 1 if status == "FAIL" else 0


def cmd_gen(args) -> int:
    kind = args.kind.replace("-", "_")
    params = {k: v for k, v in (("n", args.n), ("m", args.m), ("k", args.k), ("k_max", args.k_max),
                                ("p_max", args.p_max), ("name", args.name)) if v is not None}
    try:
        f = generators.generate(generators.GenSpec(kind, params, args.seed))
    except (KeyError, ValueError, generators.GenerationError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    text = cnf.write_matrix(f) if args.out_format == "matrix" else cnf.write_dimacs(f)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_nae_check(args) -> int:
    f = _load(args)
    x = _parse_assignment(args.assign, f.n)
    try:
        holds = nae.nae_condition(f, x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit({
        "nae_condition": holds,
        "quadratic_form": nae.quadratic_form(f, x),
        "sum_of_squares": nae.sum_of_squares_form(f, x),
        "two_m": 2 * f.m,
        "profile": list(dec.clause_profile(f, x).nu),
    }, args)
    return 0


def cmd_nae_sweep(args) -> int:
    f = _load(args)
    try:
        sweep = dec.nae_sweep(f, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(sweep.as_dict(), args)
    return 0


def cmd_mu_matrix(args) -> int:
    f = _load(args)
    try:
        sys.stdout.write(nae.mu_matrix_csv(f))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_screen(args) -> int:
    spec = _partition_spec(args)
    if not Path(args.directory).is_dir():
        raise UsageError(f"{args.directory} is not a directory")
    records = screen.screen_directory(args.directory, spec, args.jobs, args.budget, args.timing)
    text = screen.records_json(records) + "\n" if args.report_format == "json" else screen.records_csv(records)
    if args.output:
        Path(args.output).write_text(text, newline="")
    else:
        sys.stdout.write(text)
    counts = screen.summary(records)
    print("summary " + " ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    if args.figures:
        from .plots import plot_screen_summary
        plot_screen_summary(records, Path(args.figures) / "screen_summary.png")
    return 0


# --- parser --------------------------------------------------------------------

def _file_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("file")
    p.add_argument("--format", choices=("dimacs", "matrix"), help="override extension-based detection")
    p.add_argument("--permissive", action="store_true", help="keep duplicate literals in DIMACS clauses")
    p.add_argument("--human", action="store_true", help="tables instead of JSON")


def _partition_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu", help="comma-separated clause counts by number of true literals; 'm' = clause count")
    g.add_argument("--one-in-k", action="store_true", help="exactly one true literal per clause")
    g.add_argument("--l-in-k", type=int, metavar="L", help="exactly L true literals per clause")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partsat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    budget_help = "max candidate assignments (default 2^20 or $PARTSAT_BUDGET)"

    p = sub.add_parser("stats", help="occurrence statistics")
    _file_args(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("classify", help="class flags")
    _file_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sigma", help="sigma extremes, or sigma of one assignment")
    _file_args(p)
    p.add_argument("--assign", help="comma-separated +1/-1 values, or all-true / all-false")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("decide", help="decide a PART-SAT instance at a sigma extreme")
    _file_args(p)
    _partition_args(p)
    p.add_argument("--budget", type=int, help=budget_help)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("oracle", help="brute-force PART-SAT witnesses")
    _file_args(p)
    _partition_args(p)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("dist-check", help="sigma histogram against binomial(n, k)")
    _file_args(p)
    p.add_argument("--limit", type=int, default=sigma.ENUMERATION_LIMIT)
    p.add_argument("--csv", help="write the histogram as sigma,count rows")
    p.add_argument("--figure", help="write a histogram figure (PNG/PDF by extension)")
    p.set_defaults(func=cmd_dist_check)

    p = sub.add_parser("gen", help="write a fixture or generated formula",
                       description="fixtures: " + ", ".join(generators.FIXTURES))
    p.add_argument("kind", choices=("fixture", "square-mixed-read3", "balanced-regular", "random-cnf",
                                    "random-class"))
    p.add_argument("name", nargs="?", help="fixture name")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--p-max", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-format", choices=("dimacs", "matrix"), default="dimacs")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("nae-check", help="NAE necessary condition for one assignment")
    _file_args(p)
    p.add_argument("--assign", required=True)
    p.set_defaults(func=cmd_nae_check)

    p = sub.add_parser("nae-sweep", help="decide {0,mu,m-mu,0} for every mu")
    _file_args(p)
    p.add_argument("--budget", type=int, help=budget_help)
    p.set_defaults(func=cmd_nae_sweep)

    p = sub.add_parser("mu-matrix", help="pairwise mu coefficients as CSV")
    _file_args(p)
    p.set_defaults(func=cmd_mu_matrix)

    p = sub.add_parser("screen", help="screen a directory of formulas")
    p.add_argument("directory")
    _partition_args(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, help=budget_help)
    p.add_argument("--report-format", choices=("csv", "json"), default="csv")
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (makes output run-dependent)")
    p.add_argument("-o", "--output")
    p.add_argument("--figures", help="directory for summary figures")
    p.set_defaults(func=cmd_screen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"partsat {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
