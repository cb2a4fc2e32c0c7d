"""Command-line front end.

Exit codes: 0 symmetric (or success), 1 usage / parse / I/O error,
2 certified negative, 3 inconclusive, 4 interval budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .campaign import PROPERTIES, Config, min_ratio_denominator, run_campaign
from .ifs import BudgetExceeded, cover, hull
from .plot import cover_csv, cover_svg
from .symmetry import (
    AttractorsDiffer,
    InconclusiveVerdict,
    PipelineTrace,
    PreconditionFailedVerdict,
    Symmetric,
    mirror_candidate,
    theorem_pipeline,
    DEFAULT_EPSILON,
    DEFAULT_K_MAX,
)
from .textio import IfsDomainError, IfsParseError, format_ifs, read_ifs

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")
    return value


def _fmt(x: Fraction, decimal: bool = False) -> str:
    return f"{x} ({float(x):.12g})" if decimal else str(x)


def verdict_dict(verdict) -> dict:
    if isinstance(verdict, Symmetric):
        return {"kind": verdict.kind, "center": str(verdict.certificate.attractor_center)}
    if isinstance(verdict, PreconditionFailedVerdict):
        return {"kind": verdict.kind, "name": verdict.name, "detail": verdict.detail}
    if isinstance(verdict, AttractorsDiffer):
        return {"kind": verdict.kind, "level": verdict.level, "lower_bound": str(verdict.lower_bound)}
    return {"kind": verdict.kind, "detail": verdict.detail}


def exit_code_for(verdict) -> int:
    if isinstance(verdict, Symmetric):
        return EXIT_OK
    if isinstance(verdict, (PreconditionFailedVerdict, AttractorsDiffer)):
        return EXIT_NEGATIVE
    if isinstance(verdict, InconclusiveVerdict) and verdict.detail.startswith("budget"):
        return EXIT_BUDGET
    return EXIT_INCONCLUSIVE


def pair_report(phi, psi, epsilon, k_max, timings: bool = False) -> tuple[dict, int]:
    trace = PipelineTrace()
    t0 = time.perf_counter()
    verdict = theorem_pipeline(phi, psi, epsilon, k_max, trace=trace)
    elapsed = time.perf_counter() - t0
    cert = None
    if isinstance(verdict, Symmetric):
        c = verdict.certificate
        cert = {
            "C": str(c.C),
            "digit_center": str(c.digit_center),
            "attractor_center": str(c.attractor_center),
            "checks": list(c.checks),
        }
    test = trace.attractor_test
    covers = {
        "symmetry_level": trace.symmetry_level,
        "symmetry_intervals": phi.n ** trace.symmetry_level if trace.symmetry_level is not None else None,
        "attractor_test_level": test.level if test is not None else None,
    }
    report = {
        "input": {"phi": format_ifs(phi), "psi": format_ifs(psi), "epsilon": str(epsilon), "k_max": k_max},
        "verdict": verdict_dict(verdict),
        "certificate": cert,
        "steps": [{"step": s, "outcome": o} for s, o in trace.steps],
        "covers": covers,
        "timings": {"pipeline_ms": round(elapsed * 1000, 3)} if timings else {},
        "version": __version__,
        "seed": None,
    }
    return report, exit_code_for(verdict)


def _emit(report: dict, as_json: bool, decimal: bool = False) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key in ("phi", "psi"):
        if key in report.get("input", {}):
            print(f"{key}: {report['input'][key]}")
    v = report["verdict"]
    print("verdict: " + v["kind"])
    for key, value in v.items():
        if key != "kind":
            if decimal and key in ("center", "lower_bound"):
                value = _fmt(Fraction(value), True)
            print(f"  {key}: {value}")
    if report.get("certificate"):
        for key, value in report["certificate"].items():
            if isinstance(value, list):
                value = ", ".join(value)
            elif decimal:
                value = _fmt(Fraction(value), True)
            print(f"certificate.{key}: {value}")
    for step in report.get("steps", []):
        print(f"step {step['step']}: {step['outcome']}")
    for key, value in report.get("timings", {}).items():
        print(f"timing.{key}: {value}")


def _load(path: str):
    try:
        return read_ifs(path)
    except (IfsParseError, IfsDomainError) as exc:
        print(f"{path}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
    return None


def cmd_verify_pair(args) -> int:
    phi, psi = _load(args.phi), _load(args.psi)
    if phi is None or psi is None:
        return EXIT_USAGE
    report, code = pair_report(phi, psi, args.epsilon, args.k_max, args.timings)
    _emit(report, args.json, args.decimal)
    return code


def cmd_mirror(args) -> int:
    phi = _load(args.phi)
    if phi is None:
        return EXIT_USAGE
    if phi.ratio < 0:
        print(f"{args.phi}: ratio {phi.ratio} is negative; pass the positive-ratio system as --phi "
              "(swap the roles of the two systems)", file=sys.stderr)
        return EXIT_USAGE
    psi = mirror_candidate(phi)
    print(format_ifs(psi))
    if not args.check:
        return EXIT_OK
    report, code = pair_report(phi, psi, args.epsilon, args.k_max, args.timings)
    _emit(report, args.json)
    return code


def cmd_cover(args) -> int:
    phi = _load(args.phi)
    if phi is None:
        return EXIT_USAGE
    try:
        cv = cover(phi, args.k)
    except BudgetExceeded as exc:
        print(f"cover: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.format == "csv":
        out = cover_csv(cv)
    else:
        out = cover_svg(cv, hull(phi), f"{format_ifs(phi)}  level {args.k}")
    if args.output in (None, "-"):
        sys.stdout.write(out)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def campaign_report(seed: int, cases: int, cfg: Config) -> tuple[dict, bool]:
    result = run_campaign(seed, cases, cfg)
    props = {}
    for name in PROPERTIES:
        t = result.tallies[name]
        entry = {"passed": t.passed, "failed": t.failed}
        if t.smallest is not None:
            entry["counterexample"] = t.smallest[1]
        props[name] = entry
    report = {
        "input": {"cases": cases, "n_max": cfg.n_max, "r_den_max": cfg.r_den_max},
        "verdict": {"kind": "pass" if result.ok else "fail"},
        "certificate": None,
        "properties": props,
        "timings": {},
        "version": __version__,
        "seed": seed,
    }
    return report, result.ok


def cmd_proptest(args) -> int:
    if args.cases < 1:
        print("proptest: --cases must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.n_max < 2 or args.r_den_max < 2:
        print("proptest: --n-max and --r-den-max must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    # the refutation property draws asymmetric systems with up to max(n_max, 3) maps
    need = min_ratio_denominator(max(args.n_max, 3), symmetric=False)
    if args.r_den_max < need:
        print(f"proptest: --r-den-max must be at least {need} for --n-max {args.n_max}", file=sys.stderr)
        return EXIT_USAGE
    cfg = Config(n_max=args.n_max, r_den_max=args.r_den_max)
    report, ok = campaign_report(args.seed, args.cases, cfg)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(f"seed: {args.seed}  cases: {args.cases}  n_max: {cfg.n_max}  r_den_max: {cfg.r_den_max}")
        for name, entry in report["properties"].items():
            status = "PASS" if entry["failed"] == 0 else "FAIL"
            print(f"{status} {name}: {entry['passed']} passed, {entry['failed']} failed")
            if "counterexample" in entry:
                print(f"    counterexample: {entry['counterexample']}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homifs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"homifs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_opts(p):
        p.add_argument("--epsilon", type=_rational_arg, default=DEFAULT_EPSILON,
                       help="Hausdorff resolution for the attractor comparison (default 1/1000000)")
        p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX, help="deepest cover level to try")
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")

    p = sub.add_parser("verify-pair", help="run the full symmetry pipeline on two systems")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--decimal", action="store_true", help="also show decimal approximations")
    pair_opts(p)
    p.set_defaults(func=cmd_verify_pair)

    p = sub.add_parser("mirror", help="print the unique mirror candidate of a positive-ratio system")
    p.add_argument("--phi", required=True)
    p.add_argument("--check", action="store_true", help="also run the pipeline on the pair")
    pair_opts(p)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("cover", help="write the level-k cover as CSV or SVG")
    p.add_argument("--phi", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("proptest", help="seeded randomized property campaign")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cases", type=int, required=True)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--r-den-max", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_proptest)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "k", 0) is not None and getattr(args, "k", 0) < 0:
        print("cover: -k must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:  # environment misconfiguration, e.g. a bad budget variable
        print(f"homifs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"homifs: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
