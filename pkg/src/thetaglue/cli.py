# Command-line surface: series, identity suites, lattice theta series, sym expansion, audits, spec files and settings.

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import asdict
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .core import audit, identities
from .core.diagnostics import CheckResult, all_asserted_pass, diff_series, format_mismatches
from .core.enumeration import theta_by_enumeration
from .core.errors import BoundsTooLarge, NonIntegerResult, SizeMismatch, SpecError, UnknownSeries
from .core.lattice_spec import Family, LatticeSpec
from .core.lattices import (
    check_even_unimodular,
    glue_generators,
    theorem_terms,
    theta_by_cosets,
    theta_by_theorem,
)
from .core.modforms import series_by_name
from .core.qseries import QUARTERS_PER_POWER, QSeries, quarters
from .core.symexpand import SymPattern, assignment_count, expand_symbolic
from .settings import (
    OUTPUT_FORMATS,
    SettingsError,
    ToolkitSettings,
    apply_assignments,
    load_settings,
    save_settings,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BAD_ORDER = 3
EXIT_TOO_LARGE = 4

METHODS = ("cosets", "theorem", "enum")
AUDIT_KINDS = ("specializations", "niemeier", "counts", "theorems")


class InvalidOrder(ValueError):
    """--order or --nmax outside its range."""


def build_parser(settings: ToolkitSettings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=settings.default_order,
                        help=f"Truncation in q-powers (default: {settings.default_order}).")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=settings.output_format, dest="fmt",
                        help="Output format for series and reports.")
    common.add_argument("--out", type=Path, default=None, help="Write the output here instead of stdout.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG on stderr.")

    p = argparse.ArgumentParser(prog="thetaglue", description="Exact q-series and theta series of glued D-lattices.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("series", parents=[common], help="Print a named series.")
    s.add_argument("name", help="theta2 | theta3 | theta4 | E4 | Delta24 | h:<n> | rho:<n>")

    s = sub.add_parser("identities", parents=[common], help="Run the h/rho identity suites.")
    s.add_argument("--nmax", type=int, default=10, help="Largest index checked (default: 10).")

    s = sub.add_parser("lattice-theta", parents=[common], help="Theta series of a glued lattice.")
    s.add_argument("--spec", type=Path, required=True, help="Lattice spec JSON file.")
    s.add_argument("--methods", default="cosets,theorem", help="Comma list from cosets,theorem,enum.")
    s.add_argument("--reading", choices=("literal", "extended"), default="literal",
                   help="Summation ranges used by the theorem method.")

    s = sub.add_parser("sym-expand", parents=[common], help="List the summands of a sym pattern.")
    s.add_argument("pattern", nargs="?", help="e.g. h:2:+1,rho:1:-1,rho:1:-1")
    s.add_argument("--k", type=int, default=None, help="Number of indices m_1..m_k.")
    s.add_argument("--delta", type=int, default=0, help="Power of Delta24 in front of the pattern.")
    s.add_argument("--spec", type=Path, default=None, help="Expand every term of a spec's theorem display.")
    s.add_argument("--reading", choices=("literal", "extended"), default="literal")

    s = sub.add_parser("audit", parents=[common], help="Audit reports.")
    s.add_argument("kind", choices=AUDIT_KINDS)
    s.add_argument("--lmax", type=int, default=8, help="Largest l for the counts audit (default: 8).")

    s = sub.add_parser("new-spec", parents=[common], help="Write a lattice spec JSON file.")
    s.add_argument("path", type=Path, help="Where to write the spec.")
    s.add_argument("--family", choices=[f.value for f in Family], required=True)
    s.add_argument("--m", required=True, help="Comma list of block parameters, e.g. 1,1,1.")
    s.add_argument("--epsilon", default=0, help="0 or 1, FOUR_BLOCK only.")

    s = sub.add_parser("settings", parents=[common], help="Show or change the saved defaults.")
    s.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", dest="assignments",
                   help="Change one setting and save; may be repeated.")
    return p


def format_series(series: QSeries, fmt: str, name: str = "") -> str:
    if fmt == "qs":
        return series.to_text()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["exponent", "coefficient"])
        writer.writerows(series.to_rows())
        return buf.getvalue()
    lines = [f"# {name} (known below q^{Fraction(series.trunc, QUARTERS_PER_POWER)})"]
    lines.extend(f"q^{e}\t{c}" for e, c in series.to_rows())
    return "\n".join(lines) + "\n"


def format_report(rows: List[CheckResult], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["name", "status", "asserted", "detail"], lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({"name": r.name, "status": r.status, "asserted": r.asserted, "detail": r.detail})
        return buf.getvalue()
    width = max((len(r.name) for r in rows), default=0)
    lines = [f"{r.status:<4}  {r.name:<{width}}  {r.detail}".rstrip() for r in rows]
    failed = sum(1 for r in rows if r.asserted and not r.passed)
    info = sum(1 for r in rows if not r.asserted and not r.passed)
    lines.append(f"{len(rows)} checks, {failed} failed, {info} informational mismatches")
    return "\n".join(lines) + "\n"


def _trunc(order: int) -> int:
    if order < 1:
        raise InvalidOrder(f"order must be a positive number of q-powers, got {order}")
    return quarters(order)


def run_series(args, settings: ToolkitSettings) -> tuple[int, str]:
    series = series_by_name(args.name, _trunc(args.order))
    return EXIT_OK, format_series(series, args.fmt, args.name)


def run_identities(args, settings: ToolkitSettings) -> tuple[int, str]:
    if args.nmax < 3:
        raise InvalidOrder(f"nmax must be at least 3, got {args.nmax}")
    rows = identities.run_identities(args.nmax, _trunc(args.order))
    return (EXIT_OK if all_asserted_pass(rows) else EXIT_FAILED), format_report(rows, args.fmt)


def run_lattice_theta(args, settings: ToolkitSettings) -> tuple[int, str]:
    trunc = _trunc(args.order)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown or not methods:
        raise SpecError(f"unknown methods {unknown}, choose from {','.join(METHODS)}")
    spec = LatticeSpec.load(args.spec)

    out = [f"# {spec.describe()}"]
    out.extend(f"# generator {i + 1}: {' '.join(c.value for c in g)}" for i, g in enumerate(glue_generators(spec)))
    gram = check_even_unimodular(spec)
    out.append(f"# gram: rank={gram.rank} det={gram.det} integral={gram.integral} even={gram.even} "
               f"{'PASS' if gram.passed else 'FAIL'}{' ' + gram.error if gram.error else ''}")

    results: dict[str, QSeries] = {}
    failures = []
    for method in methods:
        if method == "cosets":
            results[method] = theta_by_cosets(spec, trunc)
        elif method == "theorem":
            try:
                results[method] = theta_by_theorem(spec, trunc, args.reading)
            except NonIntegerResult as exc:
                failures.append(f"theorem: {exc}")
        else:
            enum_trunc = min(trunc, quarters(settings.enum_order))
            results[method] = theta_by_enumeration(spec, enum_trunc, settings.enum_max_points, settings.max_workers)

    for method, series in results.items():
        out.append(format_series(series, args.fmt, method).rstrip("\n"))
    names = list(results)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            mismatches = diff_series(results[a], results[b], a, b, limit=5)
            status = "agree" if not mismatches else "DISAGREE " + format_mismatches(mismatches)
            out.append(f"# {a} vs {b}: {status}")
            if mismatches:
                failures.append(f"{a} vs {b}")
    out.extend(f"# failed: {f}" for f in failures)
    ok = not failures and gram.passed
    return (EXIT_OK if ok else EXIT_FAILED), "\n".join(out) + "\n"


def run_sym_expand(args, settings: ToolkitSettings) -> tuple[int, str]:
    lines = []
    if args.spec is not None:
        spec = LatticeSpec.load(args.spec)
        display = theorem_terms(spec, args.reading)
        total = 0
        for term in display.terms:
            summands = expand_symbolic(term, spec.k)
            total += len(summands)
            lines.append(f"# coefficient {term.prefactor_rational}, {len(summands)} summands")
            lines.extend(summands)
        lines.append(f"count: {total}")
        return EXIT_OK, "\n".join(lines) + "\n"
    if not args.pattern:
        raise SpecError("sym-expand needs a pattern or --spec")
    try:
        pattern = SymPattern.parse(args.pattern, args.delta)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    k = args.k if args.k is not None else pattern.k
    summands = expand_symbolic(pattern, k)
    lines.extend(summands)
    lines.append(f"count: {len(summands)} (formula {assignment_count(pattern)})")
    return EXIT_OK, "\n".join(lines) + "\n"


def run_audit(args, settings: ToolkitSettings) -> tuple[int, str]:
    if args.kind == "counts":
        if args.lmax < 1:
            raise InvalidOrder(f"lmax must be positive, got {args.lmax}")
        rows = audit.counts_report(args.lmax)
    else:
        trunc = _trunc(args.order)
        if args.kind == "specializations":
            rows = audit.specializations_report(trunc)
        elif args.kind == "niemeier":
            rows = audit.niemeier_report(trunc)
        else:
            rows = audit.theorem_report(trunc)
    return (EXIT_OK if all_asserted_pass(rows) else EXIT_FAILED), format_report(rows, args.fmt)


def run_new_spec(args, settings: ToolkitSettings) -> tuple[int, str]:
    spec = LatticeSpec.from_dict({"family": args.family, "m": args.m, "epsilon": args.epsilon})
    spec.save(args.path)
    return EXIT_OK, f"# wrote {args.path}\n# {spec.describe()}\n"


def run_settings(args, settings: ToolkitSettings) -> tuple[int, str]:
    if args.assignments:
        settings = apply_assignments(settings, args.assignments)
        save_settings(settings)
    return EXIT_OK, json.dumps(asdict(settings), indent=2) + "\n"


VERBS = {
    "series": run_series,
    "identities": run_identities,
    "lattice-theta": run_lattice_theta,
    "sym-expand": run_sym_expand,
    "audit": run_audit,
    "new-spec": run_new_spec,
    "settings": run_settings,
}


def maybe_log_profile(verb: str, order: int, elapsed_ms: float, exit_code: int) -> None:
    """Append one JSON line to thetaglue_profile.jsonl if profiling is enabled."""
    if not os.getenv("THETAGLUE_PROFILE"):
        return

    profile_data = {
        "timestamp": datetime.now().isoformat(),
        "verb": verb,
        "order": order,
        "elapsed_ms": elapsed_ms,
        "exit_code": exit_code,
    }

    try:
        with open(Path.cwd() / "thetaglue_profile.jsonl", "a", encoding="utf-8") as f:
            f.write(json.dumps(profile_data) + "\n")
    except Exception:
        pass  # Silently fail if logging fails


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def main(argv: Optional[List[str]] = None, settings: Optional[ToolkitSettings] = None) -> int:
    settings = settings or load_settings()
    args = build_parser(settings).parse_args(argv)

    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    t0 = time.perf_counter()
    try:
        code, text = VERBS[args.verb](args, settings)
        _emit(text, args.out)
    except (SpecError, UnknownSeries, SizeMismatch, SettingsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_BAD_INPUT
    except InvalidOrder as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_BAD_ORDER
    except BoundsTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_TOO_LARGE
    maybe_log_profile(args.verb, args.order, (time.perf_counter() - t0) * 1000.0, code)
    return code
