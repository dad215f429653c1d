"""Command-line surface: report, verify and plot-data subcommands.

Exit codes: 0 on success, 1 on verification failure or unexpected errors,
2 when the supplied spectrum is certified too shallow for the requested
computation, 3 on malformed input documents.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .core import DEFAULT_EPSILON, Scalar, xi_pair
from .errors import (
    ConifoldSpectraError,
    InsufficientSpectrum,
    InvariantViolation,
    SchemaError,
)
from .flatcone import (
    CASE_IDS,
    cheeger_tian_example,
    default_grid,
    identity_b_dstar,
    identity_case_harmonics,
    identity_delta_star_radial,
    identity_trace_commutes,
    ode_residual,
    verify_case,
)
from .flatcone.ode import COEFFICIENT_NOTE
from .links import BUILTIN_LINKS, builtin_link, load_spectrum
from .report import ReportOptions, build_report, csv_number, render_csv, render_json, render_text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conifold-spectra",
        description=(
            "indicial roots, convergence orders and stability verdicts for "
            "Ricci-flat cones, with an exact flat-cone verifier"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="full spectral report for a link")
    src = rep.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="path to a spectrum document (JSON)")
    src.add_argument("--builtin", choices=BUILTIN_LINKS, help="built-in link")
    rep.add_argument("--n", type=int, default=None, help="cone dimension for builtins")
    rep.add_argument(
        "--quotient",
        choices=("trivial", "nontrivial"),
        default=None,
        help=(
            "group triviality for the sphere builtins (default: trivial for "
            "'sphere', nontrivial for 'sphere-quotient')"
        ),
    )
    rep.add_argument("--format", choices=("table", "json", "csv"), default="table")
    rep.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    rep.add_argument("--max-roots", type=int, default=None)

    ver = sub.add_parser("verify", help="exact flat-cone verification suites")
    ver.add_argument(
        "suite",
        choices=("ode", "flat", "identities", "cheeger-tian", "all"),
    )
    ver.add_argument("--n", type=int, default=4)
    ver.add_argument("--max-degree", type=int, default=3)

    plot = sub.add_parser("plot-data", help="CSV of the branch curves over nu")
    plot.add_argument("--n", type=int, required=True)
    plot.add_argument("--nu-min", default=None, help="rational, default resonance-5")
    plot.add_argument("--nu-max", default="10")
    plot.add_argument("--step", default="1/4")
    return parser


def _cmd_report(args) -> int:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            document = json.load(fh)
        link = load_spectrum(document, eps=args.epsilon)
    else:
        nontrivial = None if args.quotient is None else args.quotient == "nontrivial"
        link = builtin_link(args.builtin, args.n, gamma_nontrivial=nontrivial)
    report = build_report(link, ReportOptions(epsilon=args.epsilon, max_roots=args.max_roots))
    if args.format == "json":
        sys.stdout.write(render_json(report))
    elif args.format == "csv":
        sys.stdout.write(render_csv(report))
    else:
        sys.stdout.write(render_text(report))
    return 0


def _verify_flat(n: int, max_degree: int) -> List[str]:
    lines = []
    failures = 0
    for case_id in CASE_IDS:
        if case_id in ("vii", "viii"):
            degrees: List[int] = [2]
        elif case_id == "i":
            degrees = [0] + [d for d in (2, 3) if d <= max_degree]
        else:
            degrees = list(range(1, max_degree + 1))
        for d in degrees:
            report = verify_case(case_id, n, d)
            status = "pass" if report.passed else "FAIL"
            if report.degenerate:
                status = "degenerate(pass)"
            if not report.passed:
                failures += 1
            label = f"case ({case_id}) degree {report.degree}"
            lines.append(f"  {label:<28} {status}")
    lines.insert(0, f"flat-cone gauge cases on R^{n}:")
    lines.append(f"  failures: {failures}")
    return lines if failures == 0 else lines + ["FLAT-SUITE-FAILED"]


def _verify_ode() -> List[str]:
    lines = ["radial ODE checks:"]
    failures = 0
    for (n, nu, branch) in default_grid():
        check = ode_residual(n, nu, branch)
        ok = check.passed
        if not ok:
            failures += 1
        lines.append(
            f"  n={n:<3} nu={str(nu):<10} {branch:<6} exponent={str(check.exponent):<8} "
            f"exact={'0' if check.exact_zero else 'NONZERO'} "
            f"fd={check.fd_residual:.3e} {'pass' if ok else 'FAIL'}"
        )
    lines.append(f"  coefficient note: {COEFFICIENT_NOTE}")
    lines.append(f"  failures: {failures}")
    return lines if failures == 0 else lines + ["ODE-SUITE-FAILED"]


def _verify_identities(n: int) -> List[str]:
    reports = [
        identity_b_dstar(n),
        identity_delta_star_radial(n),
        identity_trace_commutes(n),
        identity_case_harmonics(n),
    ]
    lines = ["structural identities:"]
    failures = 0
    for rep in reports:
        if not rep.passed:
            failures += 1
        lines.append(
            f"  {rep.name:<45} cases={rep.cases:<4} "
            f"{'pass' if rep.passed else 'FAIL'}"
        )
        if rep.detail:
            lines.append(f"    {rep.detail}")
    lines.append(f"  failures: {failures}")
    return lines if failures == 0 else lines + ["IDENTITY-SUITE-FAILED"]


def _verify_cheeger_tian() -> List[str]:
    record = cheeger_tian_example(4)
    lines = [
        "dimension-gap example on R^4:",
        f"  harmonic function:          {'pass' if record.harmonic_function else 'FAIL'}",
        f"  tensor harmonic:            {'pass' if record.tensor_componentwise_harmonic else 'FAIL'}",
        f"  homogeneity degree:         {record.homogeneity_degree} "
        f"{'pass' if record.homogeneity_degree == Fraction(-3) else 'FAIL'}",
        f"  trace-free part not TT:     {'pass' if record.tracefree_part_not_divergence_free else 'FAIL'}",
        f"  printed -4 variant harmonic: {record.printed_variant_harmonic} (recorded)",
        f"  note: {record.note}",
    ]
    if not record.passed:
        lines.append("CHEEGER-TIAN-FAILED")
    return lines


def _cmd_verify(args) -> int:
    suites = (
        ["ode", "flat", "identities", "cheeger-tian"]
        if args.suite == "all"
        else [args.suite]
    )
    failed = False
    for suite in suites:
        if suite == "ode":
            lines = _verify_ode()
        elif suite == "flat":
            lines = _verify_flat(args.n, args.max_degree)
        elif suite == "identities":
            lines = _verify_identities(args.n)
        else:
            lines = _verify_cheeger_tian()
        if lines and lines[-1].endswith("FAILED"):
            failed = True
            lines = lines[:-1]
        sys.stdout.write("\n".join(lines) + "\n")
    return 1 if failed else 0


def _cmd_plot_data(args) -> int:
    n = args.n
    if args.nu_min is None:
        nu_min = Fraction(-((n - 2) ** 2), 4) - 5
    else:
        nu_min = Fraction(args.nu_min)
    nu_max = Fraction(args.nu_max)
    step = Fraction(args.step)
    if step <= 0:
        raise SchemaError("step must be positive")
    sys.stdout.write("nu,re_xi_plus,re_xi_minus,im_xi_plus\n")
    nu = nu_min
    while nu <= nu_max:
        plus, minus = xi_pair(n, Scalar(nu))
        row = (
            csv_number(Scalar(nu)),
            csv_number(plus.real),
            csv_number(minus.real),
            csv_number(plus.imag),
        )
        sys.stdout.write(",".join(row) + "\n")
        nu += step
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report":
            return _cmd_report(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_plot_data(args)
    except InsufficientSpectrum as exc:
        print(f"error: insufficient spectrum: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, InvariantViolation, json.JSONDecodeError) as exc:
        print(f"error: bad input: {exc}", file=sys.stderr)
        return 3
    except (ConifoldSpectraError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
