"""
Command Line Interface

    python -m hybess eval     -d 1 -a 0.5 -z 1+0i
    python -m hybess coeffs   -d 2 -a 0.1,0.2 -N 12
    python -m hybess bounds   -d 1 -a 0.5 --variant corrected
    python -m hybess verify   -d 1 -a 0.5 --m 0,1 --out report.json
    python -m hybess scan     -d 1 --alpha-range 0.3:0.7:41 --out scan.csv
    python -m hybess report summarize report.json

Exit codes: 0 success (every adjudicated claim holds), 1 usage or input
error, 2 some claim falsified, 3 some claim inconclusive and none falsified.
Claims whose hypothesis fails are reported but not adjudicated.

Logs go to stderr; results go to stdout or to --out.
"""

import sys
import math
import logging
import argparse
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from . import __version__
from .bound_formulas import (
    BoundVariant,
    critical_alpha,
    critical_mu,
    gates,
    lemma_claims,
    rational_bounds,
    theorem1_claims,
    theorem2_claims,
    worked_example_claims,
)
from .claim_verifier import GATE_FAILED, ClaimStatus, ClaimVerifier, VerificationReport
from .coefficient_audit import coefficient_inequality_audit
from .config import DEFAULT_M_VALUES, log_level
from .errors import DomainError, HyperBesselError
from .hyper_bessel import (
    HyperBesselParams,
    QuotientKind,
    coefficient_abs_sum,
    coefficient_direct,
    coefficient_table,
    eval_f_certified,
    make_params,
    partial_values,
)
from .models.config import EvalConfig, SamplingConfig
from .report_writer import (
    build_manifest,
    build_report,
    csv_text,
    dumps,
    format_float,
    gate_records,
    load_report,
    params_record,
    summarize,
    write_csv,
    write_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSIFIED = 2
EXIT_INCONCLUSIVE = 3

SELF_INCONSISTENT = "self-inconsistent (quotient(0)=1)"

BOUND_FAMILIES = {
    "lemma_f": "lemma",
    "lemma_f_prime": "lemma",
    QuotientKind.F_OVER_FM.value: "partial_sum",
    QuotientKind.FM_OVER_F.value: "partial_sum",
    QuotientKind.FP_OVER_FMP.value: "derivative",
    QuotientKind.FMP_OVER_FP.value: "derivative",
}

BOUNDS_COLUMNS = ("name", "family", "value", "exact", "gate_satisfied", "flag")

SCAN_COLUMNS = (
    "alpha", "lambda", "mu",
    "lemma_gate", "partial_sum_gate", "derivative_gate_value", "derivative_gate",
    "F_over_Fm_bound", "Fm_over_F_bound", "Fp_over_Fmp_bound", "Fmp_over_Fp_bound",
    "F_over_Fm_status", "F_over_Fm_margin",
    "univalence_status", "univalence_margin", "univalence_extremum",
    "critical_mu",
)


class UsageError(Exception):
    """Malformed command line"""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports errors with exit code 1 instead of 2"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# =============================================================================
# INPUT PARSING
# =============================================================================

def parse_alpha_text(text: str, d: int) -> List[str]:
    """Comma-separated alpha entries; a single entry is broadcast to all d slots"""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise DomainError("alpha is empty")
    if len(parts) == 1 and d > 1:
        parts = parts * d
    if len(parts) != d:
        raise DomainError(f"alpha has {len(parts)} entries, expected d={d}")
    return parts


def parse_alpha(text: str, d: int) -> List[float]:
    values = []
    for part in parse_alpha_text(text, d):
        try:
            values.append(float(part))
        except ValueError:
            raise DomainError(f"Invalid alpha entry: {part!r}") from None
    return values


def parse_complex(text: str) -> complex:
    """'a+bi' (also accepts j, bare reals and bare imaginaries)"""
    cleaned = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise DomainError(f"Invalid complex number: {text!r}") from None


def parse_m_values(text: str) -> List[int]:
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise DomainError(f"Invalid partial-sum orders: {text!r}") from None
    if not values or any(m < 0 for m in values):
        raise DomainError(f"Partial-sum orders must be a non-empty list of integers >= 0: {text!r}")
    return values


def parse_range(text: str) -> np.ndarray:
    """lo:hi:steps -> steps equally spaced values from lo to hi"""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"Range must be lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError(f"Range must be lo:hi:steps, got {text!r}") from None
    if steps < 1 or hi < lo or not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"Empty range: {text!r}")
    if lo <= -1.0:
        raise DomainError(f"Range must lie in alpha > -1, got lo={lo}")
    return np.linspace(lo, hi, steps)


def format_complex(z: complex) -> str:
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _exact(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def _eval_config(args) -> EvalConfig:
    fields = {"target_tol": args.tol, "max_terms": args.max_terms}
    return EvalConfig(**{k: v for k, v in fields.items() if v is not None})


def _sampling_config(args) -> SamplingConfig:
    return SamplingConfig(
        radii=args.radii,
        angles=args.angles,
        max_radius=args.max_radius,
        refine_levels=args.refine,
        refine_factor=args.refine_factor,
        seed=args.seed,
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def exit_code(statuses: Iterable[Tuple[str, Optional[str]]]) -> int:
    """Map (status, reason) pairs to the verdict exit code, skipping non-adjudicated claims"""
    adjudicated = [status for status, reason in statuses if reason != GATE_FAILED]
    if ClaimStatus.FALSIFIED.value in adjudicated:
        return EXIT_FALSIFIED
    if ClaimStatus.INCONCLUSIVE.value in adjudicated:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_eval(args) -> int:
    params = make_params(args.d, parse_alpha(args.alpha, args.d))
    z = parse_complex(args.z)
    cfg = _eval_config(args)

    if args.partial is not None:
        if args.partial < 0:
            raise DomainError(f"Partial-sum order must be >= 0, got {args.partial}")
        value = complex(partial_values(params, args.partial, np.array([z]), derivative=args.derivative)[0])
        order, error_bound = args.partial, 0.0
    else:
        result = eval_f_certified(params, z, cfg, derivative=args.derivative)
        value, order, error_bound = result.value, result.order, result.error_bound

    function = "f'" if args.derivative else "f"
    if args.partial is not None:
        function = f"f_{args.partial}'" if args.derivative else f"f_{args.partial}"

    if args.format == "json":
        payload = {
            "function": function,
            "d": params.d,
            "alpha": list(params.alpha),
            "z": {"re": z.real, "im": z.imag},
            "value": {"re": value.real, "im": value.imag},
            "order": order,
            "error_bound": error_bound,
        }
        _emit(dumps(payload), None)
    else:
        _emit(
            f"{function}({format_complex(z)}) = {format_complex(value)}\n"
            f"order: {order}\n"
            f"error_bound: {format_float(error_bound)}\n",
            None,
        )
    return EXIT_OK


def cmd_coeffs(args) -> int:
    params = make_params(args.d, parse_alpha(args.alpha, args.d))
    table = coefficient_table(params, args.N)
    audit = coefficient_inequality_audit(params, max(args.N, 2))
    decay = {c.n: c for c in audit.checks if c.name == "decay"}

    rows = []
    for n in range(args.N + 1):
        direct = coefficient_direct(params, n)
        recurrence = table[n]
        relative = abs(recurrence - direct) / abs(direct) if direct else 0.0
        certificate = decay.get(n)
        rows.append({
            "n": n,
            "recurrence": recurrence,
            "direct": direct,
            "relative_difference": relative,
            "decay_bound": certificate.lhs if certificate else None,
            "decay_holds": certificate.passed if certificate else None,
        })

    for failure in audit.printed_direction_failures[:1]:
        logger.info(
            f"(alpha+1)^n >= (alpha+1)_n fails at n={failure.n}: "
            f"{failure.lhs:.6g} < {failure.rhs:.6g}"
        )

    columns = ("n", "recurrence", "direct", "relative_difference", "decay_bound", "decay_holds")
    if args.format == "json":
        _emit(dumps({"params": params_record(params).model_dump(by_alias=True), "coefficients": rows}), args.out)
    elif args.format == "csv":
        _emit(csv_text(rows, columns), args.out)
    else:
        lines = [f"{'n':>3}  {'A_n':>24}  {'rel.diff':>10}  decay"]
        for row in rows:
            holds = "" if row["decay_holds"] is None else ("ok" if row["decay_holds"] else "FAIL")
            lines.append(f"{row['n']:>3}  {row['recurrence']:>24.17g}  "
                         f"{row['relative_difference']:>10.2e}  {holds}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if audit.decay_certificate_holds else EXIT_ERROR


def bound_rows(params: HyperBesselParams, alpha_text: Sequence[str], variant: BoundVariant) -> List[Dict[str, Any]]:
    """One row per bound constant, exact when alpha is given as decimals"""
    report = gates(params)
    satisfied = {g.name: g.satisfied for g in report.as_list()}
    try:
        exact = rational_bounds(params.d, [Fraction(a) for a in alpha_text], variant)
    except (ValueError, ZeroDivisionError):
        exact = {}
    if not exact:
        mu = math.prod(Fraction(a + 1.0) for a in params.alpha)
        exact = rational_bounds(params.d, [mu - 1] + [Fraction(0)] * (params.d - 1), variant)

    rows = []
    for name, family in BOUND_FAMILIES.items():
        if name not in exact:
            rows.append({"name": name, "family": family, "value": math.nan, "exact": "undefined",
                         "gate_satisfied": satisfied[family], "flag": "denominator vanishes"})
            continue
        value = exact[name]
        flag = SELF_INCONSISTENT if family != "lemma" and value > 1 else ""
        rows.append({"name": name, "family": family, "value": float(value), "exact": _exact(value),
                     "gate_satisfied": satisfied[family], "flag": flag})
    return rows


def cmd_bounds(args) -> int:
    alpha_text = parse_alpha_text(args.alpha, args.d)
    params = make_params(args.d, parse_alpha(args.alpha, args.d))
    variant = BoundVariant(args.variant)
    report = gates(params)
    rows = bound_rows(params, alpha_text, variant)
    mu_star = critical_mu(params.d)
    abs_sum = coefficient_abs_sum(params)
    weighted_sum = coefficient_abs_sum(params, weighted=True)

    for row in rows:
        if row["flag"] == SELF_INCONSISTENT:
            logger.warning(f"{row['name']} bound {row['exact']} exceeds 1: {SELF_INCONSISTENT}")

    if args.format == "json":
        payload = {
            "params": params_record(params).model_dump(by_alias=True),
            "variant": variant.value,
            "gates": [g.model_dump() for g in gate_records(report)],
            "bounds": rows,
            "critical_mu": mu_star,
            "critical_alpha": critical_alpha(params.d),
            "coefficient_sum": abs_sum.value,
            "weighted_coefficient_sum": weighted_sum.value,
        }
        _emit(dumps(payload), args.out)
    elif args.format == "csv":
        _emit(csv_text(rows, BOUNDS_COLUMNS), args.out)
    else:
        lines = [
            f"d = {params.d}, alpha = {list(params.alpha)}",
            f"lambda = {format_float(params.lam)}",
            f"mu = {format_float(params.mu)}",
            f"mu*(d) = {format_float(mu_star)}",
            f"1 + sum |A_n| = {format_float(1.0 + abs_sum.value)}",
            f"1 + sum (n(d+1)+1) |A_n| = {format_float(1.0 + weighted_sum.value)}",
            "",
            "gates:",
        ]
        for g in report.as_list():
            verdict = "satisfied" if g.satisfied else "FAILS"
            lines.append(f"  {g.name:<12} value {format_float(g.value) or 'undefined':<24} "
                         f"threshold {g.threshold:g}  {verdict}")
        lines += ["", f"bounds ({variant.value}):"]
        for row in rows:
            gate_note = "" if row["gate_satisfied"] else "  [gate fails]"
            flag = f"  {row['flag']}" if row["flag"] else ""
            lines.append(f"  {row['name']:<14} {row['exact']:<24} {format_float(row['value']):<24}"
                         f"{gate_note}{flag}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def verification_reports(
    verifier: ClaimVerifier,
    params: HyperBesselParams,
    variant: BoundVariant,
    m_values: Sequence[int],
    worked_examples: bool = False
) -> List[VerificationReport]:
    """Lemma, partial-sum and derivative batteries followed by the univalence check"""
    claims = lemma_claims(params)
    claims += theorem1_claims(params, variant, m_values)
    claims += theorem2_claims(params, variant, m_values)
    if worked_examples:
        claims += [c for c in worked_example_claims() if c.params == params]

    reports = verifier.check_claims(claims)
    reports.append(verifier.check_univalence(params))
    return reports


def cmd_verify(args) -> int:
    params = make_params(args.d, parse_alpha(args.alpha, args.d))
    m_values = parse_m_values(args.m)
    variant = BoundVariant(args.variant)
    sampling = _sampling_config(args)
    eval_cfg = _eval_config(args)

    inputs = {
        "d": params.d,
        "alpha": list(params.alpha),
        "m": m_values,
        "variant": variant.value,
        "worked_examples": args.worked_examples,
        "sampling": sampling.model_dump(),
        "eval": eval_cfg.model_dump(),
    }
    verifier = ClaimVerifier(sampling, eval_cfg)
    logger.info(f"Verifying d={params.d}, alpha={list(params.alpha)} with {verifier.workers} worker(s)")
    reports = verification_reports(verifier, params, variant, m_values, args.worked_examples)

    document = build_report(build_manifest("verify", inputs, args.timestamp), params, gates(params), reports)
    if args.out:
        write_json(document, args.out)
    else:
        _emit(dumps(document), None)

    counts = document.status_counts()
    logger.info(f"holds={counts['holds']} falsified={counts['falsified']} inconclusive={counts['inconclusive']}")
    return exit_code((r.status.value, r.reason) for r in reports)


def scan_rows(
    verifier: ClaimVerifier,
    d: int,
    values: Iterable[float],
    fixed: Sequence[float],
    variant: BoundVariant
) -> List[Dict[str, Any]]:
    mu_star = critical_mu(d)
    rows = []
    for a in values:
        params = make_params(d, [float(a)] + list(fixed))
        report = gates(params)
        partial = theorem1_claims(params, variant, [0])
        derivative = theorem2_claims(params, variant, [0])
        partial_report = verifier.check_claim(partial[0])
        univalence = verifier.check_univalence(params)
        rows.append({
            "alpha": float(a),
            "lambda": params.lam,
            "mu": params.mu,
            "lemma_gate": report.lemma.satisfied,
            "partial_sum_gate": report.theorem1.satisfied,
            "derivative_gate_value": report.theorem2.value,
            "derivative_gate": report.theorem2.satisfied,
            "F_over_Fm_bound": partial[0].bound,
            "Fm_over_F_bound": partial[1].bound,
            "Fp_over_Fmp_bound": derivative[0].bound,
            "Fmp_over_Fp_bound": derivative[1].bound,
            "F_over_Fm_status": partial_report.status.value,
            "F_over_Fm_margin": partial_report.margin,
            "univalence_status": univalence.status.value,
            "univalence_margin": univalence.margin,
            "univalence_extremum": univalence.extremum,
            "critical_mu": mu_star,
        })
    return rows


def cmd_scan(args) -> int:
    values = parse_range(args.alpha_range)
    if args.d == 1 and args.alpha_fixed:
        raise DomainError("--alpha-fixed applies only when d > 1")
    fixed = parse_alpha(args.alpha_fixed or "0", args.d - 1) if args.d > 1 else []

    verifier = ClaimVerifier(_sampling_config(args), _eval_config(args))
    rows = scan_rows(verifier, args.d, values, fixed, BoundVariant(args.variant))

    holding = [r["alpha"] for r in rows if r["univalence_status"] == ClaimStatus.HOLDS.value]
    if holding:
        logger.info(f"Smallest scanned alpha with inf Re f' > 0: {holding[0]!r}")
    for previous, current in zip(rows, rows[1:]):
        if previous["derivative_gate"] != current["derivative_gate"]:
            logger.info(f"Derivative gate changes between alpha={previous['alpha']!r} and {current['alpha']!r}")

    if args.out:
        write_csv(rows, SCAN_COLUMNS, args.out)
    else:
        _emit(csv_text(rows, SCAN_COLUMNS), None)
    return EXIT_OK


def cmd_report(args) -> int:
    document = load_report(args.file)
    summary = summarize(document)
    _emit(dumps(summary), None)
    return exit_code((c.status, c.reason) for c in document.claims)


# =============================================================================
# PARSER
# =============================================================================

def _add_params(parser: argparse.ArgumentParser, alpha_required: bool = True) -> None:
    parser.add_argument("-d", type=int, required=True, help="Dimension d >= 1")
    if alpha_required:
        parser.add_argument("-a", "--alpha", required=True,
                            help="Comma-separated alpha_1..alpha_d; a single value is broadcast")


def _add_eval(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, help="Target truncation tolerance (default: 1e-13)")
    parser.add_argument("--max-terms", type=int, help="Maximum series terms (default: 200)")


def _add_sampling(parser: argparse.ArgumentParser) -> None:
    defaults = SamplingConfig()
    parser.add_argument("--radii", type=int, default=defaults.radii, help=f"Rings (default: {defaults.radii})")
    parser.add_argument("--angles", type=int, default=defaults.angles,
                        help=f"Points per ring (default: {defaults.angles})")
    parser.add_argument("--max-radius", type=float, default=defaults.max_radius,
                        help=f"Sampled sub-disk radius (default: {defaults.max_radius})")
    parser.add_argument("--refine", type=int, default=defaults.refine_levels,
                        help=f"Refinement levels (default: {defaults.refine_levels})")
    parser.add_argument("--refine-factor", type=int, default=defaults.refine_factor,
                        help=f"Subgrid points per axis (default: {defaults.refine_factor})")
    parser.add_argument("--seed", type=int, default=0, help="Jitter seed; 0 disables jitter (default: 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hybess", description="Normalized hyper-Bessel functions: evaluation, bounds, verification")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", help="Evaluate f, f' or a partial sum at one point")
    _add_params(p)
    p.add_argument("-z", required=True,
                   help="Point as a+bi; write -z=-0.5+0.2i when the real part is negative")
    p.add_argument("--derivative", action="store_true", help="Evaluate the derivative")
    p.add_argument("--partial", type=int, metavar="M", help="Evaluate the partial sum of order M instead")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_eval(p)
    p.set_defaults(handler=cmd_eval)

    p = commands.add_parser("coeffs", help="Coefficient table with decay certificates")
    _add_params(p)
    p.add_argument("-N", type=int, default=10, help="Highest coefficient index (default: 10)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="Output file (default: stdout)")
    p.set_defaults(handler=cmd_coeffs)

    p = commands.add_parser(
        "bounds",
        help="Gates and bound constants",
        description=f"CSV columns: {', '.join(BOUNDS_COLUMNS)}",
    )
    _add_params(p)
    p.add_argument("--variant", choices=[v.value for v in BoundVariant], default=BoundVariant.PAPER_STATED.value)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="Output file (default: stdout)")
    p.set_defaults(handler=cmd_bounds)

    p = commands.add_parser("verify", help="Adjudicate the claim battery and write a JSON report")
    _add_params(p)
    p.add_argument("--m", default=",".join(str(m) for m in DEFAULT_M_VALUES),
                   help="Comma-separated partial-sum orders (default: 0,1,2,5)")
    p.add_argument("--variant", choices=[v.value for v in BoundVariant],
                   default=BoundVariant.CORRECTED_RATIONAL.value)
    p.add_argument("--worked-examples", action="store_true",
                   help="Also check the printed sine/cosine instances matching these parameters")
    p.add_argument("--out", help="Report file (default: stdout)")
    p.add_argument("--timestamp", action="store_true", help="Record the run time in the manifest")
    _add_sampling(p)
    _add_eval(p)
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser(
        "scan",
        help="Sweep alpha_1 and tabulate gates, bounds and verdicts as CSV",
        description=f"CSV columns: {', '.join(SCAN_COLUMNS)}",
    )
    _add_params(p, alpha_required=False)
    p.add_argument("--alpha-range", required=True, help="lo:hi:steps for alpha_1")
    p.add_argument("--alpha-fixed", help="alpha_2..alpha_d, comma-separated or broadcast (default: 0)")
    p.add_argument("--variant", choices=[v.value for v in BoundVariant],
                   default=BoundVariant.CORRECTED_RATIONAL.value)
    p.add_argument("--out", help="CSV file (default: stdout)")
    _add_sampling(p)
    _add_eval(p)
    p.set_defaults(handler=cmd_scan)

    p = commands.add_parser("report", help="Inspect saved reports")
    actions = p.add_subparsers(dest="action", required=True)
    s = actions.add_parser("summarize", help="Verdict summary of a JSON report")
    s.add_argument("file")
    s.set_defaults(handler=cmd_report)
    return parser


def _configure_logging(args) -> None:
    level = log_level()
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(str(e), file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_OK

    _configure_logging(args)
    try:
        return args.handler(args)
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
    except HyperBesselError as e:
        logger.error(str(e))
    except OSError as e:
        logger.error(f"I/O error: {e}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
