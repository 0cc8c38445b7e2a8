"""
Command-line entry point for galrel.

Every command builds a Report and prints it as JSON, as aligned text tables,
or both. The exit code is 0 when every row passes, 1 when a check fails,
2 for bad input and 3 for configurations galrel does not support.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import mpmath
import numpy as np
import pandas as pd
import sympy

from galrel import __version__
from galrel.arakelov.genus import arakelov_genus
from galrel.arakelov.regulator import regulator
from galrel.config.constants import (
    CHECKS,
    COMPLEX_PLACE_NORMALIZATION,
    DEFAULT_ETA_TOL,
    DEFAULT_ZETA_BOUND,
    DEFAULT_ZETA_SIGMA,
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
    EXIT_UNSUPPORTED,
    PROVENANCE_COMPUTED,
    PROVENANCE_FORMULA,
    VARIANT_TRACE,
    VARIANTS,
)
from galrel.config.logging_config import configure_logging
from galrel.config.settings import app_settings
from galrel.core.checks import VerificationHandler
from galrel.core.specs import (
    build_extension,
    build_field,
    fixture_name,
    list_fixtures,
    load_spec,
)
from galrel.errors import (
    CertificationError,
    Error,
    InputError,
    MathError,
    UnsupportedError,
)
from galrel.fields.torsion import torsion_units
from galrel.groups.finite_group import build_group, subgroups
from galrel.groups.group_algebra import find_relations, verify_relation
from galrel.ideals.class_group import class_group
from galrel.models.report_model import Report, ReportRow
from galrel.theta.eta import eta
from galrel.theta.metric import infinite_divisor
from galrel.utils.validation import parse_group_spec, parse_rational

logger = logging.getLogger(__name__)

FORMATS = ("json", "text", "both")


def versions() -> Dict[str, str]:
    return {
        "galrel": __version__,
        "mpmath": mpmath.__version__,
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "sympy": sympy.__version__,
    }


def _inputs(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k != "handler"}


def cmd_relations(args: argparse.Namespace) -> Report:
    """Subgroups of G and an integer basis of the relations among the ε_H."""
    group = build_group(parse_group_spec(args.group))
    subs = subgroups(group)
    report = Report("relations", _inputs(args))
    for h in subs:
        report.add(
            ReportRow(
                "subgroups",
                h.label(),
                {"order": h.order, "index": h.index},
            )
        )
    relations = find_relations(group, subs)
    for rel in relations:
        report.add(
            ReportRow(
                "relations",
                str(rel),
                {"coefficients": {h.label(): r for h, r in rel.terms()}},
                passed=verify_relation(rel).is_zero(),
            )
        )
    report.flags = {
        "group": group.name,
        "order": group.order,
        "relations": len(relations),
    }
    return report


def _unsupported_cell(compute: Callable[[], Any], note: List[str]) -> Any:
    try:
        return compute()
    except UnsupportedError as e:
        note.append(str(e))
        return "unsupported"


def cmd_invariants(args: argparse.Namespace) -> Report:
    """(r, s, λ, d, w, Cl, g, Reg) of one field with provenance tags."""
    spec = load_spec(args.field)
    field_ = build_field(spec)
    r, s = field_.signature
    w, _ = torsion_units(field_)
    note: List[str] = []
    cl = _unsupported_cell(lambda: class_group(field_).structure, note)
    reg = _unsupported_cell(
        lambda: regulator(field_, spec.supplied_regulators.get(spec.name)), note
    )
    values: Dict[str, Any] = {
        "r": r,
        "s": s,
        "lambda": field_.unit_rank,
        "d": field_.discriminant,
        "w": w,
        "Cl": str(cl),
        "g": arakelov_genus(field_, w).value,
        "Reg": reg if isinstance(reg, str) else reg.value,
    }
    provenance = {"g": PROVENANCE_FORMULA, "Cl": PROVENANCE_COMPUTED}
    if not isinstance(reg, str):
        provenance["Reg"] = reg.provenance
    report = Report("invariants", _inputs(args))
    report.add(
        ReportRow("invariants", field_.name, values, provenance, note="; ".join(note))
    )
    report.flags = {"degree": field_.degree}
    return report


def cmd_verify(args: argparse.Namespace) -> Report:
    """One family of checks over the relation basis of Gal(L/K)."""
    ext = build_extension(load_spec(args.ext))
    handler = VerificationHandler(
        ext,
        prime=args.prime,
        level=args.level,
        variant=args.variant,
        tol=args.tol,
        sigma=parse_rational(args.sigma),
        bound=args.N,
    )
    report = Report("verify", _inputs(args))
    for row in handler.run(args.check):
        report.add(row)
    report.residuals = handler.residuals
    report.flags = {
        "extension": ext.name,
        "group": ext.group.name,
        "base": ext.base.label(),
        "relations": len(ext.relations),
        "complex_place_normalization": COMPLEX_PLACE_NORMALIZATION,
    }
    report.exit_code = EXIT_PASS if report.passed else EXIT_CHECK_FAILED
    return report


def _parse_divisor(text: str) -> List[Any]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"Bad divisor JSON: {e}", "divisor") from e
    if not isinstance(raw, list):
        raise InputError("Divisor must be a list of per-place coefficients", "divisor")
    return [parse_rational(c) for c in raw]


def cmd_eta(args: argparse.Namespace) -> Report:
    """η_D(K) for an infinite divisor D given by its per-place coefficients."""
    field_ = build_field(load_spec(args.field))
    divisor = None
    if args.divisor is not None:
        coefficients = _parse_divisor(args.divisor)
        places = len(field_.places())
        if len(coefficients) != places:
            raise InputError(
                f"{len(coefficients)} coefficients for {places} infinite places",
                "divisor",
            )
        divisor = infinite_divisor(field_, coefficients)
    value = eta(field_, divisor, args.tol)
    report = Report("eta", _inputs(args))
    report.add(
        ReportRow("eta", field_.name, value.to_dict(), {"eta": PROVENANCE_COMPUTED})
    )
    report.flags = {"complex_place_normalization": COMPLEX_PLACE_NORMALIZATION}
    return report


def cmd_fixtures(args: argparse.Namespace) -> Report:
    report = Report("fixtures", _inputs(args))
    for spec in list_fixtures():
        report.add(
            ReportRow(
                "fixtures",
                fixture_name(spec),
                {
                    "name": spec.name,
                    "degree": len(spec.min_poly) - 1,
                    "description": spec.description,
                },
            )
        )
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="both")
    common.add_argument("--precision", type=int, help="working precision in bits")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="galrel",
        description="Verify relations among invariants of Galois number fields.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    relations = commands.add_parser(
        "relations", parents=[common], help="relation basis of a finite group"
    )
    relations.add_argument("--group", required=True)
    relations.set_defaults(handler=cmd_relations)

    invariants = commands.add_parser(
        "invariants", parents=[common], help="invariants of one field"
    )
    invariants.add_argument("--field", required=True, help="spec path or fixture")
    invariants.set_defaults(handler=cmd_invariants)

    verify = commands.add_parser(
        "verify", parents=[common], help="check relations on an extension"
    )
    verify.add_argument("--ext", required=True, help="spec path or fixture")
    verify.add_argument("--check", required=True, choices=CHECKS)
    verify.add_argument("--prime", type=int)
    verify.add_argument("--level", type=int)
    verify.add_argument("--variant", choices=VARIANTS, default=VARIANT_TRACE)
    verify.add_argument("--tol", type=float)
    verify.add_argument("--N", type=int, default=DEFAULT_ZETA_BOUND)
    verify.add_argument("--sigma", default=str(DEFAULT_ZETA_SIGMA))
    verify.set_defaults(handler=cmd_verify)

    eta_cmd = commands.add_parser("eta", parents=[common], help="twisted η of a field")
    eta_cmd.add_argument("--field", required=True, help="spec path or fixture")
    eta_cmd.add_argument("--divisor", help="JSON list of per-place coefficients")
    eta_cmd.add_argument("--tol", type=float, default=DEFAULT_ETA_TOL)
    eta_cmd.set_defaults(handler=cmd_eta)

    fixtures = commands.add_parser(
        "fixtures", parents=[common], help="list the shipped specs"
    )
    fixtures.set_defaults(handler=cmd_fixtures)
    return parser


def _apply_precision(bits: Optional[int]) -> None:
    if bits is None:
        return
    if not 53 <= bits <= app_settings.precision.MAX_BITS:
        raise InputError(
            f"Precision must lie in [53, {app_settings.precision.MAX_BITS}]",
            "precision",
        )
    app_settings.precision.DEFAULT_BITS = bits


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "text":
        return report.to_text()
    return report.to_json() + "\n\n" + report.to_text()


def execute(args: argparse.Namespace) -> Report:
    """Runs one parsed command; errors become reports with exit codes 2 or 3."""
    try:
        _apply_precision(args.precision)
        report = args.handler(args)
    except (InputError, MathError) as e:
        logger.error("Input error: %s", e)
        report = Report(args.command, _inputs(args), exit_code=EXIT_INPUT_ERROR)
        report.flags = {"error": str(e), "error_type": type(e).__name__}
    except (UnsupportedError, CertificationError) as e:
        logger.error("Unsupported: %s", e)
        report = Report(args.command, _inputs(args), exit_code=EXIT_UNSUPPORTED)
        report.flags = {"error": str(e), "error_type": type(e).__name__}
    except Error as e:
        logger.error("galrel error: %s", e, exc_info=True)
        report = Report(args.command, _inputs(args), exit_code=EXIT_INPUT_ERROR)
        report.flags = {"error": str(e), "error_type": type(e).__name__}
    report.versions = versions()
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    report = execute(args)
    print(render(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
