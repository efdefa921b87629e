"""Command-line frontend: ``valdist <command> ...``.

Every command prints a report (plain text, JSON or CSV) and exits with
0 when the verdict is certified or verified, 1 when it is not, and 2 on
usage or parameter errors. JSON reports are deterministic: the same input
and configuration give byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from typing import Sequence

from . import __version__
from .certificate import CERTIFIED, NUMERIC_ONLY, Certificate, encode_value
from .certify import certify_all, check_property_H, check_strong_uniqueness, check_uniqueness_fujimoto
from .config import TOL_ENV_VAR, Config, from_env
from .families import FAMILY_IDS, build_family
from .gates import GATE_IDS, check_urs_gate
from .gaussian import parse_scalar
from .identities import (INFINITY, check_derivative_sign_example, check_rational_identity,
                         check_set_sharing_example, share_values)
from .nevanlinna import (QuadratureError, characteristic, check_cartan, check_first_fundamental, check_jensen,
                         estimate_order, geometric_radii)
from .parser import parse_expression, parse_polynomial, render_polynomial

__all__ = ["run", "main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERIFIED, FAILED = "verified", "failed"

_CRITERIA = {
    "property-h": lambda p, tol: check_property_H(p),
    "fujimoto": lambda p, tol: check_uniqueness_fujimoto(p),
    "strong": check_strong_uniqueness,
    "all": certify_all,
}


class UsageError(ValueError):
    """Bad parameters detected after argument parsing."""


# -- report assembly -----------------------------------------------------------


def _canonical_input(args: argparse.Namespace) -> dict:
    skip = {"func", "fmt", "parser"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _fingerprint(canonical: dict) -> str:
    blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _clean(value):
    """Make floats JSON-safe (inf and nan are not valid JSON)."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _report(args, cfg: Config, argv, verdict: str, **payload) -> dict:
    canonical = _canonical_input(args)
    out = {
        "command": list(argv),
        "input": canonical,
        "fingerprint": _fingerprint(canonical),
        "version": __version__,
        "config": cfg.to_dict(),
        "verdict": verdict,
    }
    out.update({k: v for k, v in payload.items() if v is not None})
    return _clean(out)


def _certificate_payload(cert: Certificate) -> dict:
    return {"trace": cert.to_dict()["trace"], "result": cert.to_dict()}


def _exit_code(verdict: str) -> int:
    return EXIT_OK if verdict in (CERTIFIED, NUMERIC_ONLY, VERIFIED) else EXIT_FAIL


# -- plain-text rendering ------------------------------------------------------


def _text_certificate(cert: dict, indent: str = "") -> list[str]:
    lines = [f"{indent}{cert['criterion']}: {cert['verdict']}"]
    for c in cert["trace"]:
        mark = "ok" if c["holds"] else "FAIL"
        lines.append(f"{indent}  [{mark}] {c['condition']}: {c['lhs']} {c['relation']} {c['rhs']}")
    for note in cert.get("notes", []):
        lines.append(f"{indent}  note: {note}")
    for child in cert.get("children", []):
        lines.extend(_text_certificate(child, indent + "  "))
    return lines


def _text_report(report: dict) -> str:
    lines = [f"verdict: {report['verdict']}"]
    for key in ("polynomial", "residual", "estimate"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    if "result" in report and "criterion" in report["result"]:
        lines.extend(_text_certificate(report["result"]))
    elif "result" in report:
        lines.extend(f"{k}: {v}" for k, v in sorted(report["result"].items()))
    if "table" in report:
        table = report["table"]
        lines.append("  ".join(f"{c:>14}" for c in table["columns"]))
        lines.extend("  ".join(f"{v:14.8g}" for v in row) for row in table["rows"])
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------


def _cmd_certify(args, cfg, argv):
    p = parse_polynomial(args.poly)
    args.poly = render_polynomial(p)
    if p.degree < 1:
        raise UsageError("the polynomial must be non-constant")
    if p.degree < 2 and args.criterion in ("property-h", "fujimoto"):
        raise UsageError(f"criterion {args.criterion} needs degree at least 2")
    cert = _CRITERIA[args.criterion](p, cfg.separation_tol)
    return _report(args, cfg, argv, cert.verdict, polynomial=args.poly, **_certificate_payload(cert))


def _cmd_family(args, cfg, argv):
    params = {k: getattr(args, k) for k in ("n", "m", "a", "b", "c", "A") if getattr(args, k) is not None}
    spec, poly, cert = build_family(args.family, params, self_check=args.self_check, strict=False)
    verdict = cert.verdict if args.self_check else VERIFIED
    return _report(args, cfg, argv, verdict, polynomial=render_polynomial(poly, "z"),
                   parameters={k: encode_value(v) for k, v in spec.parameters.items()},
                   **_certificate_payload(cert))


def _key_values(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"gate parameters are key=value pairs, got {item!r}")
        out[key] = value
    return out


def _cmd_gate(args, cfg, argv):
    cert = check_urs_gate(args.gate, _key_values(args.params))
    return _report(args, cfg, argv, cert.verdict, **_certificate_payload(cert))


def _radii(args) -> list[float]:
    if args.radii:
        return [float(r) for r in args.radii.split(",")]
    return geometric_radii(args.rmin, args.rmax, args.points)


def _verdict(ok: bool) -> str:
    return VERIFIED if ok else FAILED


def _cmd_characteristic(args, cfg, argv):
    table = characteristic(args.f, _radii(args), config=cfg)
    ok = all(math.isfinite(row.T) for row in table.rows)
    return _report(args, cfg, argv, _verdict(ok), table=table.to_dict()), table


def _cmd_jensen(args, cfg, argv):
    results = [check_jensen(args.f, R, config=cfg) for R in args.R]
    residual = max(res.residual for res in results)
    rows = [[res.radius, res.integral, res.formula, res.residual, res.error] for res in results]
    table = {"columns": ["R", "integral", "formula", "residual", "err"], "rows": rows}
    return _report(args, cfg, argv, _verdict(residual < args.max_residual), residual=residual, table=table)


def _cmd_cartan(args, cfg, argv):
    res = check_cartan(args.f, args.r, samples=args.samples, config=cfg)
    result = {"characteristic": res.characteristic, "cartan_mean": res.cartan_mean, "samples": res.samples}
    return _report(args, cfg, argv, _verdict(res.residual < args.max_residual), residual=res.residual,
                   result=result)


def _a_value(text: str):
    return INFINITY if text == INFINITY else complex(parse_scalar(text))


def _cmd_fft(args, cfg, argv):
    res = check_first_fundamental(args.f, _a_value(args.a), _radii(args), config=cfg)
    table = {"columns": ["r", "delta"], "rows": [[r, d] for r, d in zip(res.radii, res.deltas)]}
    return _report(args, cfg, argv, _verdict(res.max_drift < args.max_drift), residual=res.max_drift, table=table)


def _cmd_order(args, cfg, argv):
    res = estimate_order(args.f, _radii(args), config=cfg)
    ok = math.isfinite(res.order)
    residual = None
    if args.expect is not None:
        residual = abs(res.order - args.expect)
        ok = ok and residual <= args.within
    return _report(args, cfg, argv, _verdict(ok), estimate=res.order, residual=residual,
                   table=res.table.to_dict()), res.table


def _values(text: str) -> list:
    out = []
    for item in text.split(","):
        item = item.strip()
        out.append(INFINITY if item == INFINITY else parse_scalar(item))
    return out


def _cmd_identity(args, cfg, argv):
    kind = args.identity
    if kind == "share":
        f, g = parse_expression(args.f, "u"), parse_expression(args.g, "u")
        cert = share_values(f, g, _values(args.values), counting_multiplicity=args.cm)
    elif kind == "equal":
        cert = check_rational_identity(parse_expression(args.lhs, "u"), parse_expression(args.rhs, "u"))
    elif kind == "set-sharing":
        cert = check_set_sharing_example(parse_scalar(args.a), parse_scalar(args.b))
    else:
        cert = check_derivative_sign_example()
    return _report(args, cfg, argv, cert.verdict, **_certificate_payload(cert))


# -- parser --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="emit a JSON report")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv",
                     help="emit the characteristic table as CSV (nev characteristic and nev order)")
    common.add_argument("--tol", type=float, default=None,
                        help=f"numeric separation tolerance (default from ${TOL_ENV_VAR}, else 1e-9)")
    common.add_argument("--quad-target", type=float, default=None,
                        help="absolute quadrature target per circle mean (default 1e-8)")
    common.add_argument("--self-check", action=argparse.BooleanOptionalAction, default=True,
                        help="run family self-checks (default: on)")
    common.add_argument("--seed", type=int, default=None, help="reserved; all algorithms are deterministic")
    return common


def _add_radii(p: argparse.ArgumentParser, rmin: float, rmax: float, points: int) -> None:
    p.add_argument("--rmin", type=float, default=rmin)
    p.add_argument("--rmax", type=float, default=rmax)
    p.add_argument("--points", type=int, default=points, help="number of geometric radii")
    p.add_argument("--radii", default=None, help="explicit comma-separated radii (overrides the grid)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = argparse.ArgumentParser(prog="valdist",
                                  description="Exact uniqueness certificates and numerical value-distribution checks.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="certify a polynomial")
    p.add_argument("--poly", required=True, help='polynomial in z, e.g. "z^4-2z^2"')
    p.add_argument("--criterion", choices=sorted(_CRITERIA), default="all")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("family", parents=[common], help="build and self-check a polynomial family member")
    p.add_argument("family", choices=FAMILY_IDS)
    p.add_argument("--n", default=None)
    p.add_argument("--m", default=None)
    for name in ("a", "b", "c", "A"):
        p.add_argument(f"--{name}", default=None, help="exact scalar such as 3, 1/2 or 1+2i")
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("gate", parents=[common], help="evaluate a unique-range-set gate inequality")
    p.add_argument("gate", choices=GATE_IDS)
    p.add_argument("params", nargs="*", metavar="key=value")
    p.set_defaults(func=_cmd_gate)

    nev = sub.add_parser("nev", help="numerical Nevanlinna checks")
    nsub = nev.add_subparsers(dest="nev", required=True)
    p = nsub.add_parser("characteristic", parents=[common], help="table of m, N and T over radii")
    p.add_argument("--f", required=True)
    _add_radii(p, 1.0, 100.0, 9)
    p.set_defaults(func=_cmd_characteristic)
    p = nsub.add_parser("jensen", parents=[common], help="Jensen formula residual (rational f)")
    p.add_argument("--f", required=True)
    p.add_argument("--R", type=float, nargs="+", default=[0.7, 1.3, 2.5])
    p.add_argument("--max-residual", type=float, default=1e-6)
    p.set_defaults(func=_cmd_jensen)
    p = nsub.add_parser("cartan", parents=[common], help="Cartan identity residual (rational f)")
    p.add_argument("--f", required=True)
    p.add_argument("--r", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--max-residual", type=float, default=1e-3)
    p.set_defaults(func=_cmd_cartan)
    p = nsub.add_parser("fft", parents=[common], help="first fundamental theorem drift")
    p.add_argument("--f", required=True)
    p.add_argument("--a", default="1", help="finite value a")
    _add_radii(p, 10.0, 100.0, 10)
    p.add_argument("--max-drift", type=float, default=0.2)
    p.set_defaults(func=_cmd_fft)
    p = nsub.add_parser("order", parents=[common], help="order estimate from T(r)")
    p.add_argument("--f", required=True)
    _add_radii(p, 5.0, 80.0, 12)
    p.add_argument("--expect", type=float, default=None, help="expected order; fail if off by more than --within")
    p.add_argument("--within", type=float, default=0.05)
    p.set_defaults(func=_cmd_order)

    ident = sub.add_parser("identity", help="exact identity checks in u = exp(cz)")
    isub = ident.add_subparsers(dest="identity", required=True)
    p = isub.add_parser("share", parents=[common], help="do f(u) and g(u) share the listed values?")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--values", required=True, help='comma-separated, "inf" allowed, e.g. "0,1,-1,inf"')
    p.add_argument("--cm", action="store_true", help="count multiplicities")
    p.set_defaults(func=_cmd_identity)
    p = isub.add_parser("equal", parents=[common], help="exact equality of two rational functions of u")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_identity)
    p = isub.add_parser("set-sharing", parents=[common], help="F = u + a + b and F' share {a, b}")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_identity)
    p = isub.add_parser("derivative-sign", parents=[common], help="sign linking f' - 1 and (f - 1)^2")
    p.set_defaults(func=_cmd_identity)
    return top


def _subparser_for(top: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.ArgumentParser:
    """Innermost subparser named in argv (for printing its synopsis)."""
    parser = top
    for token in argv:
        actions = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
        if actions and token in actions[0].choices:
            parser = actions[0].choices[token]
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    top = build_parser()
    try:
        old_err, sys.stderr = sys.stderr, stderr
        try:
            args = top.parse_args(argv)
        finally:
            sys.stderr = old_err
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    cfg = from_env().with_overrides(separation_tol=args.tol, quad_target=args.quad_target)
    try:
        out = args.func(args, cfg, argv)
    except (ValueError, UsageError) as exc:
        sub = _subparser_for(top, argv)
        stderr.write(sub.format_usage())
        stderr.write(f"{sub.prog}: error: {exc}\n")
        return EXIT_USAGE
    except QuadratureError as exc:
        stderr.write(f"valdist: quadrature failed: {exc}\n")
        return EXIT_FAIL
    report, table = out if isinstance(out, tuple) else (out, None)
    if args.fmt == "csv":
        if table is None:
            stderr.write(f"{_subparser_for(top, argv).prog}: error: --csv is only available for table output\n")
            return EXIT_USAGE
        stdout.write(table.to_csv())
    elif args.fmt == "json":
        stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(_text_report(report) + "\n")
    return _exit_code(report["verdict"])


def main() -> None:
    sys.exit(run())
