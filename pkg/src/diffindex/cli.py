"""Command-line front end.

Usage::

    diffindex index --system golden.dsys --assume-quasi-regular
    diffindex member --system golden.dsys --poly "y3 - 1" --format json

Exit status: 0 on success, 1 when an analysis fails (no stabilization,
quasi-regularity failure, a failed cross-check), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from typing import Any, Sequence

from .diffpoly import DiffSystem, to_string
from .index import (
    AnalysisError,
    analyze,
    mu_cap,
    mu_lower,
    mu_sequence,
    mu_upper,
    order_of_ideal,
    quasi_regularity_check,
    regularity_report,
)
from .jacobi import jacobi_bound, jacobi_number
from .membership import MembershipCertificate, certify, order_bound
from .parser import ParseError, SystemFile, parse_polynomial, parse_system_file
from .pseudo_jacobian import ZeroDivisorError

SCHEMA_VERSION = 1

log = logging.getLogger("diffindex")


class UsageError(Exception):
    pass


def load_golden_text() -> str:
    return resources.files("diffindex").joinpath("data/golden.dsys").read_text(encoding="utf-8")


def load_golden_report() -> dict[str, Any]:
    return json.loads(resources.files("diffindex").joinpath("data/golden_report.json").read_text(encoding="utf-8"))


def _read_system(args: argparse.Namespace) -> SystemFile:
    if not args.system:
        raise UsageError("--system is required")
    try:
        with open(args.system, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.system}: {exc.strerror}") from None
    return parse_system_file(text)


def _check_i(system: DiffSystem, i: int | None) -> int:
    if i is None:
        return system.e - 1
    if i < system.e - 1:
        raise UsageError(f"--i must be >= e-1 = {system.e - 1}")
    return i


def _status(args: argparse.Namespace) -> str:
    return "unconditional" if args.assume_quasi_regular else "conditional"


def _regularity_rows(report) -> list[dict[str, int | bool]]:
    return [
        {"i": row.i, "level": row.level, "trdeg": row.trdeg, "phi": row.phi, "agrees": row.agrees}
        for row in report.rows
    ]


def index_document(system: DiffSystem, i: int | None = None, assume: bool = False) -> dict[str, Any]:
    """Structured ``index`` report (stable schema)."""
    report = analyze(system, i)
    return {
        "version": SCHEMA_VERSION,
        "status": "unconditional" if assume else "conditional",
        "mu": list(report.mu_profile.values),
        "ranks": list(report.mu_profile.ranks),
        "omega": report.omega,
        "order": report.order,
        "jacobi_number": report.jacobi_number,
        "jacobi_bound": report.jacobi_bound,
        "bound_holds": report.bound_satisfied,
        "regularity_bound": report.regularity_bound,
        "regularity_table": _regularity_rows(report.regularity),
        "checks": dict(report.checks),
    }


def _emit(args: argparse.Namespace, doc: dict[str, Any], text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_index(args: argparse.Namespace) -> int:
    sf = _read_system(args)
    system = sf.system
    i = _check_i(system, args.i)
    doc = index_document(system, i, args.assume_quasi_regular)
    lines = [
        f"[{doc['status']}]",
        f"mu = {tuple(doc['mu'])}",
        f"omega = {doc['omega']}",
        f"order = {doc['order']}",
        f"J(E0) = {doc['jacobi_number']}",
        f"Jacobi bound = {doc['jacobi_bound']}: omega + order = {doc['omega'] + doc['order']} "
        f"{'<=' if doc['bound_holds'] else '>'} {doc['jacobi_bound']} ({'pass' if doc['bound_holds'] else 'FAIL'})",
        f"regularity bound e-1 = {doc['regularity_bound']}",
        "  i  level  trdeg  phi",
    ]
    lines += [f"{r['i']:3d}  {r['level']:5d}  {r['trdeg']:5d}  {r['phi']:3d}" for r in doc["regularity_table"]]
    lines += [f"check {name}: {'pass' if ok else 'FAIL'}" for name, ok in doc["checks"].items()]
    _emit(args, doc, lines)
    return 0 if all(doc["checks"].values()) else 1


def cmd_mu(args: argparse.Namespace) -> int:
    system = _read_system(args).system
    i = _check_i(system, args.i)
    profile = mu_sequence(system, i, cap=args.kmax)
    rows = [
        {"k": k, "rank": profile.ranks[k], "mu": mu, "lower": mu_lower(system, k), "upper": mu_upper(system, k)}
        for k, mu in enumerate(profile.values)
    ]
    doc = {"version": SCHEMA_VERSION, "i": i, "omega": profile.omega, "cap": profile.cap, "table": rows}
    lines = [f"i = {i}, cap = {profile.cap}", "  k  rank  mu  lower  upper"]
    lines += [f"{r['k']:3d}  {r['rank']:4d}  {r['mu']:2d}  {r['lower']:5d}  {r['upper']:5d}" for r in rows]
    lines.append(f"omega = {profile.omega}")
    _emit(args, doc, lines)
    return 0


def cmd_jacobi(args: argparse.Namespace) -> int:
    system = _read_system(args).system
    J, tau = jacobi_number(system.E0)
    doc = {
        "version": SCHEMA_VERSION,
        "E0": [list(row) for row in system.E0],
        "e": system.e,
        "jacobi_number": J,
        "witness": [t + 1 for t in tau],
        "jacobi_bound": jacobi_bound(system),
    }
    lines = [f"E0 = {doc['E0']}", f"J(E0) = {J} via tau = {doc['witness']}", f"bound J(E0) + e - min = {doc['jacobi_bound']}"]
    _emit(args, doc, lines)
    return 0


def cmd_order(args: argparse.Namespace) -> int:
    system = _read_system(args).system
    profile = mu_sequence(system, _check_i(system, args.i))
    order = order_of_ideal(profile, system)
    doc = {"version": SCHEMA_VERSION, "status": _status(args), "omega": profile.omega, "order": order}
    _emit(args, doc, [f"[{doc['status']}]", f"order = {system.e}*{system.r} - {profile.mu_omega} = {order}"])
    return 0


def cmd_regularity(args: argparse.Namespace) -> int:
    system = _read_system(args).system
    report = regularity_report(system)
    doc = {
        "version": SCHEMA_VERSION,
        "regularity": report.regularity,
        "bound": report.bound,
        "bound_holds": report.bound_holds,
        "regularity_table": _regularity_rows(report),
    }
    lines = ["  i  trdeg  phi"] + [f"{r.i:3d}  {r.trdeg:5d}  {r.phi:3d}" for r in report.rows]
    lines.append(f"regularity <= {report.regularity} (bound e-1 = {report.bound})")
    _emit(args, doc, lines)
    return 0 if report.bound_holds else 1


def cmd_check(args: argparse.Namespace) -> int:
    system = _read_system(args).system
    k_max = args.kmax
    if k_max is None:
        try:
            k_max = mu_sequence(system).omega + 2
        except AnalysisError:
            k_max = mu_cap(system)
    qr = quasi_regularity_check(system, k_max)
    doc = {
        "version": SCHEMA_VERSION,
        "k_max": k_max,
        "ranks": list(qr.ranks),
        "verified": qr.verified,
        "first_failure": qr.first_failure,
    }
    if qr.verified:
        lines = [f"full row rank verified up to k_max = {k_max}"]
    else:
        lines = [f"full row rank FAILS at k = {qr.first_failure}; index outputs are invalid"]
    _emit(args, doc, lines)
    return 0 if qr.verified else 1


def _certificate_doc(cert, names, N_index: int, args) -> dict[str, Any]:
    if isinstance(cert, MembershipCertificate):
        return {
            "member": True,
            "N": cert.N,
            "cofactors": [
                {"equation": i, "transform": j, "cofactor": to_string(g, names)} for (i, j), g in sorted(cert.cofactors.items())
            ],
            "degree_audit": {
                "D": cert.audit.D,
                "bound": cert.audit.bound,
                "holds": cert.audit.holds,
                "degrees": [{"equation": i, "transform": j, "degree": d} for (i, j), d in sorted(cert.audit.degrees.items())],
            },
        }
    definitive = args.assume_quasi_regular and cert.N >= N_index
    return {
        "member": False,
        "N": cert.N,
        "verdict": "not in [F]" if definitive else f"not in Delta_{cert.N + 1} (conditional)",
        "remainder": to_string(cert.remainder, names),
    }


def cmd_member(args: argparse.Namespace) -> int:
    sf = _read_system(args)
    system = sf.system
    names = sf.names
    queries = {}
    if args.poly:
        queries["poly"] = parse_polynomial(args.poly, names)
    else:
        queries = dict(sf.queries)
    if not queries:
        raise UsageError("no query: pass --poly or add q<k> lines to the system file")
    omega = mu_sequence(system).omega
    results = []
    lines = [f"[{_status(args)}] omega = {omega}"]
    for label, f in queries.items():
        N_index = order_bound(system, f, omega)
        N = args.N if args.N is not None else max(N_index, 0)
        cert = certify(system, f, N)
        entry = {"label": label, "poly": to_string(f, names), "order_bound": N_index}
        entry.update(_certificate_doc(cert, names, N_index, args))
        results.append(entry)
        lines.append(f"{label}: {entry['poly']}   N = {N}")
        if entry["member"]:
            lines.append("  member; certificate:")
            for c in entry["cofactors"]:
                lines.append(f"    g[{c['equation']},{c['transform']}] = {c['cofactor']}")
            audit = entry["degree_audit"]
            lines.append(f"  degree audit: max {max((d['degree'] for d in audit['degrees']), default=0)} <= {audit['bound']} ({'pass' if audit['holds'] else 'FAIL'})")
        else:
            lines.append(f"  {entry['verdict']}; normal form {entry['remainder']}")
    doc = {"version": SCHEMA_VERSION, "status": _status(args), "omega": omega, "results": results}
    _emit(args, doc, lines)
    return 0


def cmd_example(args: argparse.Namespace) -> int:
    sf = parse_system_file(load_golden_text())
    doc = index_document(sf.system, None, assume=True)
    golden = load_golden_report()
    diffs = [key for key in golden if doc.get(key) != golden[key]]
    lines = [f"{key}: {doc.get(key)!r}" for key in sorted(golden)]
    if diffs:
        lines += [f"MISMATCH {key}: expected {golden[key]!r}, got {doc.get(key)!r}" for key in diffs]
    else:
        lines.append("golden report reproduced")
    out = {"version": SCHEMA_VERSION, "matches": not diffs, "mismatches": diffs, "report": doc}
    _emit(args, out, lines)
    return 0 if not diffs else 1


COMMANDS = {
    "index": (cmd_index, "mu-sequence, omega, order, Jacobi bound, regularity"),
    "mu": (cmd_mu, "mu table with ranks and bound columns"),
    "jacobi": (cmd_jacobi, "Jacobi number of the order matrix"),
    "order": (cmd_order, "order of the difference ideal"),
    "member": (cmd_member, "membership certificate for --poly"),
    "check": (cmd_check, "quasi-regularity check up to --kmax"),
    "regularity": (cmd_regularity, "Hilbert-Levin regularity table"),
    "example": (cmd_example, "run the built-in example against its golden report"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="system file")
    common.add_argument("--kmax", type=int, help="largest k to compute")
    common.add_argument("--i", type=int, help="index i >= e-1 for J_{k,i}")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--assume-quasi-regular", action="store_true", help="assert the system is quasi-regular")
    common.add_argument("--poly", help="query polynomial for 'member'")
    common.add_argument("--N", type=int, help="transform-order bound for 'member' (default: from omega)")
    common.add_argument("--verbose", "-v", action="store_true")
    parser = argparse.ArgumentParser(prog="diffindex", description="Difference index of quasi-regular difference systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except ParseError as exc:
        print(f"{args.system or '<poly>'}:{exc.line}:{exc.column}: parse error: {exc.message}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AnalysisError, ZeroDivisorError) as exc:
        print(f"analysis failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
