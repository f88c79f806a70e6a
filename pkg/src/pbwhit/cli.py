"""Command-line interface.

Every command writes a single report envelope, as canonical one-line JSON
(sorted keys, no whitespace) or as readable text.  The payload of a run is
byte-stable for fixed inputs; only the envelope timestamp varies.  Exit
status: 0 = pass, 1 = the check ran and failed, 2 = bad input or an
internal certification error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .algebra import (
    AlgebraError,
    builtin_algebra,
    check_jacobi,
    grading_violations,
    load_algebra,
    parse_rational,
)
from .localization import verify_phi_homomorphism
from .modules import (
    MODULE_KINDS,
    DegreeBudgetError,
    InconsistencyError,
    ModuleParameterError,
    build_module,
    filtration_check,
    iso_invariants,
    parse_vector,
    simplicity_probe,
    submodule_saturation,
    tensor_certification,
    whittaker_vectors,
)
from .pbw import (
    centrality_check,
    special_element,
    verify_straightening_identities,
)
from .properties import run_suites

_PARAM_FLAGS = ("e", "p", "z", "a", "xi", "omega", "alpha")


def _add_module_args(sub, with_probe=False):
    sub.add_argument("--module", required=True, choices=MODULE_KINDS)
    for flag in _PARAM_FLAGS:
        sub.add_argument(f"--{flag}", type=parse_rational, default=None,
                         metavar="NUM[/DEN]")
    sub.add_argument("--max-degree", type=int, default=4, metavar="N")
    if with_probe:
        sub.add_argument("--probe-e", type=parse_rational, default=None,
                         metavar="NUM[/DEN]")
        sub.add_argument("--probe-p", type=parse_rational, default=None,
                         metavar="NUM[/DEN]")


def _module_params(args):
    return {
        flag: getattr(args, flag)
        for flag in _PARAM_FLAGS
        if getattr(args, flag) is not None
    }


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pbwhit",
        description="Exact PBW normal ordering and Whittaker-vector "
        "computations for the Schrodinger Lie algebra.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, metavar="FILE")
    # accept the output flags after the subcommand too; SUPPRESS keeps a
    # value given before the subcommand from being reset to a default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[common], **kw))

    s = sub.add_parser("check-algebra",
                       help="validate brackets, Jacobi identity, gradings")
    s.add_argument("--algebra", default="schrodinger",
                   help="builtin name or path to an algebra file")

    s = sub.add_parser("verify-identities",
                       help="compare engine commutators [x, y^n] to closed forms")
    s.add_argument("--max-n", type=int, default=6)

    sub.add_parser("center-check",
                   help="certify the sl2 Casimir and the quasi-central element")

    sub.add_parser("phi-check",
                   help="verify the localization homomorphism on generator pairs")

    s = sub.add_parser("whittaker",
                       help="solve for Whittaker vectors up to a degree bound")
    _add_module_args(s, with_probe=True)

    s = sub.add_parser("probe-simplicity",
                       help="check the Whittaker space of the module's own type "
                            "is one-dimensional (necessary condition)")
    _add_module_args(s)

    s = sub.add_parser("saturate",
                       help="dimension of the submodule generated by given vectors, "
                            "within the degree truncation")
    _add_module_args(s)
    s.add_argument("--generator", action="append", required=True,
                   metavar="EXPR", help="e.g. 'q^2*h - 2*w'; repeatable")

    s = sub.add_parser("filtration",
                       help="certify the chain generated by powers of the shifted "
                            "quasi-central element")
    for flag in ("e", "p", "a"):
        s.add_argument(f"--{flag}", type=parse_rational, required=True,
                       metavar="NUM[/DEN]")
    s.add_argument("--i-max", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=6, metavar="N")

    s = sub.add_parser("tensor",
                       help="build the Heisenberg (x) sl2 tensor module and certify "
                            "its cyclic Whittaker vector")
    for flag in ("e", "p", "z"):
        s.add_argument(f"--{flag}", type=parse_rational, required=True,
                       metavar="NUM[/DEN]")
    s.add_argument("--omega", type=parse_rational, default=None,
                   metavar="NUM[/DEN]")

    s = sub.add_parser("invariants",
                       help="with --module: isomorphism invariants; without: "
                            "run the seeded property suites")
    s.add_argument("--module", choices=MODULE_KINDS, default=None)
    for flag in _PARAM_FLAGS:
        s.add_argument(f"--{flag}", type=parse_rational, default=None,
                       metavar="NUM[/DEN]")
    s.add_argument("--max-degree", type=int, default=4, metavar="N")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=200)
    return parser


def _run_check_algebra(args):
    spec = load_algebra(args.algebra)
    jac = check_jacobi(spec)
    grade_bad = grading_violations(spec)
    payload = {
        "task": "check_algebra",
        "algebra": spec.name,
        "generators": [[g.name, g.grading] for g in spec.generators],
        "central": [spec.generators[i].name for i in sorted(spec.central)],
        "bracket_count": len(spec.brackets),
        "jacobi_checked_triples": jac.triples_checked,
        "jacobi_ok": jac.passed,
        "jacobi_failures": list(jac.failures),
        "grading_ok": not grade_bad,
        "grading_failures": grade_bad,
    }
    return payload, jac.passed and not grade_bad, []


def _run_verify_identities(args):
    spec = builtin_algebra("schrodinger")
    report = verify_straightening_identities(spec, args.max_n)
    payload = {
        "task": "verify_identities",
        "max_n": args.max_n,
        "entries": [[ident, n, ok] for ident, n, ok, _, _ in report.entries],
        "failures": [
            {"identity": ident, "n": n, "engine": lhs, "closed_form": rhs}
            for ident, n, ok, lhs, rhs in report.entries
            if not ok
        ],
    }
    return payload, report.passed, []


def _run_center_check(args):
    sl2 = builtin_algebra("sl2")
    schro = builtin_algebra("schrodinger")
    casimir = centrality_check(
        special_element(sl2, "casimir_sl2"), element_name="casimir_sl2"
    )
    quasi = centrality_check(
        special_element(schro, "quasi_central"),
        modulo_central=True,
        element_name="quasi_central",
    )
    entries = []
    for rep, algebra in ((casimir, "sl2"), (quasi, "schrodinger")):
        for gen, ok, witness in rep.entries:
            entries.append(
                {
                    "element": rep.element_name,
                    "algebra": algebra,
                    "generator": gen,
                    "modulo_central": rep.modulo_central,
                    "ok": ok,
                    "witness": witness or "",
                }
            )
    payload = {"task": "center_check", "entries": entries}
    return payload, casimir.passed and quasi.passed, []


def _run_phi_check(args):
    entries, passed = verify_phi_homomorphism()
    payload = {
        "task": "phi_check",
        "entries": [[label, ok] for label, ok, *_ in entries],
        "failures": [
            {"pair": label, "lhs": lhs, "rhs": rhs}
            for label, ok, lhs, rhs in entries
            if not ok
        ],
    }
    return payload, passed, []


def _run_whittaker(args):
    module = build_module(args.module, _module_params(args))
    report = whittaker_vectors(
        module, args.max_degree, probe_e=args.probe_e, probe_p=args.probe_p
    )
    return report.payload(), report.passed, report.warnings


def _run_probe(args):
    module = build_module(args.module, _module_params(args))
    report = simplicity_probe(module, args.max_degree)
    payload = report.payload()
    return payload, report.passed, payload["warnings"]


def _run_saturate(args):
    module = build_module(args.module, _module_params(args))
    gens = [parse_vector(module, expr) for expr in args.generator]
    report = submodule_saturation(module, gens, args.max_degree)
    return report.payload(), report.passed, report.warnings


def _run_filtration(args):
    report = filtration_check(args.e, args.p, args.a, args.i_max, args.max_degree)
    return report.payload(), report.passed, report.warnings


def _run_tensor(args):
    module = build_module(
        "tensor",
        {"e": args.e, "p": args.p, "z": args.z, "omega": args.omega},
    )
    report = tensor_certification(module)
    return report.payload(), report.passed, module.warnings


def _run_invariants(args):
    if args.module is not None:
        module = build_module(args.module, _module_params(args))
        report = iso_invariants(module, args.max_degree)
        return report.payload(), report.passed, module.warnings
    suites = run_suites(args.seed, args.cases)
    payload = {
        "task": "property_suites",
        "seed": args.seed,
        "cases": args.cases,
        "suites": [rep.payload() for rep in suites],
    }
    return payload, all(rep.passed for rep in suites), []


_RUNNERS = {
    "check-algebra": _run_check_algebra,
    "verify-identities": _run_verify_identities,
    "center-check": _run_center_check,
    "phi-check": _run_phi_check,
    "whittaker": _run_whittaker,
    "probe-simplicity": _run_probe,
    "saturate": _run_saturate,
    "filtration": _run_filtration,
    "tensor": _run_tensor,
    "invariants": _run_invariants,
}


def _render_text(envelope):
    lines = [
        f"pbwhit {envelope['tool_version']}  {envelope['command']}  "
        f"[{envelope['status']}]",
        f"time: {envelope['timestamp']}",
    ]
    for w in envelope["warnings"]:
        lines.append(f"warning: {w}")
    lines.append(json.dumps(envelope["payload"], indent=2, sort_keys=True))
    return "\n".join(lines) + "\n"


def _emit(args, envelope):
    if args.format == "json":
        text = json.dumps(envelope, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        text = _render_text(envelope)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    try:
        payload, passed, warnings = _RUNNERS[args.command](args)
        status = "pass" if passed else "fail"
    except (AlgebraError, ModuleParameterError, DegreeBudgetError,
            InconsistencyError, ValueError, OSError) as exc:
        payload = {"error": str(exc), "error_kind": type(exc).__name__}
        status = "error"
        warnings = []
    envelope = {
        "tool_version": __version__,
        "command": args.command,
        "timestamp": timestamp,
        "status": status,
        "payload": payload,
        "warnings": list(warnings),
    }
    _emit(args, envelope)
    return {"pass": 0, "fail": 1, "error": 2}[status]


if __name__ == "__main__":
    sys.exit(main())
