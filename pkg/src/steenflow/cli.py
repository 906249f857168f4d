"""Command-line frontend.

Exit codes: 0 success, 1 input error, 2 internal invariant failure,
3 scenario contradiction (``ohpoz analyze`` only, so scripts can branch).
Output is deterministic; ``--json`` variants carry a ``"schema": 1`` field.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import char_classes, flow_category, ohpoz, projective, steenrod
from .rings import AlgebraError, ConsistencyError, parse_ring_shorthand


def _emit_json(payload: dict):
    payload = {"schema": 1, **payload}
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise _InputError(str(exc)) from exc


class _InputError(Exception):
    pass


def _parse_coeff(text: str) -> int:
    text = text.strip().lower()
    if text == "z":
        return 0
    if text.startswith("f"):
        text = text[1:]
    try:
        return int(text)
    except ValueError:
        raise _InputError(f"bad coefficient spec {text!r} (use z, f2, f3, ...)")


# -- subcommand handlers ---------------------------------------------------------


def _cmd_steenrod(args) -> int:
    if args.action == "apply":
        ring = parse_ring_shorthand(args.ring)
        op = steenrod.parse_operation(args.op)
        elem = ring.parse(args.elem)
        result = steenrod.apply(op, elem)
        if args.json:
            _emit_json({"op": str(op), "ring": args.ring, "elem": str(elem), "result": str(result)})
        else:
            print(result)
    elif args.action == "normalize":
        elem = steenrod.parse_operation(args.op)
        if args.json:
            _emit_json({"result": str(elem)})
        else:
            print(elem)
    elif args.action == "milnor":
        elem = steenrod.milnor_q(args.i)
        if args.json:
            _emit_json({"i": args.i, "degree": elem.degree(), "result": str(elem)})
        else:
            print(elem)
    else:  # available
        gate = _parse_gate(args.gate)
        verdict = steenrod.q_available(gate, args.i)
        if args.json:
            _emit_json({"gate": args.gate, "i": args.i, "available": verdict})
        else:
            print("available" if verdict else "unavailable")
    return 0


def _parse_gate(text: str) -> steenrod.TruncationGate:
    text = text.strip()
    if text == "MU":
        return steenrod.TruncationGate("MU")
    if text == "HZ":
        return steenrod.TruncationGate("HZ")
    if text.startswith("tauMU:"):
        return steenrod.TruncationGate("tauMU", level=int(text.split(":", 1)[1]))
    if text.startswith("HFp:"):
        return steenrod.TruncationGate("HFp", prime=int(text.split(":", 1)[1]))
    if text.startswith("HF"):
        return steenrod.TruncationGate("HFp", prime=int(text[2:] or 2))
    raise _InputError(f"unknown gate {text!r}")


def _cmd_qclass(args) -> int:
    if args.action == "universal":
        max_rank = args.max_rank if args.max_rank is not None else 2 ** (args.i + 1) - 1
        result = char_classes.qi_universal(args.i, max_rank)
        if args.json:
            _emit_json({"i": args.i, "max_rank": max_rank, "result": str(result)})
        else:
            print(result)
    else:  # bundle
        data = _load_json(args.path)
        bundle = char_classes.bundle_from_json_dict(data)
        result = char_classes.qi_of_bundle(args.i, bundle)
        if args.json:
            _emit_json({"i": args.i, "result": str(result)})
        else:
            print(result)
    return 0


def _cmd_flowcat(args) -> int:
    if args.action == "obstructions":
        spectrum = flow_category.parse_spectrum(args.ring)
        out = []
        for gap in args.gap:
            desc = flow_category.obstruction_group(spectrum, gap)
            out.append((gap, desc))
        if args.json:
            _emit_json(
                {
                    "ring": args.ring,
                    "obstructions": [
                        {"gap": g, "kind": d.kind, "rank": d.rank, "torsion": list(d.torsion)}
                        for g, d in out
                    ],
                }
            )
        else:
            for g, d in out:
                print(f"gap {g}: {d}")
        return 0

    spec = flow_category.FlowCategorySpec.from_json_dict(_load_json(args.path))
    coeff = _parse_coeff(args.coeff)
    if args.action == "check":
        report = flow_category.validate(spec, coeff)
        if args.json:
            _emit_json(
                {
                    "clean": report.clean,
                    "violations": [
                        {"kind": v.kind, "witness": list(v.witness), "detail": v.detail}
                        for v in report.violations
                    ],
                }
            )
        else:
            print(report)
        return 0
    # homology
    cx = flow_category.floer_complex(spec, coeff)
    groups = flow_category.homology(cx)
    if args.json:
        _emit_json(
            {
                "coefficients": "Z" if coeff == 0 else f"F{coeff}",
                "homology": [
                    {"degree": n, "rank": g.rank, "torsion": list(g.torsion)}
                    for n, g in sorted(groups.items())
                ],
            }
        )
    else:
        for n, g in sorted(groups.items()):
            print(f"H_{n}: {g}")
    return 0


def _cmd_ohpoz(args) -> int:
    if args.action == "analyze":
        scenario = ohpoz.CleanScenario.from_json_dict(_load_json(args.path))
        verdict = ohpoz.check_scenario(scenario)
        if args.json:
            _emit_json(verdict.to_json_dict())
        else:
            print(verdict.kind)
            print(verdict.detail)
        return 3 if verdict.kind == "contradiction" else 0
    # search
    profiles = ohpoz.search_components(
        args.n, args.shape, betti_cap=args.cap, connected=True, closed=True
    )
    if args.json:
        _emit_json({"n": args.n, "shape": args.shape, "profiles": [list(p) for p in profiles]})
    else:
        for p in profiles:
            print(",".join(str(b) for b in p))
    return 0


def _cmd_rpcp(args) -> int:
    report = projective.build_hf_report(args.n)
    if args.json:
        payload = report.to_json_dict()
        if args.r is not None:
            payload["residue_reports"] = _residue_payload(args.n, args.r)
        _emit_json(payload)
        return 0
    print(f"n = {args.n}, period = {report.period}, operations: " + ", ".join(
        f"Q{i}" for i in report.available
    ))
    print(f"agreement range with the Lagrangian cohomology: {report.pss}")
    print("generators: one x_d per degree d mod", report.period)
    for i in report.available:
        row = [projective.strong_qi(args.n, i, d).render() for d in range(args.n + 1)]
        print(f"Q{i}(x_d), d = 0..{args.n}: " + ", ".join(row))
    if args.r is not None:
        _print_residue_report(args.n, args.r)
    return 0


def _residue_payload(n: int, r: int) -> dict:
    out = {"r": r, "identities": [], "tangent_class": {}}
    for i in sorted(steenrod.available_qs_for_lagrangian(n)):
        for d in range(n):
            rep = projective.ptconn_identities(projective.PtConnParams(n, r, i, d))
            if rep.applicable:
                out["identities"].append(
                    {
                        "i": i,
                        "d": d,
                        "applicable": list(rep.applicable),
                        "primary": str(rep.primary_rhs) if rep.primary_rhs is not None else None,
                        "dual": str(rep.dual_rhs) if rep.dual_rhs is not None else None,
                    }
                )
        qtc = projective.ptconn_qtc(n, r, i)
        out["tangent_class"][f"Q{i}"] = qtc.render()
    return out


def _print_residue_report(n: int, r: int):
    print(f"point residue data: r = {r}")
    for i in sorted(steenrod.available_qs_for_lagrangian(n)):
        qtc = projective.ptconn_qtc(n, r, i)
        print(f"  tangent class, index {i}: {qtc.render()} (dual residue {qtc.r_prime})")
        for d in range(n):
            rep = projective.ptconn_identities(projective.PtConnParams(n, r, i, d))
            if not rep.applicable:
                continue
            pieces = []
            if rep.primary_rhs is not None:
                pieces.append(f"primary: Q{i} y{d} = {rep.primary_rhs}")
            if rep.dual_rhs is not None:
                pieces.append(f"dual: Q{i} y{d} = {rep.dual_rhs}")
            if rep.product_relation is not None:
                lhs, rhs = rep.product_relation
                pieces.append(f"combined: {lhs} = {rhs}")
            print(f"  d={d}: " + "; ".join(pieces))


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steenflow")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("steenrod", help="Steenrod algebra operations")
    ps = p.add_subparsers(dest="action", required=True)
    a = ps.add_parser("apply", help="evaluate an operation on a ring element")
    a.add_argument("--op", required=True)
    a.add_argument("--ring", required=True, help="rp:n, cp:n or poly:m")
    a.add_argument("--elem", required=True)
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("normalize", help="rewrite a sum of Sq words in the admissible basis")
    a.add_argument("--op", required=True)
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("milnor", help="admissible form of the i-th primitive")
    a.add_argument("--i", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("available", help="availability of Q_i over a coefficient spectrum")
    a.add_argument("--gate", required=True, help="MU, tauMU:r, HF2, HFp:p, HZ")
    a.add_argument("--i", type=int, required=True)
    a.add_argument("--json", action="store_true")

    p = sub.add_parser("qclass", help="characteristic classes")
    ps = p.add_subparsers(dest="action", required=True)
    a = ps.add_parser("universal", help="universal expansion in w variables")
    a.add_argument("--i", type=int, required=True)
    a.add_argument("--max-rank", type=int, default=None)
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("bundle", help="evaluate on a bundle descriptor JSON")
    a.add_argument("path")
    a.add_argument("--i", type=int, required=True)
    a.add_argument("--json", action="store_true")

    p = sub.add_parser("flowcat", help="flow-category specs")
    ps = p.add_subparsers(dest="action", required=True)
    a = ps.add_parser("check", help="validate a spec JSON")
    a.add_argument("path")
    a.add_argument("--coeff", default="f2")
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("homology", help="homology of a spec JSON")
    a.add_argument("path")
    a.add_argument("--coeff", default="f2")
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("obstructions", help="obstruction groups of a coefficient spectrum")
    a.add_argument("--ring", required=True, help="MU, tauMU:r, HF2, HFp:p, HZ")
    a.add_argument("--gap", type=int, nargs="+", required=True)
    a.add_argument("--json", action="store_true")

    p = sub.add_parser("ohpoz", help="clean-intersection page analysis")
    ps = p.add_subparsers(dest="action", required=True)
    a = ps.add_parser("analyze", help="verdict for a scenario JSON (exit 3 on contradiction)")
    a.add_argument("path")
    a.add_argument("--json", action="store_true")
    a = ps.add_parser("search", help="admissible component profiles")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--shape", required=True, choices=["conn", "pt+conn"])
    a.add_argument("--cap", type=int, default=3)
    a.add_argument("--json", action="store_true")

    p = sub.add_parser("rpcp", help="projective Lagrangian report")
    ps = p.add_subparsers(dest="action", required=True)
    a = ps.add_parser("report")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--r", type=int, default=None)
    a.add_argument("--json", action="store_true")

    return parser


_HANDLERS = {
    "steenrod": _cmd_steenrod,
    "qclass": _cmd_qclass,
    "flowcat": _cmd_flowcat,
    "ohpoz": _cmd_ohpoz,
    "rpcp": _cmd_rpcp,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return _HANDLERS[args.command](args)
    except _InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
