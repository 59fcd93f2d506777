"""Command-line front end.

Payloads are inline JSON or paths to JSON files; index sets are written
``{1,2}``.  Exit status is 0 on success, 1 when a verification fails and 2
on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .blocks import BlockError, verify_block
from .classify import block_key, canonical_form, describe_index_set, integral_indices, is_isomorphic_simple
from .localization import LocalizationError, localize, verify_localization_realizations
from .modules import dual
from .quiver import quiver_export, vertex_label
from .resolution import default_upto, koszul_check, minimal_resolution, totalized_betti

OK, FAILED, INVALID = 0, 1, 2

_RULE = "-" * 60


class InputError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _weight(text):
    return ser.weight_from_json(ser.load_payload(text))


def _finite_set(text, what="E"):
    J = ser.parse_index_set(text)
    if not J.is_finite:
        raise ser.SchemaError("/", f"{what} must be a finite index set")
    return tuple(J.elements())


def cmd_classify(args) -> int:
    p = _weight(args.weight)
    form = canonical_form(p)
    payload = {
        "block_key": ser.weight_to_json(block_key(p)),
        "canonical_form": {"p_plus": ser.weight_to_json(form.p_plus), "J": ser.index_set_to_json(form.J)},
        "J_p": describe_index_set(integral_indices(p)),
    }
    text = "\n".join([
        f"weight        {p}",
        f"block key     {block_key(p)}",
        f"p_+           {form.p_plus}",
        f"J             {form.J}",
        f"J_p           {integral_indices(p)}",
    ])
    _emit(args, payload, text)
    return OK


def cmd_iso(args) -> int:
    p, q = _weight(args.p), _weight(args.q)
    iso = is_isomorphic_simple(p, q)
    _emit(args, {"isomorphic": iso}, f"L({p}) and L({q}) are {'isomorphic' if iso else 'not isomorphic'}")
    return OK


def cmd_support(args) -> int:
    M = ser.module_from_json(ser.load_payload(args.module))
    w = _weight(args.weight)
    inside = M.support_contains(w)
    payload = {"module": str(M), "weight": ser.weight_to_json(w), "in_support": inside,
               "support": M.describe_support()}
    _emit(args, payload, f"{w} {'is' if inside else 'is not'} in the support of {M}")
    return OK


def cmd_act(args) -> int:
    M = ser.module_from_json(ser.load_payload(args.module))
    a = ser.element_from_json(ser.load_payload(args.element))
    v = ser.vector_from_json(ser.load_payload(args.vector), M)
    out = M.act(a, v)
    _emit(args, {"vector": ser.vector_to_json(out)}, str(out))
    return OK


def cmd_dual(args) -> int:
    M = dual(ser.module_from_json(ser.load_payload(args.module)))
    _emit(args, {"module": ser.module_to_json(M), "support": M.describe_support()}, str(M))
    return OK


def cmd_localize(args) -> int:
    M = ser.module_from_json(ser.load_payload(args.module))
    J = ser.parse_index_set(args.J)
    try:
        F = localize(M, J)
    except LocalizationError as exc:
        raise InputError(str(exc)) from None
    _emit(args, {"module": ser.module_to_json(F), "support": F.describe_support()}, str(F))
    return OK


def cmd_verify_loc(args) -> int:
    p = _weight(args.weight)
    try:
        reports = verify_localization_realizations(p, radius=args.radius)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    passed = all(r.passed for r in reports)
    lines = [f"{'PASS' if r.passed else 'FAIL'} claim ({r.claim}) {r.description}: "
             f"{r.probes} probes, {len(r.failures)} failures" for r in reports]
    for r in reports:
        lines.extend(f"  {f}" for f in r.failures[:5])
    _emit(args, {"passed": passed, "reports": [r.to_json() for r in reports]}, "\n".join(lines))
    return OK if passed else FAILED


def cmd_quiver(args) -> int:
    E = _finite_set(args.E)
    print(quiver_export(E, args.format), end="" if args.format == "dot" else "\n")
    return OK


def _figure(args, tables: dict, title: str) -> str | None:
    if not args.figure:
        return None
    from .plotting import betti_figure

    return betti_figure(tables, args.figure, title)


def cmd_koszul(args) -> int:
    E = _finite_set(args.E)
    report = koszul_check(E, args.upto)
    payload = report.to_json()
    lines = [f"E = {vertex_label(E)}, certified up to homological degree {report.upto}",
             f"koszul: {'yes' if report.koszul else 'NO'}"]
    for U, table in report.tables.items():
        lines += [_RULE, f"S_{vertex_label(U)}", table.render_text()]
    for U, k, V, d in report.violations:
        lines.append(f"violation at S_{vertex_label(U)}: k={k}, vertex {vertex_label(V)}, degree {d}")
    fig = _figure(args, {vertex_label(U): t for U, t in report.tables.items()}, f"E = {vertex_label(E)}")
    if fig:
        payload["figure"] = fig
        lines += [_RULE, f"figure written to {fig}"]
    _emit(args, payload, "\n".join(lines))
    return OK if report.koszul else FAILED


def cmd_resolve(args) -> int:
    E = _finite_set(args.E)
    U = frozenset(_finite_set(args.vertex, "vertex"))
    if not U <= set(E):
        raise InputError(f"vertex {vertex_label(U)} is not a subset of E = {vertex_label(E)}")
    upto = default_upto(len(E)) if args.upto is None else args.upto
    table = minimal_resolution(U, E, upto).betti
    agrees = table == totalized_betti(U, E, upto)
    totals = [table.total(k) for k in table.degrees()]
    payload = {"E": list(E), "vertex": sorted(U), "upto": upto, "betti": table.to_json(),
               "totals": totals, "linear": table.is_linear(), "matches_tensor_totalization": agrees}
    lines = [f"minimal resolution of S_{vertex_label(U)} over E = {vertex_label(E)}", table.render_text(),
             f"totals {totals}", f"tensor totalization agrees: {agrees}"]
    fig = _figure(args, {vertex_label(U): table}, f"E = {vertex_label(E)}")
    if fig:
        payload["figure"] = fig
        lines.append(f"figure written to {fig}")
    _emit(args, payload, "\n".join(lines))
    return OK if agrees else FAILED


def cmd_verify_block(args) -> int:
    p = _weight(args.weight)
    E = _finite_set(args.E)
    try:
        report = verify_block(p, E)
    except BlockError as exc:
        raise InputError(str(exc)) from None
    lines = [f"{'PASS' if report.passed else 'FAIL'} block of {p} over E = {vertex_label(E)}"]
    lines += [f"  {name}: {n}" for name, n in sorted(report.checks.items())]
    lines += [f"  failed {f['check']}: {f['identity']}: {f['lhs']} != {f['rhs']}" for f in report.failures]
    _emit(args, report.to_json(), "\n".join(lines))
    return OK if report.passed else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylwt", description="Weight modules over the infinite Weyl algebra.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *positionals):
        sp = sub.add_parser(name, help=help_)
        for pos in positionals:
            sp.add_argument(pos)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    add("classify", cmd_classify, "block key and canonical form of a weight", "weight")
    add("iso", cmd_iso, "decide L(p) = L(q)", "p", "q")
    add("support", cmd_support, "weight membership in a module's support", "module", "weight")
    add("act", cmd_act, "apply an algebra element to a vector", "module", "element", "vector")
    add("dual", cmd_dual, "restricted dual of a module", "module")
    add("localize", cmd_localize, "localize a module at an index set", "module", "J")
    add("verify-loc", cmd_verify_loc, "check the localization realizations of L(p) and B(p)", "weight") \
        .add_argument("--radius", type=int, default=3)
    add("quiver", cmd_quiver, "export the quiver on subsets of E", "E") \
        .add_argument("--format", choices=("dot", "json"), default="dot")
    for name, func, help_, pos in (
        ("koszul", cmd_koszul, "check linearity of minimal resolutions", ("E",)),
        ("resolve", cmd_resolve, "Betti table of a simple module", ("E", "vertex")),
    ):
        sp = add(name, func, help_, *pos)
        sp.add_argument("--upto", type=int, default=None)
        sp.add_argument("--figure", metavar="PATH", help="also write the Betti table as an image")
    add("verify-block", cmd_verify_block, "check the block relations via explicit maps", "weight", "E")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        return args.func(args)
    except ser.SchemaError as exc:
        return _invalid(args, exc.path, exc.message)
    except InputError as exc:
        return _invalid(args, "/", str(exc))


def _invalid(args, pointer: str, message: str) -> int:
    if getattr(args, "json", False):
        print(json.dumps({"error": message, "pointer": pointer}, sort_keys=True))
    else:
        print(f"invalid input at {pointer}: {message}", file=sys.stderr)
    return INVALID


if __name__ == "__main__":
    sys.exit(main())
