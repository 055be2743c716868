"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage, parse or
evaluation error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from .errors import GwError
from .gw import REAL_CLOSED, FieldModel, GwElement
from .hilbert import (
    SurfaceInvariants,
    compare_with_printed,
    gottsche_rank_oracle,
    gottsche_report,
    gottsche_sign_oracle,
    local_hilb_class,
    local_hilb_series_gw,
    surface_formula_printed,
    yau_zaslow_reference,
)
from .k0var import (
    eval_chi,
    identity_checks,
    kernel_inventory,
    sym_chi,
    sym_delta_rank_check,
)
from .parser import parse_expr, render
from .power import axiom_suite, gw_seed, int_seed
from .series import TruncatedSeries

SCHEMA = 1
DEFAULT_SEED = 1729
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _order(text: str) -> int:
    n = int(text)
    if not 1 <= n <= 64:
        raise argparse.ArgumentTypeError("order must be in [1, 64]")
    return n


def _field(text: str) -> FieldModel:
    try:
        return FieldModel.parse(text)
    except GwError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=FieldModel.real_closed(),
                        help="cclosed | rclosed | fq:<q> | q (default rclosed)")
    common.add_argument("--order", type=_order, default=None, help="truncation order N, 1..64")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    common.add_argument("--trials", type=int, default=200, help="number of random trials")

    p = argparse.ArgumentParser(prog="gwhilb", description="Motivic Euler characteristics and enriched Goettsche series.")
    sub = p.add_subparsers(dest="command", required=True)

    chi = sub.add_parser("chi", parents=[common], help="evaluate chi^c of a variety expression")
    chi.add_argument("expr")

    ser = sub.add_parser("series", parents=[common], help="print a generating series")
    ser.add_argument("kind", choices=["local-hilb", "gottsche", "yau-zaslow", "surface-printed"])
    ser.add_argument("--ec", type=int, default=24, help="Euler characteristic of X(C)")
    ser.add_argument("--er", type=int, default=0, help="Euler characteristic of X(R)")
    ser.add_argument("--route", choices=["power", "sym", "both"], default="both")

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=["axioms", "identities", "conjecture", "gottsche"])
    ver.add_argument("--ring", choices=["z", "gw"], default="z")
    ver.add_argument("--ec", type=int, default=None)
    ver.add_argument("--er", type=int, default=None)
    ver.add_argument("--x", dest="x_expr", default=None, help="first expression for identities")
    ver.add_argument("--y", dest="y_expr", default=None, help="second expression for identities")
    return p


# -- rendering helpers ----------------------------------------------------


def _dump(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True)


def _gw_rows(s: TruncatedSeries) -> List[dict]:
    rows = []
    for n, c in enumerate(s.coeffs):
        rows.append({
            "n": n,
            "value": c.text(),
            "rank": c.rank(),
            "signature": c.signature() if c.field.orderings() else None,
        })
    return rows


def _table(rows: List[dict], columns: List[str]) -> str:
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in columns}
    lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
    for r in rows:
        lines.append("  ".join(str(r[c] if r[c] is not None else "-").rjust(widths[c]) for c in columns))
    return "\n".join(lines)


# -- commands -------------------------------------------------------------


def cmd_chi(args) -> tuple:
    expr = parse_expr(args.expr)
    value = eval_chi(expr, args.field)
    if args.json:
        return EXIT_OK, _dump({"command": "chi", "expr": render(expr), "result": value.to_json()})
    lines = [
        f"chi^c({render(expr)}) over {args.field.name}",
        f"  {value.text()}",
        f"  rank {value.rank()}"
        + (f", signature {value.signature()}" if args.field.orderings() else "")
        + f", discriminant {value.discriminant_label()}",
    ]
    return EXIT_OK, "\n".join(lines)


def cmd_series(args) -> tuple:
    order = args.order or 10
    f = args.field
    payload = {"command": "series", "kind": args.kind, "order": order, "field": f.name}
    text = []
    if args.kind == "local-hilb":
        s = local_hilb_series_gw(f, order)
        classes = [local_hilb_class(m) for m in range(order + 1)]
        rows = _gw_rows(s)
        for r, cls in zip(rows, classes):
            r["cells"] = str(cls)
        payload["coefficients"] = rows
        payload["cells_match"] = all(cls.chi(f) == s[m] for m, cls in enumerate(classes))
        text.append(f"sum chi^c(Hilb^m_0(A^2)) t^m over {f.name}, order {order}")
        text.append(_table(rows, ["n", "value", "rank", "signature", "cells"]))
        text.append(f"cell decomposition matches product: {payload['cells_match']}")
    elif args.kind == "gottsche":
        inv = SurfaceInvariants(args.ec, args.er)
        report = gottsche_report(inv, f, order)
        chosen = report["via_sym"] if args.route == "sym" else report["via_power"]
        payload.update({
            "e_C": inv.e_c,
            "e_R": inv.e_r,
            "route": args.route,
            "coefficients": _gw_rows(chosen),
            "routes_agree": report["routes_agree"],
            "rank_matches_oracle": report["rank_matches_oracle"],
            "rank_oracle": list(gottsche_rank_oracle(inv.e_c, order).coeffs),
        })
        if f.kind == REAL_CLOSED:
            payload["signature_matches_oracle"] = report["signature_matches_oracle"]
            payload["signature_oracle"] = list(gottsche_sign_oracle(inv.e_c, inv.e_r, order).coeffs)
        text.append(f"sum chi^c(Hilb^g X) t^g, e_C={inv.e_c}, e_R={inv.e_r}, over {f.name}, route {args.route}")
        text.append(_table(payload["coefficients"], ["n", "value", "rank", "signature"]))
        text.append(f"routes_agree: {report['routes_agree']}")
        text.append(f"rank matches prod (1-t^n)^(-e_C): {report['rank_matches_oracle']}")
        if "signature_matches_oracle" in payload:
            text.append(f"signature matches corrected real product: {payload['signature_matches_oracle']}")
    elif args.kind == "yau-zaslow":
        rank, sign = yau_zaslow_reference(args.er, order)
        rows = [{"n": n, "rank": a, "signature": b} for n, (a, b) in enumerate(zip(rank.coeffs, sign.coeffs))]
        payload.update({"e_C": 24, "e_R": args.er, "coefficients": rows})
        payload.pop("field")
        text.append(f"Yau-Zaslow reference series, e_C=24, e_R={args.er}, order {order}")
        text.append(_table(rows, ["n", "rank", "signature"]))
    else:
        inv = SurfaceInvariants(args.ec, args.er)
        printed = surface_formula_printed(inv.e_c, inv.e_r, f, order)
        diff = compare_with_printed(inv, f, order)
        payload.update({"e_C": inv.e_c, "e_R": inv.e_r, "coefficients": _gw_rows(printed), "diff": diff})
        text.append(f"printed surface formula, e_C={inv.e_c}, e_R={inv.e_r}, over {f.name}")
        text.append(_table(payload["coefficients"], ["n", "value", "rank", "signature"]))
        if diff["agree"]:
            text.append("agrees with the enriched series")
        else:
            degrees = ", ".join(str(d["degree"]) for d in diff["differences"])
            text.append(f"differs from the enriched series in degrees {degrees}")
            if diff["t1_discrepancy"]:
                text.append("warning: t^1 rank is e_R, but chi^c(Hilb^1 X) = chi^c(X) has rank e_C")
    if args.json:
        return EXIT_OK, _dump(payload)
    return EXIT_OK, "\n".join(text)


def _verify_axioms(args) -> dict:
    order = args.order or 10
    seed = int_seed() if args.ring == "z" else gw_seed(args.field)
    report = axiom_suite(seed, args.trials, order, args.seed)
    return {
        "ring": seed.ring.name,
        "order": order,
        "trials": args.trials,
        "rng_seed": args.seed,
        "results": report,
        "passed": all(r["failures"] == 0 for r in report),
    }


_IDENTITY_PAIRS = [
    ("point", "point"),
    ("quadext(-1)", "point"),
    ("proj(2)", "gm"),
    ("gm - point", "L * proj(1)"),
    ("grassmannian(2, 4)", "punctured_affine(3, 2)"),
]


def _verify_identities(args) -> dict:
    f = args.field
    if args.x_expr or args.y_expr:
        pairs = [(args.x_expr or "point", args.y_expr or "point")]
    else:
        pairs = _IDENTITY_PAIRS
    results = []
    for xs, ys in pairs:
        x, y = parse_expr(xs), parse_expr(ys)
        try:
            checks = identity_checks(x, y, f)
        except GwError as exc:
            if args.x_expr or args.y_expr:
                raise
            results.append({"x": xs, "y": ys, "skipped": str(exc)})
            continue
        results.append({"x": xs, "y": ys, "checks": checks, "passed": all(c["ok"] for c in checks)})
    strata = [
        {"r": r, "n": n, "ok": sym_delta_rank_check(r, n)} for r in range(-5, 11) for n in range(1, 7)
    ]
    passed = all(r.get("passed", True) for r in results) and all(s["ok"] for s in strata)
    return {
        "field": f.name,
        "pairs": results,
        "strata_rank_identity": {"checked": len(strata), "failures": [s for s in strata if not s["ok"]]},
        "passed": passed,
    }


def _verify_conjecture(args) -> dict:
    order = args.order or 8
    f = args.field
    seed = gw_seed(f)
    rows = []
    for k in kernel_inventory(f):
        q = eval_chi(k, f)
        bad = [n for n in range(1, order + 1) if not sym_chi(q, n).is_zero()]
        base = seed.base(q, order)
        seed_ok = base == TruncatedSeries.one(base.ring, order)
        rows.append({"expr": render(k), "failing_n": bad, "seed_series_is_one": seed_ok, "ok": not bad and seed_ok})
    return {"field": f.name, "order": order, "kernel": rows, "passed": all(r["ok"] for r in rows)}


def gottsche_grid(rng_seed: int, extra: int = 50) -> List[tuple]:
    """K3 values (24, e_R) for even e_R in [-18, 20] plus random pairs with |e| <= 10."""
    grid = [(24, er) for er in range(-18, 21, 2)]
    rng = random.Random(rng_seed)
    while len(grid) < 20 + extra:
        ec, er = rng.randint(-10, 10), rng.randint(-10, 10)
        if (ec - er) % 2 == 0:
            grid.append((ec, er))
    return grid


def _verify_gottsche(args) -> dict:
    order = args.order or 8
    f = args.field
    if args.ec is not None or args.er is not None:
        ec = 24 if args.ec is None else args.ec
        er = 0 if args.er is None else args.er
        grid = [(ec, er)]
    else:
        grid = gottsche_grid(args.seed)
    rows = []
    for ec, er in grid:
        inv = SurfaceInvariants(ec, er)
        rep = gottsche_report(inv, f, order)
        row = {
            "e_C": ec,
            "e_R": er,
            "routes_agree": rep["routes_agree"],
            "rank_matches_oracle": rep["rank_matches_oracle"],
        }
        if "signature_matches_oracle" in rep:
            row["signature_matches_oracle"] = rep["signature_matches_oracle"]
            printed = compare_with_printed(inv, f, order)
            row["printed_formula_t1_discrepancy"] = printed["t1_discrepancy"]
        row["ok"] = all(v for k, v in row.items() if k.endswith(("agree", "oracle")))
        rows.append(row)
    return {"field": f.name, "order": order, "cases": rows, "passed": all(r["ok"] for r in rows)}


def cmd_verify(args) -> tuple:
    runner = {
        "axioms": _verify_axioms,
        "identities": _verify_identities,
        "conjecture": _verify_conjecture,
        "gottsche": _verify_gottsche,
    }[args.suite]
    report = runner(args)
    code = EXIT_OK if report["passed"] else EXIT_FAIL
    if args.json:
        return code, _dump({"command": "verify", "suite": args.suite, **report})
    return code, _verify_text(args.suite, report)


def _verify_text(suite: str, report: dict) -> str:
    status = "PASS" if report["passed"] else "FAIL"
    lines = [f"verify {suite}: {status}"]
    if suite == "axioms":
        for r in report["results"]:
            lines.append(f"  {r['axiom']}: {r['failures']}/{r['trials']} failures")
    elif suite == "identities":
        for p in report["pairs"]:
            if "skipped" in p:
                lines.append(f"  X={p['x']}, Y={p['y']}: skipped ({p['skipped']})")
            else:
                bad = sum(not c["ok"] for c in p["checks"])
                lines.append(f"  X={p['x']}, Y={p['y']}: {len(p['checks']) - bad}/{len(p['checks'])} ok")
        s = report["strata_rank_identity"]
        lines.append(f"  strata rank identity: {s['checked'] - len(s['failures'])}/{s['checked']} ok")
    elif suite == "conjecture":
        for r in report["kernel"]:
            lines.append(f"  {r['expr']}: {'ok' if r['ok'] else 'FAIL at n=' + str(r['failing_n'])}")
    else:
        for r in report["cases"]:
            lines.append(
                f"  e_C={r['e_C']:>3} e_R={r['e_R']:>3}: routes_agree={r['routes_agree']} "
                f"rank_oracle={r['rank_matches_oracle']}"
                + (f" sign_oracle={r['signature_matches_oracle']}" if "signature_matches_oracle" in r else "")
            )
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None) -> tuple:
    """Run the CLI and return ``(exit_code, output_text)`` without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_USAGE if exc.code else EXIT_OK), ""
    commands = {"chi": cmd_chi, "series": cmd_series, "verify": cmd_verify}
    try:
        return commands[args.command](args)
    except GwError as exc:
        return EXIT_USAGE, f"error: {exc}"


def main(argv: Optional[List[str]] = None) -> int:
    code, out = run(argv)
    if out:
        stream = sys.stderr if out.startswith("error:") else sys.stdout
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
