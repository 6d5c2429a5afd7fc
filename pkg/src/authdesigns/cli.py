"""Command-line front end.

Thin wrappers over the library: identical inputs through the CLI and the
library produce identical artifacts.  Exit codes are a stable contract:
0 success/valid, 1 domain failure (including failed verification), 2
malformed input, 3 work budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import analysis, apa as apa_mod, balancing, catalog, designs
from . import difference_families as dfs
from .budget import ENV_VAR
from .errors import (AuthDesignsError, BudgetError, ConstructionError,
                     DomainError, StructuralError)
from .fileio import (atomic_write_json, canonical_dumps, digest,
                     fraction_to_json, load_json)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_MALFORMED = 2
EXIT_BUDGET = 3


def _fmt_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _emit(args, lines, doc):
    if args.format == "json":
        print(canonical_dumps(doc))
    else:
        for line in lines:
            print(line)


def _write_report(args, doc, default_path):
    path = args.out or default_path
    atomic_write_json(doc, path)
    return path


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    doc = load_json(args.path)
    if args.kind == "design":
        design, t_file, lam_file = designs.design_from_json(doc)
        t = args.t if args.t is not None else t_file
        lam = args.lambda_ if args.lambda_ is not None else lam_file
        if t is None:
            raise DomainError("design verification needs a strength: "
                              "pass --t or store \"t\" in the file")
        report = designs.verify_design(design, t, lam, budget=args.budget)
        detail = {"kind": "design", "t": t, "lambda": lam}
    elif args.kind == "cdf":
        df = dfs.df_from_json(doc)
        report = dfs.verify_df(df)
        detail = {"kind": "cdf", "lambda": df.lambda_}
    else:
        array = apa_mod.apa_from_json(doc)
        report = apa_mod.verify_apa(array, budget=args.budget)
        detail = {"kind": "apa",
                  "t": array.t, "lambda": array.lambda_}
    out_doc = dict(detail)
    out_doc.update(report.to_json())
    out_doc["path"] = os.path.basename(args.path)
    out_doc["input_digest"] = digest(doc)
    report_path = _write_report(args, out_doc, args.path + ".report.json")
    lines = [f"valid: {str(report.valid).lower()}"]
    if report.inferred_lambda is not None:
        lines.append(f"inferred lambda: {report.inferred_lambda}")
    for witness, observed in report.failures[:5]:
        lines.append(f"failure: witness={witness} observed={observed}")
    lines.append(f"report: {report_path}")
    _emit(args, lines, out_doc)
    return EXIT_OK if report.valid else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# build

def _default_out(path, suffix):
    stem, _ = os.path.splitext(path)
    return stem + suffix


def cmd_build(args) -> int:
    doc = load_json(args.path)
    if args.kind == "cdf":
        df = dfs.df_from_json(doc)
        report = dfs.verify_df(df)
        if not report.valid:
            raise DomainError(
                f"input is not a valid difference family: {report.failures[:3]}")
        matrix = dfs.develop_matrix(df)
        t, lam, source = 2, df.lambda_, "cdf"
        input_doc = dfs.df_to_json(df)
    else:
        design, t_file, lam_file = designs.design_from_json(doc)
        t = args.t if args.t is not None else t_file
        if t is None:
            raise DomainError("building from a design needs a strength: "
                              "pass --t or store \"t\" in the file")
        report = designs.verify_design(design, t, lam_file, budget=args.budget)
        if not report.valid:
            raise DomainError(
                f"input is not a valid {t}-design: {report.failures[:3]}")
        lam = report.inferred_lambda
        matrix = balancing.balance(design)   # raises if v does not divide b
        source = "design"
        input_doc = designs.design_to_json(design, t, lam)
    params = designs.DesignParameters(t=t, v=matrix.v, k=matrix.k, lambda_=lam)
    balanced = balancing.verify_balanced(matrix)
    if not balanced.valid:
        raise ConstructionError(f"built matrix is unbalanced: {balanced.witness}")
    out_path = args.out or _default_out(args.path, "-matrix.json")
    balancing.save_matrix(matrix, out_path, source=source, input_doc=input_doc)
    info = {
        "v": matrix.v, "k": matrix.k, "b": matrix.b,
        "rows_per_message": matrix.b // matrix.v,
        "optimality_class": designs.optimality_class(params),
        "out": out_path,
        "input_digest": digest(input_doc),
    }
    lines = [f"v={matrix.v} k={matrix.k} b={matrix.b} "
             f"b/v={matrix.b // matrix.v} class={info['optimality_class']}",
             f"matrix: {out_path}"]
    if args.table:
        lines.append(balancing.format_matrix_table(matrix))
    _emit(args, lines, info)
    return EXIT_OK


# ---------------------------------------------------------------------------
# attack

def _parse_orders(text: str):
    orders = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            orders.update(range(int(lo), int(hi) + 1))
        else:
            orders.add(int(part))
    if not orders:
        raise DomainError(f"no attack orders in {text!r}")
    return sorted(orders)


def cmd_attack(args) -> int:
    doc = load_json(args.path)
    matrix = balancing.matrix_from_json(doc)
    system = analysis.SecrecySystem(matrix)
    try:
        orders = _parse_orders(args.orders)
    except ValueError as exc:
        raise StructuralError(f"cannot parse --orders {args.orders!r}") from exc
    matrix_digest = digest(doc)
    lines = []
    if args.model == "classic":
        report = analysis.analyze_spoofing(system, orders, budget=args.budget)
        out_doc = analysis.deception_report_to_json(report, digest=matrix_digest)
        for res in report.orders:
            lines.append(
                f"i={res.i} value={_fmt_fraction(res.value)} "
                f"bound={_fmt_fraction(res.bound)} "
                f"tight={'yes' if res.tight else 'no'}")
        lines.append(f"security order: {report.security_order}")
    else:
        offline = args.model == "oracle-offline"
        entries = []
        for i in orders:
            if offline:
                value = analysis.voracle_offline_value(system, i, budget=args.budget)
                bound = analysis.offline_bound(system.v, system.k)
            else:
                value = analysis.voracle_online_value(system, i, budget=args.budget)
                bound = analysis.online_bound(system.v, system.k, i)
            tight = value == bound
            entries.append({"i": i, "value": fraction_to_json(value),
                            "bound": fraction_to_json(bound), "tight": tight})
            lines.append(f"i={i} value={_fmt_fraction(value)} "
                         f"bound={_fmt_fraction(bound)} "
                         f"tight={'yes' if tight else 'no'}")
        out_doc = {"model": args.model, "orders": entries,
                   "input_digest": matrix_digest}
    if args.out:
        atomic_write_json(out_doc, args.out)
        lines.append(f"report: {args.out}")
    _emit(args, lines, out_doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# params

def cmd_params(args) -> int:
    if args.teirlinck:
        if args.t is None or args.v is None:
            raise DomainError("--teirlinck needs --t and --v")
        params, b = designs.teirlinck_params(args.t, args.v)
        modulus = params.lambda_
        doc = {
            "mode": "teirlinck",
            "t": params.t, "v": params.v, "k": params.k,
            "lambda": str(params.lambda_),
            "modulus": str(modulus),
            "b": str(b),
        }
        lines = [
            f"congruence: v ≡ t (mod {modulus})",
            f"params: {params.t}-({params.v},{params.k},{params.lambda_})",
            f"b = {b}",
        ]
        _emit(args, lines, doc)
        return EXIT_OK

    if None in (args.t, args.v, args.k, args.lambda_):
        raise DomainError("params needs --t, --v, --k and --lambda")
    params = designs.DesignParameters(t=args.t, v=args.v, k=args.k,
                                      lambda_=args.lambda_)
    table = [(s, designs.lambda_s(params, s)) for s in range(params.t + 1)]
    bad = [(s, val) for s, val in table if val.denominator != 1]
    lines = [f"lambda_{s} = {_fmt_fraction(val)}" for s, val in table]
    doc = {
        "t": params.t, "v": params.v, "k": params.k, "lambda": params.lambda_,
        "lambda_s": [{"s": s, "value": fraction_to_json(val)} for s, val in table],
        "admissible": not bad,
    }
    if bad:
        lines.append("inadmissible: " + ", ".join(
            f"lambda_{s}={_fmt_fraction(val)}" for s, val in bad))
        _emit(args, lines, doc)
        return EXIT_DOMAIN
    b = params.b
    bound = designs.massey_schobi_bound(params.v, params.k, params.t)
    ratio = Fraction(b, 1) / bound
    ok, (b_val, rem) = designs.divisibility_check(params)
    doc.update({
        "b": str(b),
        "b_opt": fraction_to_json(bound),
        "ratio": fraction_to_json(ratio),
        "divisible": ok,
        "b_mod_v": rem,
        "optimality_class": designs.optimality_class(params),
    })
    lines.append(f"b = {b}")
    lines.append(f"b_opt = {_fmt_fraction(bound)}  (ratio {_fmt_fraction(ratio)})")
    lines.append(f"v | b: {'yes' if ok else 'no'} (b mod v = {rem})")
    lines.append(f"class: {designs.optimality_class(params)}")
    _emit(args, lines, doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# catalog

def _entry_doc(entry):
    doc = {"name": entry.name, "kind": entry.kind, "summary": entry.summary,
           "note": entry.note}
    if entry.params is not None:
        doc["params"] = {"t": entry.params.t, "v": entry.params.v,
                         "k": entry.params.k, "lambda": entry.params.lambda_}
    if entry.b_opt is not None:
        doc["b_opt"] = entry.b_opt
    return doc


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = catalog.entries()
        width = max(len(e.name) for e in rows)
        lines = [f"{e.name:<{width}}  {e.kind:<11}  {e.summary}" for e in rows]
        _emit(args, lines, [_entry_doc(e) for e in rows])
        return EXIT_OK

    if not args.name:
        raise DomainError(f"catalog {args.action} needs a NAME")
    entry = catalog.get(args.name)

    if args.action == "show":
        doc = _entry_doc(entry)
        lines = [f"name: {entry.name}", f"kind: {entry.kind}",
                 f"summary: {entry.summary}", f"note: {entry.note}"]
        if entry.params is not None:
            p = entry.params
            lines.append(f"params: {p.t}-({p.v},{p.k},{p.lambda_})")
            if p.is_admissible:
                ok, (b, rem) = designs.divisibility_check(p)
                bound = designs.massey_schobi_bound(p.v, p.k, p.t)
                doc.update({"b": str(p.b), "divisible": ok,
                            "b_opt_exact": fraction_to_json(bound),
                            "optimality_class": designs.optimality_class(p)})
                lines.append(f"b = {b}; v | b: {'yes' if ok else 'no'}; "
                             f"b_opt = {_fmt_fraction(bound)}; "
                             f"class = {designs.optimality_class(p)}")
        if entry.b_opt is not None:
            lines.append(f"published b_opt = {entry.b_opt}")
        _emit(args, lines, doc)
        return EXIT_OK

    # export
    payload = catalog.load_payload(entry.name)
    if payload is None:
        raise DomainError(f"{entry.name} is a parameter-only row; no payload to export")
    out_path = args.out or f"{entry.name}.json"
    if entry.kind == "design":
        design, t, lam = payload
        designs.save_design(design, out_path, t=t, lambda_=lam)
    elif entry.kind == "cdf":
        dfs.save_df(payload, out_path)
    else:
        apa_mod.save_apa(payload, out_path)
    _emit(args, [f"wrote {out_path}"], {"name": entry.name, "out": out_path})
    return EXIT_OK


# ---------------------------------------------------------------------------
# apa

def cmd_apa(args) -> int:
    array = apa_mod.van_rees_array()
    report = apa_mod.verify_apa(array, budget=args.budget)
    doc = {"t": array.t, "k": array.k, "v": array.v, "lambda": array.lambda_,
           "rows": len(array.rows), "valid": report.valid}
    lines = [f"APA_{array.lambda_}({array.t},{array.k},{array.v}): "
             f"{len(array.rows)} rows, valid: {str(report.valid).lower()}"]
    if args.out:
        apa_mod.save_apa(array, args.out)
        doc["out"] = args.out
        lines.append(f"wrote {args.out}")
    _emit(args, lines, doc)
    return EXIT_OK if report.valid else EXIT_DOMAIN


# ---------------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", default=None,
                        help="output file path")
    common.add_argument("--budget", type=int, default=None, metavar="N",
                        help=f"work budget in elementary steps "
                             f"(default {ENV_VAR} or 10^8)")
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="stdout format")

    parser = argparse.ArgumentParser(
        prog="authdesigns",
        description="Build and analyze authentication systems from "
                    "combinatorial designs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="verify a design/CDF/APA file")
    p.add_argument("path")
    p.add_argument("--kind", choices=("design", "cdf", "apa"), required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--lambda", dest="lambda_", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", parents=[common],
                       help="build a balanced encoding matrix")
    p.add_argument("path")
    p.add_argument("--kind", choices=("design", "cdf"), required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--table", action="store_true",
                   help="also print the matrix as a labeled table")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("attack", parents=[common],
                       help="evaluate spoofing/oracle attacks on a matrix file")
    p.add_argument("path")
    p.add_argument("--orders", default="0",
                   help="comma list and a-b ranges, e.g. 0,1 or 0-2")
    p.add_argument("--model",
                   choices=("classic", "oracle-offline", "oracle-online"),
                   default="classic")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("params", parents=[common],
                       help="exact parameter arithmetic for t-(v,k,lambda)")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--v", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lambda", dest="lambda_", type=int, default=None)
    p.add_argument("--teirlinck", action="store_true",
                   help="evaluate the t-(v, t+1, (t+1)!^(2t+1)) family")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("catalog", parents=[common],
                       help="browse bundled designs, CDFs, APAs, parameter rows")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("apa", parents=[common],
                       help="generate and verify the bundled APA_1(2,3,11)")
    p.set_defaults(func=cmd_apa)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except StructuralError as exc:
        detail = f" offenders={exc.offenders[:3]}" if exc.offenders else ""
        print(f"error: {exc}{detail}", file=sys.stderr)
        return EXIT_MALFORMED
    except (DomainError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except AuthDesignsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
