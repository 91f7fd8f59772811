"""Command-line entry point: ``asw <subcommand> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from .catalog import TABLE_P3, TABLE_P4, UnknownLabel
from .galois import (
    FAULTS,
    build_equations,
    endo_group,
    c1_identity_checks,
    c2_identity_checks,
    reconstruct_sigmas,
    symbolic_equations,
    verify,
)
from .groups import FiniteGroup, SearchBudgetExceeded, classify_group, presentation
from .params import GroupParams, InvalidParams
from .polyring import NonDivisible, Prime
from .tower import TowerError, TowerSpec
from .wittpoly import witt_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------


def _int_list(text: str, n: int, name: str) -> tuple:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"--{name} needs {n} comma-separated entries, got {text!r}")
    out = []
    for s in parts:
        if s in ("alpha", "a") and name == "b":
            out.append("alpha")
            continue
        try:
            out.append(int(s))
        except ValueError:
            raise UsageError(f"--{name}: {s!r} is not an integer") from None
    return tuple(out)


def _prime(args) -> int:
    if getattr(args, "p", None) is None:
        raise UsageError("--p is required")
    return int(Prime(args.p))


def _params(args, strict: bool = True) -> GroupParams:
    p = _prime(args)
    if getattr(args, "group", None):
        return GroupParams.from_row(args.group, p)
    if getattr(args, "a", None) is None:
        raise UsageError("give --group KEY or --a a0,a1 [--b b0,b1,b2,b3]")
    a = _int_list(args.a, 2, "a")
    if getattr(args, "b", None) is None:
        return GroupParams.degree_p3(p, *a)
    b = _int_list(args.b, 4, "b")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        params = GroupParams.degree_p4(p, a, b, strict=strict)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return params


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- equations ----------------------------------------------------------------


def _latex_sum(terms) -> str:
    out = []
    for c, _, tex in terms:
        out.append(tex if c == 1 else f"{c}{tex}")
    return " + ".join(out) if out else "0"


def cmd_equations(args) -> int:
    params = _params(args)
    spec = build_equations(params)
    symbolic = symbolic_equations(params)
    if args.format == "json":
        out = {
            "params": params.to_json(),
            "tower": spec.to_json(),
            "symbolic": [{"var": v, "rhs": " + ".join(t if c == 1 else f"{c}*{t}" for c, t, _ in terms)} for v, terms in symbolic],
        }
        print(_dump(out))
    elif args.format == "latex":
        print("\\begin{align*}")
        lines = [f"\\wp(x_{v[1]}) &= {_latex_sum(terms)}" for v, terms in symbolic]
        print(" \\\\\n".join(lines))
        print("\\end{align*}")
        print("\\begin{align*}")
        lines = [f"\\wp(x_{v[1]}) &= {w.to_str(latex=True)}" for v, w in spec.relations]
        print(" \\\\\n".join(lines))
        print("\\end{align*}")
    else:
        for v, w in spec.relations:
            print(f"℘({v}) = {w}")
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _verify_one(job):
    params, deep, fault, seed = job
    return verify(params, deep=deep, fault=fault, seed=seed)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ASW_THREADS", "1")))
    except ValueError:
        raise UsageError("ASW_THREADS must be an integer") from None


def cmd_verify(args) -> int:
    p = _prime(args)
    if args.inject_fault and args.inject_fault not in FAULTS:
        raise UsageError(f"unknown fault {args.inject_fault!r}; choose from {', '.join(sorted(FAULTS))}")
    if args.all:
        # both (xv) variants are verified at every p
        params_list = [GroupParams.from_row(r, p) for r in TABLE_P4 + TABLE_P3]
    else:
        params_list = [_params(args)]
    jobs = [(pp, args.deep, args.inject_fault, args.seed) for pp in params_list]
    n = min(_threads(), len(jobs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]

    timing = not args.no_timing
    if args.format == "json":
        if args.all:
            out = {"p": p, "passed": all(r.passed for r in reports), "reports": [r.to_json(timing) for r in reports]}
        else:
            out = reports[0].to_json(timing)
        print(_dump(out))
    elif args.format == "latex":
        for r in reports:
            print(_report_latex(r))
    else:
        print("\n".join(r.to_text() for r in reports))
        if args.all:
            good = sum(r.passed for r in reports)
            print(f"{good}/{len(reports)} groups pass")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _report_latex(rep) -> str:
    lines = [
        f"% {rep.params.label or rep.params}, p = {rep.params.p}, order {rep.closure_order}",
        "\\begin{tabular}{ll}",
    ]
    for c in rep.checks:
        name = c.name.replace("_", "\\_").replace("^", "\\^{}")
        lines.append(f"\\texttt{{{name}}} & {'pass' if c.passed else 'FAIL'} \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


# -- classify -----------------------------------------------------------------


def _group_from_tower(path: str) -> tuple[FiniteGroup, int]:
    try:
        with open(path) as fh:
            spec = TowerSpec.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except (ValueError, TowerError) as exc:
        raise UsageError(f"malformed tower file {path}: {exc}") from None
    return endo_group(reconstruct_sigmas(spec)), spec.p


def cmd_classify(args) -> int:
    if args.tower:
        G, p = _group_from_tower(args.tower)
    else:
        params = _params(args, strict=False)
        G, p = presentation(params).to_finite(), params.p
    try:
        row, text = classify_group(G, p, node_budget=args.node_budget)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        out = {"p": p, "order": len(G), "match": row.key if row else None, "description": text}
        if row is not None:
            out["row"] = row.to_json(p)
        print(_dump(out))
    elif row is None:
        print(text)
    else:
        james = row.james_label(p)
        extra = f" (Burnside {row.burnside}, James {james})" if row.burnside else ""
        print(f"{row.key}{extra}" if row.key == text else f"{text}{extra}")
    return EXIT_OK


# -- catalog ------------------------------------------------------------------


def cmd_catalog(args) -> int:
    p = _prime(args)
    rows = list(TABLE_P4) + list(TABLE_P3)
    if args.format == "json":
        print(_dump({"p": p, "table_p4": [r.to_json(p) for r in TABLE_P4], "table_p3": [r.to_json(p) for r in TABLE_P3]}))
        return EXIT_OK
    head = f"{'key':<12} {'a':<8} {'b':<12} {'James':<16} {'sigma_1..sigma_4':<24} applies"
    print(head)
    print("-" * len(head))
    for r in rows:
        a = ",".join(map(str, r.a)) if r.a is not None else "-"
        b = ",".join(map(str, r.resolved_b(p))) if r.b is not None else "-"
        james = r.james_label(p) or "-"
        tr = " ".join(r.translation) or "-"
        print(f"{r.key:<12} {a:<8} {b:<12} {james:<16} {tr:<24} {'yes' if r.applies_to(p) else 'no'}")
    return EXIT_OK


# -- lemmas -------------------------------------------------------------------


def cmd_lemmas(args) -> int:
    p = _prime(args)
    w = witt_set(p)
    checks = c1_identity_checks(p) + c2_identity_checks(p)
    if args.format == "json":
        out = {
            "p": p,
            "polynomials": {k: str(v) for k, v in w.as_dict().items()},
            "checks": [c.to_json() for c in checks],
        }
        print(_dump(out))
    else:
        latex = args.format == "latex"
        for k, v in w.as_dict().items():
            if latex:
                print(f"{k[0]}_{k[1]} &= {v.to_str(latex=True)} \\\\")
            else:
                print(f"{k} = {v}")
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.statement}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--p", type=int, default=sup, help="odd prime")
    common.add_argument("--format", choices=("text", "json", "latex"), default=sup)
    common.add_argument("--seed", type=int, default=sup, help="seed for randomized checks")
    common.add_argument("--deep", action="store_true", default=sup, help="full group table and randomized checks")
    common.add_argument("--node-budget", type=int, default=sup, help="isomorphism search node cap")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="asw", parents=[common], description="Artin-Schreier towers for groups of order p^3 and p^4")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_args(sp):
        sp.add_argument("--group", help="catalog key, e.g. '(xiv)', 'H', 'M(p^3)'")
        sp.add_argument("--a", help="a0,a1")
        sp.add_argument("--b", help="b0,b1,b2,b3 (b2 may be 'alpha')")

    sp = sub.add_parser("equations", parents=[common], help="print the defining equations")
    group_args(sp)
    sp.set_defaults(func=cmd_equations)

    sp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    group_args(sp)
    sp.add_argument("--all", action="store_true", help="every catalog row")
    sp.add_argument("--inject-fault", choices=sorted(FAULTS), help="corrupt the construction on purpose")
    sp.add_argument("--no-timing", action="store_true", help="omit elapsed_ms (byte-stable JSON)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", parents=[common], help="identify a group in the catalog")
    group_args(sp)
    sp.add_argument("--tower", help="JSON tower file; sigmas are rebuilt from the relations")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("catalog", parents=[common], help="print the group catalog")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("lemmas", parents=[common], help="the Witt-type polynomials and their identities")
    sp.set_defaults(func=cmd_lemmas)
    return parser


DEFAULTS = {"p": None, "format": "text", "seed": 0, "deep": False, "node_budget": 2_000_000}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        return args.func(args)
    except (UsageError, InvalidParams, UnknownLabel, TowerError, NonDivisible, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
