"""Command-line front-end.

Exit codes: 0 success (and every verified claim holds), 1 at least one
verification violation, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exprparse import ParseError, parse_element
from .heisenberg import Element, Monomial, commutator
from .liepoly import (
    ConstructionError,
    NotLiePolynomialError,
    classify_monomial,
    construct_basis_element,
    is_lie_polynomial,
    lie_closure,
)
from .qscalar import ContextMismatchError, ScalarContext
from .verify import SUITE_NAMES, run_suites

USAGE_ERROR = 2
VIOLATION_ERROR = 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qheis",
        description="Exact computation in the q-deformed Heisenberg algebra "
                    "with q a primitive p-th root of unity.",
    )
    ap.add_argument("--p", default="generic",
                    help="torsion order (integer >= 2) or 'generic'")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--out", help="write the JSON report/output to this path")
    ap.add_argument("--defn2-literal", action="store_true",
                    help="use the literal spanning-set classification of C powers")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("normalize", help="print the canonical form of an expression")
    sp.add_argument("expr")

    sp = sub.add_parser("comm", help="commutator of two expressions")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = sub.add_parser("member", help="Lie-polynomial membership of an expression")
    sp.add_argument("expr")

    sp = sub.add_parser("construct", help="bracket witness for a basis monomial")
    sp.add_argument("monomial")

    sp = sub.add_parser("closure", help="bracket-closure span of {A, B}")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--dmax", type=int, default=3)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suites", nargs="+", choices=SUITE_NAMES)
    sp.add_argument("--kmax", type=int, default=None,
                    help="window bound on C exponents (default 2p+2)")
    sp.add_argument("--dmax", type=int, default=None,
                    help="window bound on letter exponents (default 2p+2)")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--reach-kmax", type=int, default=4)
    sp.add_argument("--reach-dmax", type=int, default=4)
    sp.add_argument("--pairs", type=int, default=50,
                    help="random pairs for the oracle suite")
    sp.add_argument("--seed", type=int, default=0, help="seed for the oracle suite")

    sp = sub.add_parser("tables", help="structure constants of basis products")
    sp.add_argument("--kmax", type=int, default=2)
    sp.add_argument("--lmax", type=int, default=2)
    return ap


def _context(args) -> ScalarContext:
    if args.p == "generic":
        return ScalarContext.generic()
    try:
        p = int(args.p)
    except ValueError:
        raise SystemExit(_usage_error(f"--p must be an integer >= 2 or 'generic', got {args.p!r}"))
    if p < 2:
        raise SystemExit(_usage_error("--p must be at least 2"))
    return ScalarContext.torsion(p)


def _require_torsion(ctx: ScalarContext, what: str) -> None:
    if not ctx.is_torsion:
        raise SystemExit(_usage_error(f"{what} needs --p <int>; generic mode is not enough"))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE_ERROR


def _emit(args, text_form: str, json_obj) -> None:
    if args.format == "json":
        payload = json.dumps(json_obj, sort_keys=True, indent=2)
    else:
        payload = text_form
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(json_obj, sort_keys=True, indent=2) + "\n")
    print(payload)


def _parse_or_exit(text: str, ctx: ScalarContext) -> Element:
    try:
        return parse_element(text, ctx)
    except ParseError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _single_monomial(x: Element) -> Monomial | None:
    if len(x.terms) != 1:
        return None
    m, c = next(iter(x.terms.items()))
    return m if c == x.ctx.one() else None


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    ctx = _context(args)

    if args.command == "normalize":
        elem = _parse_or_exit(args.expr, ctx)
        _emit(args, elem.text(), elem.to_json_obj())
        return 0

    if args.command == "comm":
        left = _parse_or_exit(args.left, ctx)
        right = _parse_or_exit(args.right, ctx)
        result = commutator(left, right)
        _emit(args, result.text(), result.to_json_obj())
        return 0

    if args.command == "member":
        _require_torsion(ctx, "membership")
        elem = _parse_or_exit(args.expr, ctx)
        verdict, residual = is_lie_polynomial(elem, args.defn2_literal)
        obj = {
            "element": elem.to_json_obj(),
            "is_lie_polynomial": verdict,
            "residual": residual.to_json_obj(),
        }
        lines = [f"lie polynomial: {'yes' if verdict else 'no'}",
                 f"residual: {residual.text()}"]
        mono = _single_monomial(elem)
        if verdict and mono is not None:
            witness = construct_basis_element(ctx, mono, args.defn2_literal)
            obj["witness"] = witness.expr.text()
            lines.append(f"witness: {witness.expr.text()}")
        _emit(args, "\n".join(lines), obj)
        return 0 if verdict else VIOLATION_ERROR

    if args.command == "construct":
        _require_torsion(ctx, "construction")
        elem = _parse_or_exit(args.monomial, ctx)
        mono = _single_monomial(elem)
        if mono is None:
            return _usage_error("construct needs a single monomial with coefficient 1")
        try:
            witness = construct_basis_element(ctx, mono, args.defn2_literal)
        except (NotLiePolynomialError, ConstructionError) as exc:
            print(f"not constructible: {exc}", file=sys.stderr)
            return VIOLATION_ERROR
        obj = {
            "monomial": mono.text(),
            "witness": witness.expr.text(),
            "value": witness.value.to_json_obj(),
        }
        _emit(args, f"{mono.text()} = {witness.expr.text()}", obj)
        return 0

    if args.command == "closure":
        _require_torsion(ctx, "closure")
        basis = lie_closure(ctx, args.depth, args.kmax, args.dmax)
        obj = {
            "depth": args.depth,
            "kmax": args.kmax,
            "dmax": args.dmax,
            "dimension": basis.dimension,
            "rows": [row.to_json_obj() for row in basis.rows],
        }
        text = (f"dimension {basis.dimension} "
                f"(depth {args.depth}, k <= {args.kmax}, |d| <= {args.dmax})\n"
                + basis.text())
        _emit(args, text, obj)
        return 0

    if args.command == "verify":
        _require_torsion(ctx, "verification")
        kmax = args.kmax if args.kmax is not None else 2 * ctx.p + 2
        dmax = args.dmax if args.dmax is not None else 2 * ctx.p + 2
        reports = run_suites(
            ctx, args.suites, kmax=kmax, dmax=dmax, depth=args.depth,
            reach_kmax=args.reach_kmax, reach_dmax=args.reach_dmax,
            defn2_literal=args.defn2_literal, seed=args.seed, pairs=args.pairs,
        )
        obj = {"p": ctx.p, "reports": [r.to_json_obj() for r in reports]}
        text = "\n".join(r.summary_line() for r in reports)
        _emit(args, text, obj)
        return 0 if all(r.ok for r in reports) else VIOLATION_ERROR

    if args.command == "tables":
        monos = []
        for m in range(0, args.kmax + 1):
            monos.append(Monomial(m, 0))
            for n in range(1, args.lmax + 1):
                monos.append(Monomial(m, -n))
                monos.append(Monomial(m, n))
        monos.sort(key=lambda mm: (mm.d, mm.k))
        rows = []
        lines = []
        for m1 in monos:
            for m2 in monos:
                prod = Element.monomial(ctx, m1) * Element.monomial(ctx, m2)
                rows.append({
                    "left": m1.text(),
                    "right": m2.text(),
                    "product": prod.to_json_obj()["terms"],
                })
                lines.append(f"{m1.text()} . {m2.text()} = {prod.text()}")
        _emit(args, "\n".join(lines), {"p": ctx.p, "mode": ctx.mode, "rows": rows})
        return 0

    return _usage_error(f"unknown command {args.command!r}")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
