"""Command-line front end.

Subcommands: fk, construct, decide, integrate, verify, complete, multi,
perturb.  Quartic coefficients are always given in the order c1,c2,c3,c4
of the monic quartic x^4 + c1 x^3 + c2 x^2 + c3 x + c4 (highest power
first).  Values starting with a minus sign need the attached form, e.g.
--p=-2,-3,2,2.  Inputs parse as exact rationals ("3/4", "-2", "0.01" ->
1/100); --rationalize instead snaps binary-float input strings to their
exact float values.  Exit codes: 0 decided-yes, 3 decided-no, 1 usage or
internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import elliptic, multipartite
from .bipartite import (
    ConditionsNotMet,
    QuarticCoeffs,
    UNIT_AMPLITUDE,
    UNIT_LEADING,
    build_solution,
    continuation,
    fk_table,
    solve_c1,
)
from .elliptic import ClosedForm, IntervalNotValid, Refusal, decide, numeric_check, render, render_refusal
from .partitions import format_fk
from .poly import Poly
from .scalars import parse_rational

EXIT_YES = 0
EXIT_USAGE = 1
EXIT_NO = 3


def _parse_value(text: str, rationalize: bool) -> Fraction:
    if rationalize:
        return Fraction(float(text))
    return parse_rational(text)


def _parse_quartic(text: str, rationalize: bool) -> QuarticCoeffs:
    parts = [t for t in text.split(",") if t.strip()]
    if len(parts) != 4:
        raise ValueError("--p expects four comma-separated values c1,c2,c3,c4")
    return QuarticCoeffs.from_list([_parse_value(t, rationalize) for t in parts])


def _parse_coeff_list(text: str, rationalize: bool) -> list[Fraction]:
    return [_parse_value(t, rationalize) for t in text.split(",") if t.strip()]


def _print_decision_text(out, verbose: bool) -> None:
    if isinstance(out, Refusal):
        print(render_refusal(out, "text"))
        return
    print(
        f"decided: yes  n={out.n}  s={out.s}  branch={out.branch}  "
        f"d={out.d}  m2={out.m2}"
    )
    print(f"G ({out.convention}) = {out.G.format()}")
    print(f"residual_zero: {not out.residual()}")
    print(render(out, "text"))
    if verbose:
        print("divisor diagnostics:")
        for dv in out.divisors:
            print(f"  s={dv.s}: F_1={dv.f1}, aux={dv.aux}, d={dv.d} [{dv.note}]")


def cmd_decide(args) -> int:
    c = _parse_quartic(args.p, args.rationalize)
    out = decide(args.n, c)
    verbose = args.verbose or bool(os.environ.get("BICHEB_VERBOSE"))
    if args.json:
        print(json.dumps(out.as_dict(), indent=2))
    else:
        _print_decision_text(out, verbose)
    return EXIT_YES if isinstance(out, ClosedForm) else EXIT_NO


def cmd_integrate(args) -> int:
    c = _parse_quartic(args.p, args.rationalize)
    out = decide(args.n, c)
    if isinstance(out, Refusal):
        print(render_refusal(out, args.format if args.format == "json" else "text"))
        return EXIT_NO
    print(render(out, args.format))
    if args.emit_samples:
        _emit_samples(out, args.emit_samples)
    return EXIT_YES


def _emit_samples(cf: ClosedForm, path: str, count: int = 200) -> None:
    import csv

    span = cf.default_check_interval()
    if span is None:
        return
    lo, hi = span
    piece = cf.piece_for(lo, hi)
    pf = cf.c.poly().to_float()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "integrand", "antiderivative"])
        for i in range(count + 1):
            x = lo + (hi - lo) * i / count
            rad = cf.radicand_sign * pf.eval(x)
            if rad <= 0:
                continue
            w.writerow([x, x / rad**0.5, cf.antiderivative(piece, x)])


def cmd_verify(args) -> int:
    c = _parse_quartic(args.p, args.rationalize)
    out = decide(args.n, c)
    if isinstance(out, Refusal):
        print(render_refusal(out, "text"))
        return EXIT_NO
    lo_s, hi_s = args.interval.split(",")
    try:
        err = numeric_check(out, (float(lo_s), float(hi_s)), args.tol)
    except IntervalNotValid as exc:
        print(f"interval not valid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = err <= args.tol
    print(f"numeric check on [{lo_s}, {hi_s}]: max error {err:.3e} (tol {args.tol:.1e})")
    if args.emit_samples:
        _emit_samples(out, args.emit_samples)
    return EXIT_YES if ok else EXIT_NO


def cmd_construct(args) -> int:
    c2 = _parse_value(args.c2, args.rationalize)
    c3 = _parse_value(args.c3, args.rationalize)
    c4 = _parse_value(args.c4, args.rationalize)
    normalization = UNIT_AMPLITUDE if args.normalize == "unit-m" else UNIT_LEADING
    roots = solve_c1(args.s, c2, c3, c4)
    built = []
    skipped = []
    for r in roots:
        if not r.exact:
            skipped.append({"c1": [str(r.lo), str(r.hi)], "note": "irrational F_1 root"})
            continue
        c = QuarticCoeffs(r.lo, c2, c3, c4)
        try:
            sol = build_solution(args.s, c, normalization)
        except ConditionsNotMet as exc:
            skipped.append({"c1": str(r.lo), "note": str(exc)})
            continue
        except ValueError as exc:
            skipped.append({"c1": str(r.lo), "note": str(exc)})
            continue
        built.append(sol)
    if args.json:
        print(
            json.dumps(
                {
                    "s": args.s,
                    "solutions": [s.as_dict() for s in built],
                    "skipped": skipped,
                },
                indent=2,
            )
        )
    else:
        print(f"s={args.s}: {len(roots)} real F_1 root(s) in c1")
        for sol in built:
            print(
                f"  c1={sol.c.c1}: u = {sol.u.format()}  m2={sol.m2}  d={sol.d}  "
                f"branch={sol.branch.value}  residual_zero={not sol.residual()}"
            )
        for sk in skipped:
            print(f"  c1={sk['c1']}: skipped ({sk['note']})")
    return EXIT_YES if built else EXIT_NO


def cmd_fk(args) -> int:
    table = fk_table(args.s)
    if args.eval is not None:
        c = _parse_coeff_list(args.eval, args.rationalize)
        if len(c) != 4:
            raise ValueError("--eval expects c1,c2,c3,c4")
        values = table.eval_fk(c)
        if args.json:
            print(
                json.dumps(
                    {
                        "s": args.s,
                        "c": [str(v) for v in c],
                        "F": [str(v) for v in values],
                    },
                    indent=2,
                )
            )
        else:
            for k, v in enumerate(values):
                print(f"F_{k} = {v}")
        return EXIT_YES
    if args.json:
        payload = []
        for k in table.ks():
            payload.append(
                {
                    "s": args.s,
                    "k": k,
                    "terms": [
                        {"parts": list(lam.parts), "coeff": str(coeff)}
                        for lam, coeff in sorted(table[k].items(), reverse=True)
                    ],
                }
            )
        print(json.dumps(payload, indent=2))
    else:
        for k in table.ks():
            print(format_fk(table, k))
    return EXIT_YES


def cmd_complete(args) -> int:
    fixed = {}
    for item in args.fix.split(","):
        key, _, val = item.partition("=")
        key = key.strip().lower()
        if not key.startswith("c") or key[1:] not in "1234":
            raise ValueError(f"bad --fix entry {item!r}")
        fixed[int(key[1])] = _parse_value(val, args.rationalize)
    target = args.solve.strip().lower()
    if not target.startswith("c") or target[1:] not in "1234":
        raise ValueError("--solve expects one of c1..c4")
    result = elliptic.complete_coefficient(
        args.n, fixed, int(target[1]), force_s=args.force_s
    )
    if args.json:
        print(json.dumps(result.as_dict(), indent=2))
    else:
        print(f"n={args.n}, s={result.s}, solving F_1 = 0 for {target}")
        for e in result.entries:
            root = str(e.root.lo) if e.root.exact else f"({e.root.lo}, {e.root.hi})"
            print(f"  {target} = {root}: {e.note}")
    return EXIT_YES if result.entries else EXIT_NO


def cmd_multi(args) -> int:
    rat = args.rationalize
    if args.p_roots or args.q_roots:
        if not (args.p_roots and args.q_roots is not None):
            raise ValueError("give both --p-roots and --q-roots, or coefficient lists")
        alphas = _parse_coeff_list(args.p_roots, rat)
        betas = _parse_coeff_list(args.q_roots, rat) if args.q_roots else []
        data = multipartite.OutsideData(tuple(alphas), tuple(betas))
        p, q = data.p(), data.q()
    else:
        if not args.p_coeffs:
            raise ValueError("need --p-coeffs/--q-coeffs or --p-roots/--q-roots")
        pc = _parse_coeff_list(args.p_coeffs, rat)
        qc = _parse_coeff_list(args.q_coeffs, rat) if args.q_coeffs else [Fraction(1)]
        p, q = Poly(list(reversed(pc))), Poly(list(reversed(qc)))
    sys_ = multipartite.coefficients_general(args.s, p, q)
    lem = multipartite.solvability_residuals(args.s, p, q)
    payload = {
        "s": args.s,
        "p": [str(v) for v in p.coeffs],
        "q": [str(v) for v in q.coeffs],
        "a": [str(v) for v in sys_.a],
        "negative_residuals": [str(v) for v in sys_.neg_residuals],
        "condition_residuals": [str(v) for v in lem],
        "origin_pinned": sys_.pinned_origin,
        "origin_residual": None
        if sys_.origin_residual is None
        else str(sys_.origin_residual),
        "solvable": sys_.solvable(),
    }
    constants = None
    if sys_.solvable():
        try:
            cval, m2 = multipartite.integration_constant(args.s, p, q, sys_.u)
            constants = {"c": str(cval), "m2": str(m2)}
        except multipartite.NoConsistentConstants as exc:
            constants = {"error": str(exc)}
    payload["constants"] = constants
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"s={args.s}  p = {p.format()}  q = {q.format()}")
        print(f"u = {sys_.u.format()}")
        print(f"negative-index residuals: {[str(v) for v in sys_.neg_residuals]}")
        print(f"condition residuals:      {[str(v) for v in lem]}")
        if sys_.pinned_origin:
            print(f"origin residual (q(0)=0): {sys_.origin_residual}")
        if constants:
            print(f"constants: {constants}")
        print(f"solvable: {sys_.solvable()}")
    return EXIT_YES if sys_.solvable() else EXIT_NO


def cmd_perturb(args) -> int:
    result = continuation(
        args.s,
        _parse_value(args.c2, args.rationalize),
        _parse_value(args.target_c3, args.rationalize),
        _parse_value(args.target_c4, args.rationalize),
        args.branch,
    )
    if args.json:
        print(json.dumps(result.as_dict(), indent=2))
    else:
        print(
            f"s={args.s} branch={args.branch}: tau*={result.tau_star:.6g} "
            f"c1={result.c1_final!r} ({result.message})"
        )
        if result.c1_exact is not None:
            print(f"  exact c1 = {result.c1_exact}, aux = {result.aux_at_target}")
        if result.solution is not None:
            print(f"  u = {result.solution.u.format()}  m2={result.solution.m2}")
        if result.reached and result.c1_exact is None:
            bound = result.ode_polypart_residual_bound()
            print(f"  certified-numeric: |F_1| = {result.f1_residual:.2e}, "
                  f"ODE residual bound on [-2,2] = {bound:.2e}")
    return EXIT_YES if result.reached else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bicheb",
        description=(
            "Exact construction of bipartite/multipartite Chebyshev polynomials "
            "and elementary closed forms for int x/sqrt(+-quartic) dx. "
            "Quartic coefficients are ordered c1,c2,c3,c4 (monic, highest first); "
            "values starting with '-' need the attached form, e.g. --p=-2,-3,2,2."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument(
            "--rationalize",
            action="store_true",
            help="interpret numeric inputs as binary floats snapped to exact rationals",
        )

    d = sub.add_parser("decide", help="decide elementary integrability")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--p", required=True, help="c1,c2,c3,c4")
    d.add_argument("--verbose", action="store_true")
    add_common(d)
    d.set_defaults(fn=cmd_decide)

    i = sub.add_parser("integrate", help="decide and render the antiderivative")
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--p", required=True)
    i.add_argument("--format", choices=("text", "latex", "json"), default="text")
    i.add_argument("--emit-samples", metavar="CSV")
    add_common(i)
    i.set_defaults(fn=cmd_integrate)

    v = sub.add_parser("verify", help="numeric check against quadrature")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", required=True)
    v.add_argument("--interval", required=True, help="a,b")
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--emit-samples", metavar="CSV")
    add_common(v)
    v.set_defaults(fn=cmd_verify)

    cst = sub.add_parser("construct", help="build inner polynomials for given c2,c3,c4")
    cst.add_argument("--s", type=int, required=True)
    cst.add_argument("--c2", required=True)
    cst.add_argument("--c3", required=True)
    cst.add_argument("--c4", required=True)
    cst.add_argument("--normalize", choices=("unit-lead", "unit-m"), default="unit-lead")
    add_common(cst)
    cst.set_defaults(fn=cmd_construct)

    f = sub.add_parser("fk", help="print the F_k coefficient tables")
    f.add_argument("--s", type=int, required=True)
    f.add_argument("--eval", metavar="C", help="evaluate at c1,c2,c3,c4")
    add_common(f)
    f.set_defaults(fn=cmd_fk)

    comp = sub.add_parser("complete", help="solve F_1 = 0 for a missing coefficient")
    comp.add_argument("--n", type=int, required=True)
    comp.add_argument("--fix", required=True, help="e.g. c2=-5,c3=0,c4=4")
    comp.add_argument("--solve", required=True, help="target coefficient, e.g. c1")
    comp.add_argument("--force-s", type=int, default=None)
    add_common(comp)
    comp.set_defaults(fn=cmd_complete)

    m = sub.add_parser("multi", help="general (p, q) condition system")
    m.add_argument("--s", type=int, required=True)
    m.add_argument(
        "--p-coeffs", "--p", dest="p_coeffs",
        help="descending coefficients of monic p (with leading 1)",
    )
    m.add_argument(
        "--q-coeffs", "--q", dest="q_coeffs",
        help="descending coefficients of monic q (with leading 1)",
    )
    m.add_argument("--p-roots", help="roots of p, comma separated")
    m.add_argument("--q-roots", help="roots of q, comma separated (may be empty)")
    add_common(m)
    m.set_defaults(fn=cmd_multi)

    pe = sub.add_parser("perturb", help="track an F_1 root toward target (c3, c4)")
    pe.add_argument("--s", type=int, required=True)
    pe.add_argument("--c2", required=True)
    pe.add_argument("--target-c3", required=True)
    pe.add_argument("--target-c4", required=True)
    pe.add_argument("--branch", type=int, required=True, help="root index, 1-based")
    add_common(pe)
    pe.set_defaults(fn=cmd_perturb)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
