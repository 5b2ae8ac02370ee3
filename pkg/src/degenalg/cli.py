"""Command-line interface.

Exit codes: 0 success/accept, 2 checked failure (identity violation,
rejected witness, refuted degeneration, non-Koszul verdict), 3 usage or
parse error.  All reports are plain text with a stable line grammar.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra import check_identities
from .cohomology import hochschild_h_dim, lie_h_dim
from .deformation import leading_analysis, verify_deformation
from .degeneration import obstruction_battery, verify_witness, witness_to_deformation
from .fileformat import (
    ParseError,
    load_algebra,
    load_deformation,
    load_witness,
    save_deformation,
)
from .koszul import is_N_koszul
from .lie3 import agaoka_diagram, classify3

OK, FAIL, USAGE = 0, 2, 3


def _fmt_violation(v):
    (i, j, k), residual = v
    res = ", ".join(str(x) for x in residual)
    return f"triple ({i},{j},{k}): residual [{res}]"


def cmd_check(args):
    t = load_algebra(args.file)
    report = check_identities(t)
    if report.passed:
        print(f"OK: {t.kind} identities hold (dim {t.dim})")
        return OK
    print(f"FAIL: {len(report.violations)} violated triples")
    for v in report.violations:
        print("  " + _fmt_violation(v))
    return FAIL


def cmd_classify(args):
    t = load_algebra(args.file)
    if t.dim != 3 or t.kind != "lie":
        raise ParseError(args.file, "classify needs a 3-dimensional lie algebra")
    print(str(classify3(t)))
    return OK


def cmd_cohomology(args):
    t = load_algebra(args.file)
    if args.degree < 0:
        raise ParseError("--degree", "degree must be nonnegative")
    if args.theory == "lie":
        if t.kind != "lie":
            raise ParseError(args.file, "lie cohomology needs a lie algebra")
        dim = lie_h_dim(t, args.degree)
    else:
        try:
            dim = hochschild_h_dim(t, args.degree)
        except ValueError as e:
            raise ParseError(args.file, str(e)) from None
    print(dim)
    return OK


def cmd_degenerate(args):
    a = load_algebra(args.source)
    b = load_algebra(args.target)
    if args.witness is None:
        rep = obstruction_battery(a, b)
        for line in rep.lines():
            print(line)
        if rep.refuted:
            print(f"REFUTED by {rep.decisive}")
            return FAIL
        print("NO REFUTATION (necessary conditions hold; not a proof)")
        return OK
    w = load_witness(args.witness)
    res = verify_witness(a, b, w)
    if not res.accepted:
        print(f"REJECT: {res.reason}")
        for e in res.negative_entries:
            print(f"  negative valuation at entry {e}")
        for ((i, j, k), got, want) in res.mismatches:
            print(f"  limit mismatch at ({i},{j},{k}): got {got}, want {want}")
        return FAIL
    print("ACCEPT: transported tensor is t-regular with the target as limit")
    if args.emit_deformation:
        fam = witness_to_deformation(a, b, w, args.order)
        ver = verify_deformation(fam)
        save_deformation(args.emit_deformation, fam)
        print(
            f"deformation of order {fam.order} written to "
            f"{args.emit_deformation} (identities mod t^{fam.order + 1}: "
            f"{'pass' if ver.passed else 'FAIL'})"
        )
    return OK


def cmd_deform_verify(args):
    fam = load_deformation(args.file)
    rep = verify_deformation(fam)
    if not rep.passed:
        print(f"FAIL: identities break at {len(rep.violations)} triples")
        for v in rep.violations[:10]:
            print("  " + _fmt_violation(v))
        return FAIL
    print(f"OK: deformation identities hold mod t^{fam.order + 1}")
    if not fam.is_trivial():
        la = leading_analysis(fam)
        print(
            f"leading term at order n={la.n}: "
            f"cocycle={'yes' if la.is_cocycle else 'no'}, "
            f"class nonzero={'yes' if la.class_nonzero else 'no'}"
        )
    else:
        print("trivial family (all maps zero)")
    return OK


def cmd_koszul(args):
    t = load_algebra(args.file)
    if t.kind != "graded_associative":
        raise ParseError(args.file, "koszul needs a graded_associative algebra")
    verdict = is_N_koszul(t, args.N, s=args.max_i, d=args.max_degree)
    print(str(verdict))
    if verdict.status == "bounds_insufficient":
        return USAGE
    return OK if verdict.status == "koszul_up_to_bounds" else FAIL


def cmd_diagram(args):
    alphas = []
    if args.alphas:
        for part in args.alphas.split(","):
            alphas.append(Fraction(part.strip()))
    else:
        alphas = [Fraction(2), Fraction(3)]
    report = agaoka_diagram(tuple(alphas))
    text = report.to_text()
    print(text)
    bad = report.inconclusive_pairs()
    if args.emit_report:
        import json

        doc = {
            "labels": [str(l) for l in report.labels],
            "pairs": {
                f"{a} -> {b}": {
                    "status": e.status,
                    "mechanism": e.mechanism,
                    "detail": e.detail,
                }
                for (a, b), e in sorted(report.entries.items())
            },
        }
        with open(args.emit_report, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
        print(f"machine-readable report written to {args.emit_report}")
    if bad:
        print(f"INCONCLUSIVE pairs: {bad}")
        return FAIL
    return OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="degenalg",
        description="exact verification of algebra degenerations, deformations, "
        "cohomology and Koszulity",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify Jacobi/associativity of an algebra file")
    c.add_argument("file")
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("classify", help="classify a 3-dimensional lie algebra")
    c.add_argument("file")
    c.set_defaults(fn=cmd_classify)

    c = sub.add_parser("cohomology", help="exact cohomology dimension")
    c.add_argument("file")
    c.add_argument("--theory", choices=("lie", "hochschild"), required=True)
    c.add_argument("--degree", type=int, required=True)
    c.set_defaults(fn=cmd_cohomology)

    c = sub.add_parser(
        "degenerate",
        help="verify a degeneration witness, or run the obstruction battery",
    )
    c.add_argument("--from", dest="source", required=True, metavar="A")
    c.add_argument("--to", dest="target", required=True, metavar="B")
    c.add_argument("--witness", metavar="W")
    c.add_argument("--order", type=int, default=8, metavar="M")
    c.add_argument("--emit-deformation", metavar="PATH")
    c.set_defaults(fn=cmd_degenerate)

    c = sub.add_parser("deform-verify", help="verify a truncated deformation family")
    c.add_argument("file")
    c.set_defaults(fn=cmd_deform_verify)

    c = sub.add_parser("koszul", help="decide N-Koszulity up to bounds")
    c.add_argument("file")
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--max-i", type=int, default=5)
    c.add_argument("--max-degree", type=int, default=None)
    c.set_defaults(fn=cmd_koszul)

    c = sub.add_parser("diagram", help="closure diagram of 3-dimensional lie algebras")
    c.add_argument("--alphas", help="comma-separated extra L4 parameters")
    c.add_argument("--emit-report", metavar="PATH")
    c.set_defaults(fn=cmd_diagram)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
