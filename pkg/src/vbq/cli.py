"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (axiom or bridge mismatch),
2 input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .algebra import derive_vr, validate_biquandle, validate_virtual, virtual
from .braid import parse_braid, random_braid
from .coloring import DEFAULT_BUDGET, RepKind, count_colorings, verify_bridge
from .enumeration import enumerate_biquandles, enumerate_virtual
from .errors import AxiomError, BudgetExceeded, ParameterError, ParseError, StructureError
from .fileformat import format_catalog, format_structure, parse_structure
from .gauss import color_gauss, gauss_presentation, parse_gauss
from .terms import make_presentation

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()
    return parse_structure(text)


def _load_virtual(path: str):
    op, f = _load(path)
    return virtual(op, f), f


def _braid(args):
    return parse_braid(args.braid, args.strands)


def cmd_check(args, out) -> int:
    op, f = _load(args.structure)
    report = validate_virtual(op, f) if f is not None else validate_biquandle(op)
    kind = "virtual biquandle" if f is not None else "biquandle"
    for line in report.lines():
        print(line, file=out)
    print(f"{'valid' if report.ok else 'invalid'} {kind} of size {op.n}", file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_vr(args, out) -> int:
    vbq, f = _load_virtual(args.structure)
    out.write(format_structure(derive_vr(vbq), f))
    return EXIT_OK


def cmd_color(args, out) -> int:
    vbq, _ = _load_virtual(args.structure)
    if args.gauss is not None:
        res = color_gauss(vbq, parse_gauss(args.gauss), args.witnesses, args.budget)
    else:
        res = count_colorings(vbq, _braid(args), RepKind(args.rep), args.witnesses,
                              args.budget, args.workers)
    print(res.count, file=out)
    for w in res.witnesses or ():
        print(" ".join(map(str, w)), file=out)
    return EXIT_OK


def _bridge_one(vbq, vr_vbq, b, args, out) -> bool:
    rep = verify_bridge(vbq, b, args.budget, args.workers)
    vr_count = count_colorings(vr_vbq, b, RepKind.PHI, budget=args.budget, workers=args.workers).count
    ok = rep.ok and vr_count == rep.psi_count
    print(f"braid [{b}] strands {b.strands}: phi {rep.phi_count} psi {rep.psi_count} "
          f"vr {vr_count} theta-checked {rep.mechanism_checked} {'ok' if ok else 'MISMATCH'}", file=out)
    for t, s, img in rep.counterexamples[:5]:
        print(f"  counterexample: phi-fixed {t}, theta {s}, psi(theta) {img}", file=out)
    return ok


def cmd_bridge(args, out) -> int:
    vbq, _ = _load_virtual(args.structure)
    vr_vbq = virtual(derive_vr(vbq))
    if args.fuzz is not None:
        strands = args.strands or 3
        braids = [random_braid(strands, args.length, args.seed + k) for k in range(args.fuzz)]
    else:
        braids = [_braid(args)]
    ok = all([_bridge_one(vbq, vr_vbq, b, args, out) for b in braids])
    print(f"{len(braids)} braids, {'all counts equal' if ok else 'MISMATCH'}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_present(args, out) -> int:
    if args.gauss is not None:
        p = gauss_presentation(parse_gauss(args.gauss))
    else:
        p = make_presentation(_braid(args), RepKind(args.rep))
    out.write(str(p))
    return EXIT_OK


def cmd_enum(args, out) -> int:
    if args.virtual:
        items = enumerate_virtual(args.size, args.iso, args.allow_large, args.workers)
        label = "virtual biquandles"
    else:
        items = [(op, None) for op in enumerate_biquandles(args.size, args.iso, args.allow_large, args.workers)]
        label = "biquandles"
    print(f"# {len(items)} {label} of size {args.size}"
          f" ({'up to isomorphism' if args.iso else 'all labelings'})", file=out)
    if items:
        out.write(format_catalog(items))
    return EXIT_OK


def _source_group(p, rep=True):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--braid", help="braid word, e.g. 's1 S2 v1'")
    g.add_argument("--gauss", help="Gauss code, e.g. 'U1+O2+|O1+U2+'")
    p.add_argument("--strands", type=int, help="strand count (default: 1 + largest index)")
    if rep:
        p.add_argument("--rep", choices=["phi", "psi"], default="phi",
                       help="braid action (Gauss codes always use the classical-crossing rules)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vbq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum tuple evaluations / search nodes (default 1e8)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate a structure file")
    p.add_argument("structure")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("vr", parents=[common], help="print the twisted biquandle (X, VR)")
    p.add_argument("structure")
    p.set_defaults(func=cmd_vr)

    p = sub.add_parser("color", parents=[common], help="count colorings of a braid closure or Gauss code")
    p.add_argument("structure")
    _source_group(p)
    p.add_argument("--witnesses", action="store_true", help="also print every coloring")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("bridge", parents=[common], help="compare phi, psi and VR coloring counts")
    p.add_argument("structure")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--braid")
    g.add_argument("--fuzz", type=int, metavar="COUNT", help="check COUNT seeded random braids")
    p.add_argument("--strands", type=int)
    p.add_argument("--length", type=int, default=8, help="random braid length for --fuzz")
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser("present", parents=[common], help="print a presentation")
    _source_group(p)
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("enum", parents=[common], help="enumerate small biquandles")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--virtual", action="store_true", help="include every automorphism f")
    p.add_argument("--iso", action="store_true", help="one structure per isomorphism class")
    p.add_argument("--allow-large", action="store_true", help="permit size 5 (slow)")
    p.set_defaults(func=cmd_enum)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget < 1 or args.workers < 1:
        print("error: --budget and --workers must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except AxiomError as exc:
        for line in exc.report.lines():
            print(line, file=out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, StructureError, ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
