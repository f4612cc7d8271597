"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each case is timed with ``timeit`` (best of N) on identical inputs, and the
two backends' results are checked for equality before timing.
"""
from __future__ import annotations

import argparse
import sys
import timeit

from vbq import kernels
from vbq.algebra import linear_biquandle, symmetric_group, virtual, wada_from_group
from vbq.braid import random_braid
from vbq.coloring import RepKind, compile_program


def cases(quick: bool):
    lin5 = virtual(linear_biquandle(5, 1, 4), (1, 2, 3, 4, 0))
    strands = 6 if quick else 8
    prog_phi = compile_program(random_braid(strands, 24, seed=1), RepKind.PHI)
    prog_psi = compile_program(random_braid(strands, 24, seed=1), RepKind.PSI)
    wada6 = wada_from_group(symmetric_group(3))
    lin31 = linear_biquandle(31, 1, 30)
    yield (f"fixed_points phi, Z5^{strands}, 24 letters",
           lambda k: k.fixed_points(*lin5.arrays, 5, strands, prog_phi, 0, 5, False))
    yield (f"fixed_points psi, Z5^{strands}, 24 letters",
           lambda k: k.fixed_points(*lin5.arrays, 5, strands, prog_psi, 0, 5, False))
    yield "ybe_violation, Wada(S3), n=6", lambda k: k.ybe_violation(wada6.r1, wada6.r2, 6)
    yield "ybe_violation, linear Z31", lambda k: k.ybe_violation(lin31.r1, lin31.r2, 31)
    yield "search_biquandles n=3", lambda k: k.search_biquandles(3, ())
    if not quick:
        yield "search_biquandles n=4", lambda k: k.search_biquandles(4, ())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)

    if "compiled" not in kernels.BACKENDS:
        print("compiled extension not built; only the python backend is available", file=sys.stderr)
    names = sorted(kernels.BACKENDS)
    print(f"{'case':44s}" + "".join(f"{n:>12s}" for n in names) + (f"{'speedup':>10s}" if len(names) > 1 else ""))
    for label, fn in cases(args.quick):
        results = {n: fn(kernels.get_backend(n)) for n in names}
        first = next(iter(results.values()))
        if any(r != first for r in results.values()):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        times = {}
        for n in names:
            k = kernels.get_backend(n)
            times[n] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:44s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['compiled']:9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
