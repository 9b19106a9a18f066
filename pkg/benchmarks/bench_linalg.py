"""Row-reduction benchmark: compiled prime-field kernel vs pure Python.

Times nquiver.linalg.rref_pure against the Cython kernel on random
matrices over F_p and checks that both routes return identical echelon
forms.  Run from the repository root:

    python3 benchmarks/bench_linalg.py
    python3 benchmarks/bench_linalg.py --sizes 60 120 240 --prime 32003
"""

import argparse
import random
import sys
import time

from nquiver import linalg
from nquiver.fields import PrimeField


def random_matrix(rng, nrows, ncols, p, density):
    rows = []
    for _ in range(nrows):
        rows.append(
            [rng.randrange(p) if rng.random() < density else 0 for _ in range(ncols)]
        )
    return rows


def time_call(fn, repeats):
    best = None
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 160, 240])
    ap.add_argument("--prime", type=int, default=10007)
    ap.add_argument("--density", type=float, default=0.35)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=20260823)
    args = ap.parse_args(argv)

    if linalg._rrefkern is None:
        print("compiled kernel not available; nothing to compare", file=sys.stderr)
        return 1

    field = PrimeField(args.prime)
    rng = random.Random(args.seed)
    print(
        "p=%d density=%.2f repeats=%d (best-of timings)"
        % (args.prime, args.density, args.repeats)
    )
    print("%8s %12s %12s %9s" % ("size", "pure (s)", "kernel (s)", "speedup"))
    for size in args.sizes:
        rows = random_matrix(rng, size, size + size // 4, args.prime, args.density)
        t_pure, (ech_pure, piv_pure) = time_call(
            lambda: linalg.rref_pure(field, [list(r) for r in rows]), args.repeats
        )
        t_kern, (ech_kern, piv_kern) = time_call(
            lambda: linalg.rref(field, [list(r) for r in rows]), args.repeats
        )
        if ech_pure != ech_kern or piv_pure != piv_kern:
            print("MISMATCH at size %d: routes disagree" % size, file=sys.stderr)
            return 1
        print(
            "%8d %12.4f %12.4f %8.1fx"
            % (size, t_pure, t_kern, t_pure / t_kern if t_kern else float("inf"))
        )
    print("all outputs identical across routes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
