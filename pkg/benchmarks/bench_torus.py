"""Benchmark the compiled torus kernels against the pure-Python fallback.

Both backends are imported side by side (no environment tricks), checked for
agreement on each workload, then timed on the same inputs.  Run from the
repository root after an editable install:

    python3 benchmarks/bench_torus.py
    python3 benchmarks/bench_torus.py --rank 6 --terms 40 --repeat 7
"""

import argparse
import copy
import random
import time

from qca import _kernels_py

try:
    from qca import _kernels_cy
except ImportError:
    _kernels_cy = None


def rand_skew(rng, r, bound=4):
    lam = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i):
            lam[i][j] = rng.randint(-bound, bound)
            lam[j][i] = -lam[i][j]
    return tuple(tuple(row) for row in lam)


def rand_terms(rng, r, n_terms, span=6, coeff_bits=8):
    out = {}
    for _ in range(n_terms):
        exp = tuple(rng.randint(-span, span) for _ in range(r))
        c = rng.getrandbits(coeff_bits) + 1
        out.setdefault(exp, {})[rng.randint(-4, 4)] = c
    return out


def time_call(fn, repeat, setup=None):
    """Best-of-repeat wall time of fn(state); setup runs outside the clock."""
    best = float("inf")
    for _ in range(repeat):
        state = setup() if setup is not None else None
        t0 = time.perf_counter()
        fn(state)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_lform(kernel, lam, pairs, reps):
    def run(_):
        for a, b in pairs:
            for _ in range(reps):
                kernel.lform(lam, a, b)

    return run, None


def bench_mul(kernel, lam, operands):
    def run(_):
        for x, y in operands:
            kernel.mul_terms(x, y, lam)

    return run, None


def bench_submul(kernel, lam, cases):
    # submul mutates the remainder, so each timed pass gets fresh copies
    def setup():
        return [copy.deepcopy(rem) for rem, _, _, _ in cases]

    def run(rems):
        for rem, (_, p, aexp, coeff) in zip(rems, cases):
            kernel.submul_monomial(rem, p, aexp, coeff, lam)

    return run, setup


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=5, help="torus rank (default 5)")
    ap.add_argument("--terms", type=int, default=30, help="terms per operand (default 30)")
    ap.add_argument("--cases", type=int, default=40, help="workload size (default 40)")
    ap.add_argument("--repeat", type=int, default=5, help="best-of repetitions (default 5)")
    ap.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    r = args.rank
    lam = rand_skew(rng, r)

    pairs = [
        (
            tuple(rng.randint(-6, 6) for _ in range(r)),
            tuple(rng.randint(-6, 6) for _ in range(r)),
        )
        for _ in range(args.cases)
    ]
    operands = [
        (rand_terms(rng, r, args.terms), rand_terms(rng, r, args.terms))
        for _ in range(args.cases)
    ]
    submuls = []
    for x, y in operands:
        rem = _kernels_py.mul_terms(x, y, lam)
        aexp, cf = next(iter(x.items()))
        vexp, c = next(iter(cf.items()))
        submuls.append((rem, y, aexp, {vexp: c}))

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        for x, y in operands[: min(5, args.cases)]:
            assert _kernels_cy.mul_terms(x, y, lam) == _kernels_py.mul_terms(x, y, lam)
        for a, b in pairs[: min(5, args.cases)]:
            assert _kernels_cy.lform(lam, a, b) == _kernels_py.lform(lam, a, b)
        backends.append(("cython", _kernels_cy))
    else:
        print("compiled kernels not built; timing the fallback only")

    workloads = [
        ("lform", lambda k: bench_lform(k, lam, pairs, 200)),
        ("mul_terms", lambda k: bench_mul(k, lam, operands)),
        ("submul_monomial", lambda k: bench_submul(k, lam, submuls)),
    ]

    print(
        "rank=%d terms=%d cases=%d repeat=%d seed=%d"
        % (r, args.terms, args.cases, args.repeat, args.seed)
    )
    header = "%-16s" % "workload" + "".join("%12s" % name for name, _ in backends)
    if len(backends) == 2:
        header += "%10s" % "speedup"
    print(header)
    for wname, make in workloads:
        times = []
        for _, kernel in backends:
            run, setup = make(kernel)
            times.append(time_call(run, args.repeat, setup))
        row = "%-16s" % wname + "".join("%10.1f ms" % (t * 1e3) for t in times)
        if len(times) == 2:
            row += "%9.1fx" % (times[0] / times[1])
        print(row)


if __name__ == "__main__":
    main()
