"""Compare the compiled kernels with the pure-Python fallback.

Two levels are timed on the same pre-encoded inputs:

* kernel: ``first_valuation`` and ``derivable`` called directly;
* end to end: ``entails`` and ``decide_mc`` in a fresh interpreter with
  ``PLATYPUS_PURE_PYTHON`` set to 0 or 1.

Run with ``python benchmarks/bench_kernels.py [--n N]``.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from platypus import _pykernels, kernels
from platypus.calculus import _Problem, builtin_rules
from platypus.corpus import random_sequent
from platypus.formula import closure, sort_formulas
from platypus.nmatrix import _encode, _postorder, build_Mn, builtin

END_TO_END = """
import random, time
from platypus import BACKEND
from platypus.calculus import builtin_rules, decide_mc
from platypus.corpus import random_sequent
from platypus.nmatrix import builtin, entails
rng = random.Random(1)
pairs = [("BM_pl", "R_pl", 3), ("Wronski_C", "R_wronski6", 2), ("BM_and_or_pl", "R_and_or_pl", 2)]
work = []
for _ in range({n}):
    m, r, d = rng.choice(pairs)
    work.append((builtin(m), builtin_rules(r), random_sequent(rng, builtin(m).signature, "pqr", d, 3, 3)))
t = time.perf_counter()
for M, R, s in work:
    entails(M, s)
t_ent = time.perf_counter() - t
t = time.perf_counter()
for M, R, s in work:
    decide_mc(R, s)
t_mc = time.perf_counter() - t
print(BACKEND, t_ent, t_mc)
"""


def valuation_inputs(rng, n):
    mats = [builtin("BM_pl"), builtin("Wronski_C"), builtin("BM_and_or_pl"), build_Mn(3)]
    out = []
    for _ in range(n):
        M = rng.choice(mats)
        s = random_sequent(rng, M.signature, "pqrs", 4, 4, 4)
        order = _postorder(sort_formulas(closure(s.formulas())))
        dmask = M.mask(M.designated)
        full = (1 << len(M.values)) - 1
        allowed = [dmask if f in s.premises else full & ~dmask if f in s.conclusions else full for f in order]
        out.append(_encode(M, order, allowed))
    return out


def search_inputs(rng, n):
    out = []
    while len(out) < n:
        name = rng.choice(["R_pl", "R_and_or_pl", "R_wronski6"])
        R = builtin_rules(name)
        prob = _Problem(R, random_sequent(rng, R.signature, "pqr", 2, 3, 3))
        if len(prob.universe) <= kernels.MAX_COMPILED_UNIVERSE:
            out.append((prob.prem, prob.cmask, prob.c_off, prob.concl, prob.delta, prob.start))
    return out


def clock(fn, inputs, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for args in inputs:
            fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(n):
    rows = {}
    for flag in ("0", "1"):
        env = dict(os.environ, PLATYPUS_PURE_PYTHON=flag)
        out = subprocess.run(
            [sys.executable, "-c", END_TO_END.format(n=n)], env=env, capture_output=True, text=True, check=True
        )
        backend, t_ent, t_mc = out.stdout.split()
        rows[backend] = (float(t_ent), float(t_mc))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=400, help="problems per benchmark")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    rng = random.Random(0)
    vals = valuation_inputs(rng, args.n)
    searches = search_inputs(rng, args.n)
    print(f"kernel level, best of {args.repeat}, {args.n} problems each")
    print(f"{'kernel':<18}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    if kernels.compiled_available():
        from platypus import _kernels

        for name, py, cc, inputs in [
            ("first_valuation", _pykernels.first_valuation, _kernels.first_valuation, vals),
            ("derivable", _pykernels.derivable, _kernels.derivable, searches),
        ]:
            t_py = clock(py, inputs, args.repeat)
            t_cc = clock(cc, inputs, args.repeat)
            print(f"{name:<18}{t_py:>12.4f}{t_cc:>14.4f}{t_py / t_cc:>9.1f}x")
    else:
        print("compiled extension not built; kernel comparison skipped")

    print(f"\nend to end, {args.n} random sequents")
    rows = end_to_end(args.n)
    for backend, (t_ent, t_mc) in sorted(rows.items()):
        print(f"{backend:<10} entails {t_ent:8.3f}s   decide_mc {t_mc:8.3f}s")


if __name__ == "__main__":
    main()
