"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json OUT]

Times the bitmask kernels on random inputs and whole saturations on a few
sites, under both backends, and checks that both give identical results.
"""

import argparse
import json
import random
import sys
import timeit

from locgal import _kernels_py, kernels
from locgal.autloc import laut_site_of_functor, laut_site_of_set
from locgal.gset import DiscreteGroup, tbg_category
from locgal.site import LITERAL, MINIMAL, saturate


def random_masks(rng, count, width, density):
    return [sum(1 << i for i in range(width) if rng.random() < density) for _ in range(count)]


def kernel_cases(rng):
    cases = {}
    for width in (60, 200):
        left = random_masks(rng, 300, width, 0.08)
        right = random_masks(rng, 300, width, 0.08)
        many = random_masks(rng, 1500, width, 3 / width)
        row = [rng.randrange(width) for _ in range(width)]
        cases.update({
            f"union_product 300x300, {width} bits": lambda K, l=left, r=right: K.union_product(l, r),
            f"union_product_min 60x60, {width} bits": lambda K, l=left, r=right: K.union_product_min(l[:60], r[:60]),
            f"minimize 1500, {width} bits": lambda K, m=many: K.minimize(m),
            f"unions_upto 40 k=3, {width} bits": lambda K, l=left: K.unions_upto(l[:40], 3),
            f"pull x2100, {width} bits": lambda K, l=left, r=row: [K.pull(m, r) for m in l * 7],
        })
    return cases


def tbg_site(name):
    tgs = tbg_category(DiscreteGroup.named(name))
    return laut_site_of_functor(tgs.category, tgs.functor).site


def saturation_cases():
    laut2, z3, z4, v4 = laut_site_of_set(2).site, tbg_site("Z3"), tbg_site("Z4"), tbg_site("Z2xZ2")
    return {
        "saturate lAut(2) literal": lambda: saturate(laut2, mode=LITERAL),
        "saturate tbg(Z3) literal": lambda: saturate(z3, mode=LITERAL),
        "saturate tbg(Z4) minimal": lambda: saturate(z4, mode=MINIMAL),
        "saturate tbg(Z2xZ2) minimal": lambda: saturate(v4, mode=MINIMAL),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write the timings here")
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
        return 1
    compiled = kernels.for_width(64)
    rows = []
    for name, fn in kernel_cases(random.Random(0)).items():
        if fn(compiled) != fn(_kernels_py):
            raise SystemExit(f"backends disagree on {name}")
        rows.append((name, best(lambda: fn(_kernels_py), args.repeat), best(lambda: fn(compiled), args.repeat)))
    for name, fn in saturation_cases().items():
        with kernels.forced_python():
            slow = best(fn, args.repeat)
            ref = fn().to_json()
        fast = best(fn, args.repeat)
        if fn().to_json() != ref:
            raise SystemExit(f"backends disagree on {name}")
        rows.append((name, slow, fast))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'python ms':>10}  {'cython ms':>10}  {'speedup':>8}")
    for name, slow, fast in rows:
        print(f"{name:<{width}}  {slow * 1e3:>10.2f}  {fast * 1e3:>10.2f}  {slow / fast:>7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([{"case": n, "python_s": s, "cython_s": f} for n, s, f in rows], fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
