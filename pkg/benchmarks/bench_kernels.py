"""Compare the pure-Python and compiled residue-ring kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times unit-mask construction, a batch of random products and the full unit
group (enumeration plus Smith form) for a few rings of increasing size.
"""

import argparse
import random
import time

from rayorder import kernels
from rayorder.field import NumberField
from rayorder.ideals import FracIdeal
from rayorder.quadratic import QuadraticField
from rayorder.residue import ResidueRing, ideal_coords

CASES = [
    ("x^2-2", 1, 7),
    ("x^2-2", 5, 35),
    ("x^2+1", 2, 101),
    ("x^2-5", 1, 323),
    ("x^2+13", 3, 600),
]


def _ring(poly, f, m, backend):
    K = NumberField.from_string(poly)
    O = QuadraticField(K).order(f)
    return ResidueRing(O, FracIdeal.generated_by(O, [K(m)]), backend=backend)


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(poly, f, m, backend, repeat):
    R = _ring(poly, f, m, backend)
    rng = random.Random(1)
    primes = [ideal_coords(R.order, P) for P in R.primes]
    pairs = [(rng.randrange(R.size), rng.randrange(R.size)) for _ in range(20000)]

    def products():
        for a, b in pairs:
            R.arith.mul_idx(a, b)

    return {
        "size": R.size,
        "mask": _best(lambda: R.arith.unit_mask(primes), repeat),
        "mul": _best(products, repeat),
        "units": _best(lambda: _ring(poly, f, m, backend).unit_group, repeat),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'ring':<24}{'size':>8}  {'backend':<8}{'mask s':>10}{'20k mul s':>11}{'units s':>10}")
    for poly, f, m in CASES:
        rows = {b: bench(poly, f, m, b, args.repeat) for b in backends}
        for b, r in rows.items():
            name = f"{poly} f={f} mod {m}"
            print(f"{name:<24}{r['size']:>8}  {b:<8}{r['mask']:>10.4f}{r['mul']:>11.4f}{r['units']:>10.4f}")
        if len(rows) == 2:
            p, c = rows["python"], rows["cython"]
            print(f"{'':<34}speedup {p['mask'] / c['mask']:>7.1f}x{p['mul'] / c['mul']:>10.1f}x"
                  f"{p['units'] / c['units']:>9.1f}x")


if __name__ == "__main__":
    main()
