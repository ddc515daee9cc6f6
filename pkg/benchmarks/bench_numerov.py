"""Compare the compiled and pure-Python Numerov kernels.

Run with ``python3 benchmarks/bench_numerov.py``. Times one outward shot
over a default grid and one full eigenvalue search for a few reference
states, per backend.
"""

import argparse
import time

from hbarpdm import _kernels
from hbarpdm.models import AmbiguitySet
from hbarpdm.coulomb_pdm import CoulombPDM
from hbarpdm.oracle.numerov import _Problem, default_grid, solve_state
from hbarpdm.recursion import QuantumNumbers, expand_energy

CASES = [(2.0, 0, 2), (-3.0, 1, 1), (3.0, 0, 4)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = sorted(_kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (active: {_kernels.BACKEND})")
    print(f"{'case':<18}{'backend':<9}{'points':>8}{'shot [ms]':>12}{'solve [ms]':>12}{'E':>20}")
    for lam, nr, l in CASES:
        p = CoulombPDM(lam=lam)
        qn = QuantumNumbers(nr, l)
        res = expand_energy(p.mass, p.potential, qn)
        grid = default_grid(p.mass, p.potential, AmbiguitySet(), l, res.energy, res.r0)
        timings = {}
        for name in names:
            k = _kernels.get_backend(name)
            prob = _Problem(p.mass, p.potential, AmbiguitySet(), l, grid, res.r0, 1.0, k)
            shot = best_of(lambda: k.shoot(prob.f0, prob.g, res.energy, prob.h, 0, prob.n - 1), args.repeat)
            energy = None

            def solve():
                nonlocal energy
                energy = solve_state(p.mass, p.potential, qn, grid=grid, with_wave=False, backend=name).energy

            total = best_of(solve, args.repeat)
            timings[name] = total
            label = f"lam={lam:+g} ({nr},{l})"
            print(f"{label:<18}{name:<9}{grid.points:>8}{shot * 1e3:>12.2f}{total * 1e3:>12.1f}{energy:>20.12f}")
        if len(timings) == 2:
            print(f"{'':<18}speed-up {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()
