"""Compare the compiled and pure-Python kernels.

Run with ``python3 benchmarks/bench_kernels.py [--sizes 250,500,1000]``.
Times pairwise distances, the kernel matrix and a full solve on a Fibonacci
sphere at p = 1, and checks that both backends agree.
"""

import argparse
import time

import numpy as np

from rieszcap import backend
from rieszcap.geometry import Sphere, discretize
from rieszcap.solver import SolverConfig, solve_equilibrium


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(n, repeat):
    cloud = discretize(Sphere(3, (0.0, 0.0, 0.0), 1.0), n, "boundary")
    cfg = SolverConfig(max_iters=20_000)
    rows = {}
    for which in backend.available():
        with backend.use(which):
            t_dist, d = best_of(lambda: backend.pairwise_distances(cloud.nodes), repeat)
            t_kern, _ = best_of(lambda: backend.kernel_matrix(d, 1.0, 0.0), repeat)
            t_solve, res = best_of(lambda: solve_equilibrium(1.0, cloud, cfg), repeat)
        rows[which] = (t_dist, t_kern, t_solve, res)
    return len(cloud), rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="250,500,1000,2000")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    print(f"backends: {', '.join(backend.available())}")
    print(f"{'N':>6} {'backend':>9} {'dist ms':>9} {'kernel ms':>10} {'solve ms':>9} {'iters':>6}")
    for n in (int(s) for s in args.sizes.split(",")):
        size, rows = bench(n, args.repeat)
        for which, (a, b, c, res) in rows.items():
            print(f"{size:>6} {which:>9} {1e3 * a:9.2f} {1e3 * b:10.2f} {1e3 * c:9.2f} {res.iterations:>6}")
        if len(rows) == 2:
            ra, rb = rows["python"][3], rows["compiled"][3]
            agree = np.isclose(float(ra.energy), float(rb.energy), rtol=1e-14) and ra.iterations == rb.iterations
            speedup = rows["python"][2] / rows["compiled"][2]
            print(f"{'':>6} solve speedup x{speedup:.1f}, backends agree: {agree}")


if __name__ == "__main__":
    main()
