"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import random
import time

from rotnorm._kernels import _pure

try:
    from rotnorm._kernels import _fast
except ImportError:
    _fast = None


def timeit(fn, repeat=3):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_closure(mod):
    # S8 (40320 elements) from two generators
    gens = [bytes((1, 0, 2, 3, 4, 5, 6, 7)), bytes((1, 2, 3, 4, 5, 6, 7, 0))]
    return timeit(lambda: mod.closure_bytes(gens, 10 ** 6))


def bench_word_lengths(mod, elems):
    # word lengths over the transposition class of S8
    n = 8
    s = []
    for i in range(n):
        for j in range(i + 1, n):
            p = list(range(n))
            p[i], p[j] = p[j], p[i]
            s.append(bytes(p))
    return timeit(lambda: mod.word_lengths_bytes(elems, s))


def bench_cvp(mod):
    rng = random.Random(0)
    instances = []
    for _ in range(300):
        m = rng.randint(2, 4)
        basis = []
        pivots = list(range(m))
        for p in pivots:
            row = [0] * m
            row[p] = rng.randint(1, 6)
            for i in range(p + 1, m):
                row[i] = rng.randint(0, row[p] * 3)
            basis.append(row)
        target = [rng.randint(-50, 50) for _ in range(m)]
        instances.append((basis, pivots, target, 120))

    def run():
        for basis, pivots, target, bound in instances:
            mod.cvp_enumerate(basis, pivots, target, bound)

    return timeit(run)


def main():
    mods = [("pure", _pure)]
    if _fast is not None:
        mods.append(("fast", _fast))
    else:
        print("compiled kernel unavailable; benchmarking pure only")

    elems = _pure.closure_bytes(
        [bytes((1, 0, 2, 3, 4, 5, 6, 7)), bytes((1, 2, 3, 4, 5, 6, 7, 0))],
        10 ** 6,
    )
    rows = []
    for bench_name, bench in (
        ("closure S8 (40320 elems)", bench_closure),
        ("BFS word lengths S8", lambda mod: bench_word_lengths(mod, elems)),
        ("CVP batch (300 instances)", bench_cvp),
    ):
        timings = {name: bench(mod) for name, mod in mods}
        rows.append((bench_name, timings))

    width = max(len(r[0]) for r in rows) + 2
    header = "benchmark".ljust(width) + "".join(
        f"{name:>12}" for name, _ in mods
    )
    if len(mods) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for bench_name, timings in rows:
        line = bench_name.ljust(width)
        for name, _ in mods:
            line += f"{timings[name] * 1000:>10.1f}ms"
        if len(mods) == 2:
            line += f"{timings['pure'] / timings['fast']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
