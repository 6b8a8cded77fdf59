"""Compiled vs plain-Python kernels.

    python benchmarks/bench_kernels.py            # default sizes
    python benchmarks/bench_kernels.py --group E7/ad --levi 2,5,7 --level 20

Times one frontier expansion of the coset BFS and one batch of mod-N kernel
sizes, with both implementations, and checks that they agree.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ellmoduli import _kernels
from ellmoduli.moduli import describe, group_elements
from ellmoduli.root_datum import build_datum, class_of_lift


def frontier_at(d, levi, level):
    k = d.nsimple
    cart = np.array(d.cartan, dtype=np.int64)
    state = [0 if i in levi else 1 for i in range(k)]
    for j in levi:
        state.extend(cart[j].tolist())
    nb = 1 + len(levi)
    frontier = np.array([state], dtype=np.int64)
    for _ in range(level):
        children, _, _ = _kernels.expand_frontier(frontier, cart, k, nb)
        if not len(children):
            break
        frontier = np.unique(children, axis=0)
    return frontier, cart, k, nb


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--group", default="E7/ad")
    p.add_argument("--levi", default="2,5,7", help="1-based simple roots of the Levi")
    p.add_argument("--level", type=int, default=18)
    p.add_argument("--torsion-group", default="B6/ad")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    print(f"numba active: {_kernels.JIT_ENABLED}")
    d = build_datum(args.group)
    levi = tuple(int(x) - 1 for x in args.levi.split(","))
    frontier, cart, k, nb = frontier_at(d, levi, args.level)
    _kernels.expand_frontier(frontier[:1], cart, k, nb)  # compile outside the timing
    t_fast, a = best_of(lambda: _kernels.expand_frontier(frontier, cart, k, nb), args.repeat)
    t_pure, b = best_of(lambda: _kernels.PURE["expand_frontier"](frontier, cart, k, nb), 1)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    print(f"expand_frontier  {args.group} levi {levi} level {args.level}: {len(frontier)} states")
    print(f"  compiled {t_fast * 1e3:9.2f} ms   pure {t_pure * 1e3:9.2f} ms   speedup {t_pure / t_fast:7.1f}x")

    dt = build_datum(args.torsion_group)
    m = describe(dt, class_of_lift(dt, [0] * dt.rank))
    elts = group_elements(m)
    eye = np.eye(m.cocenter_rank, dtype=np.int64)
    mats = np.array([np.array(g, dtype=np.int64) - eye for g in elts], dtype=np.int64)
    _kernels.kernel_sizes_mod(mats[:1], args.n)
    t_fast, a = best_of(lambda: _kernels.kernel_sizes_mod(mats, args.n), args.repeat)
    t_pure, b = best_of(lambda: _kernels.PURE["kernel_sizes_mod"](mats, args.n), 1)
    assert np.array_equal(a, b)
    print(f"kernel_sizes_mod {args.torsion_group} degree 0, N={args.n}: {len(mats)} matrices of size {m.cocenter_rank}")
    print(f"  compiled {t_fast * 1e3:9.2f} ms   pure {t_pure * 1e3:9.2f} ms   speedup {t_pure / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
