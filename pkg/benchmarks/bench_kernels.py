"""Time the compiled and numpy log-det kernels on assembled network states.

    python benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import timeit

import numpy as np

from gqnet import _kernels_py
from gqnet.networks import NetworkTopology, random_network_state

try:
    from gqnet import _kernels
except ImportError:
    _kernels = None


def cases(max_sources):
    for n in range(2, max_sources + 1):
        yield NetworkTopology("star", n)
        yield NetworkTopology("chain", n)
    yield NetworkTopology("triangle")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-sources", type=int, default=8)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    backends = {"python": _kernels_py}
    if _kernels is not None:
        backends["cython"] = _kernels
    else:
        print("compiled extension not built; timing the numpy fallback only")

    header = f"{'network':<12} {'parties':>7} {'subsets':>8}" + "".join(f" {k + ' ms':>11}" for k in backends)
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)
    for t in cases(args.max_sources):
        state = random_network_state(t, args.seed)
        V = np.ascontiguousarray(state.V)
        owner = state.partition.row_owner().astype(np.int64)
        n = t.n_parties
        times = {}
        ref = None
        for name, mod in backends.items():
            out = mod.subset_logdets(V, owner, n)
            if ref is None:
                ref = out
            elif not np.allclose(out, ref, atol=1e-9):
                raise SystemExit(f"backends disagree on {t}")
            number = max(1, 2000 // (1 << n))
            best = min(timeit.repeat(lambda: mod.subset_logdets(V, owner, n), number=number, repeat=args.repeat))
            times[name] = 1e3 * best / number
        line = f"{str(t):<12} {n:>7} {1 << n:>8}" + "".join(f" {v:>11.4f}" for v in times.values())
        if len(times) == 2:
            line += f" {times['python'] / times['cython']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
