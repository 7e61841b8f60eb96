"""Compiled vs pure-Python RK4 kernels on a 50-period weak PT grating.

    python3 benchmarks/bench_rk4.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from ptsusy import _rk4_py, kernels
from ptsusy.profiles import SinusoidalProfile
from ptsusy.scattering import GratingSpec


def inputs():
    g = GratingSpec(SinusoidalProfile(1, 0.002, 0.002, 1), 50, 1.0)
    z = g.sample_nodes()
    q = g.q_samples()
    u = 0.5j * (q - g.k**2) / g.k
    return q, u, np.exp(2j * g.k * z), g.length / g.nsteps


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    try:
        from ptsusy import _rk4
    except ImportError:
        _rk4 = None
        print("compiled extension not built; timing the pure-Python kernels only")
    q, u, e2, h = inputs()
    print(f"{(len(q) - 1) // 2} RK4 steps, best of {args.repeat}")
    cases = {
        "transfer": lambda impl: kernels.rk4_transfer(q, h, impl=impl),
        "coupled": lambda impl: kernels.rk4_coupled(u, e2, h, impl=impl),
    }
    for name, call in cases.items():
        t_py = min(timeit.repeat(lambda: call(_rk4_py), number=1, repeat=args.repeat))
        line = f"{name:<9} python {t_py * 1e3:9.2f} ms"
        if _rk4 is not None:
            t_cy = min(timeit.repeat(lambda: call(_rk4), number=1, repeat=args.repeat))
            diff = np.max(np.abs(call(_rk4) - call(_rk4_py)))
            line += f"   cython {t_cy * 1e3:8.3f} ms   speedup {t_py / t_cy:6.1f}x   max |diff| {diff:.1e}"
        print(line)


if __name__ == "__main__":
    main()
