#!/usr/bin/env python3
"""Benchmark the compiled kernel against the batched-numpy fallback on a
representative workload: a protected Ramsey phase sweep over a noise
ensemble (the hot loop of every Monte Carlo protocol).

    python3 benchmarks/bench_backends.py [--draws 4000] [--phases 8] [--times 10]
"""

import argparse
import math
import time

import numpy as np

from nvgyro.engine import available_backends, run_program
from nvgyro.hamiltonian import build_hamiltonian_stack, eigh_stack
from nvgyro.noise import sample_stack
from nvgyro.params import FieldVector, NVParams
from nvgyro.protocols.ramsey import load_template
from nvgyro.protocols.scenarios import misaligned_magnetic
from nvgyro.sequence import ExecutionContext, polarized_initial_state
from nvgyro.sequence.compile import compile_program


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=4000)
    ap.add_argument("--phases", type=int, default=8)
    ap.add_argument("--times", type=int, default=10)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    params = NVParams()
    field = FieldVector.from_degrees(239.0, 1.6)
    ctx = ExecutionContext(params=params, field=field)
    seq = load_template("ramsey_dq.seq")
    phases = np.linspace(0.0, 2.0 * math.pi, args.phases, endpoint=False)

    stack = sample_stack(misaligned_magnetic(params), 0, args.draws)
    h = build_hamiltonian_stack(params, field, stack.d_bx, stack.d_by, stack.d_bz, stack.d_azz_hz)
    t0 = time.perf_counter()
    evals, evecs = eigh_stack(h)
    t_eigh = time.perf_counter() - t0
    rho0 = polarized_initial_state()

    programs = [
        compile_program(seq, ctx, bindings={"t": t}, sweep=("phi", phases))
        for t in np.linspace(0.3e-3, 5e-3, args.times)
    ]

    print(f"workload: {args.draws} draws x {args.times} times x {args.phases} phases")
    print(f"shared eigendecomposition: {t_eigh*1e3:.1f} ms")
    results = {}
    for backend in available_backends():
        best = math.inf
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            out = [run_program(evals, evecs, rho0, prog, backend=backend) for prog in programs]
            best = min(best, time.perf_counter() - t0)
        results[backend] = (best, out)
        rate = args.draws * args.times * args.phases / best
        print(f"{backend:>7}: {best*1e3:8.1f} ms  ({rate/1e6:.2f} M sequence-evals/s)")
    if len(results) == 2:
        diff = max(
            float(np.max(np.abs(a - b)))
            for a, b in zip(results["pure"][1], results["cython"][1])
        )
        speedup = results["pure"][0] / results["cython"][0]
        print(f"speedup: {speedup:.1f}x, max |pure - cython| = {diff:.2e}")


if __name__ == "__main__":
    main()
