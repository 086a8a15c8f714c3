"""Benchmark the jitted kernels against their pure-Python originals.

Two workloads:

* point pipeline - rates -> generator -> steady state -> currents ->
  network entropy, the inner loop of force-plane sweeps;
* rk4 - fixed-step time integration, the inner loop of transients.

Usage::

    python benchmarks/bench_kernels.py [--points 20000] [--steps 200000]

Numbers are wall-clock medians of --repeat runs.  The script also reports
the largest deviation between the two backends over the sampled workload
(expected at the few-ulp level).  To benchmark the package end to end on
the fallback path instead, set QDICC_NUMBA=0 and rerun.
"""
import argparse
import statistics
import time

import numpy as np

from qdicc import _kernels


def py(kernel):
    return getattr(kernel, "py_func", kernel)


def sample_params(rng):
    # moderate biases keep every population well inside the simplex, so the
    # raw entropy kernel can run without the wrapper's domain validation
    eps_b = rng.uniform(0.1, 2.0)
    eps_u = rng.uniform(eps_b + 0.1, 3.0)
    kappa = rng.uniform(-2.0, 2.0)
    betas = rng.uniform(0.2, 2.0, 3)
    mus = rng.uniform(-1.5, 1.5, 3)
    return (eps_b, eps_u, kappa, *betas, *mus, 1.0, 1.0, 1.0)


def point_pipeline(backend, params):
    rate_vector = backend(_kernels.rate_vector)
    generator_matrix = backend(_kernels.generator_matrix)
    steady_rho = backend(_kernels.steady_rho)
    currents_vector = backend(_kernels.currents_vector)
    schnakenberg = backend(_kernels.schnakenberg)

    k = rate_vector(*params)
    w = generator_matrix(k)
    rho, _ok = steady_rho(w)
    cur = currents_vector(k, rho, params[0], params[1], params[2],
                          params[6], params[7], params[8])
    sigma, phi, _terms = schnakenberg(k, rho)
    return cur[1], cur[4], sigma, phi


def run_points(backend, n_points, seed=7):
    rng = np.random.default_rng(seed)
    acc = 0.0
    out = np.empty((n_points, 4))
    start = time.perf_counter()
    for i in range(n_points):
        out[i] = point_pipeline(backend, sample_params(rng))
        acc += out[i, 0]
    elapsed = time.perf_counter() - start
    return elapsed, out


def run_rk4(backend, n_steps):
    rng = np.random.default_rng(11)
    k = _kernels.rate_vector(*sample_params(rng))
    w = _kernels.generator_matrix(k)
    rho0 = np.full(4, 0.25)
    rk4 = backend(_kernels.rk4_evolve)
    start = time.perf_counter()
    times, samples, n_out, code, _step = rk4(w, rho0, 1e-3, n_steps, n_steps,
                                             1e-12, 1e-9, 1e-9)
    elapsed = time.perf_counter() - start
    assert code == _kernels.EVOLVE_OK
    return elapsed, samples[n_out - 1]


def median_time(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t, result = fn()
        times.append(t)
    return statistics.median(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=20000)
    parser.add_argument("--steps", type=int, default=200000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not _kernels.NUMBA_ENABLED:
        print("QDICC_NUMBA disabled: both backends would be identical; "
              "re-run without the flag to compare.")
        return

    jit = lambda f: f  # noqa: E731 - the module-level names are the jitted ones
    print(f"backend comparison: {args.points} pipeline points, "
          f"{args.steps} rk4 steps, median of {args.repeat}\n")

    # warmup / compile
    run_points(jit, 10)
    run_rk4(jit, 10)

    t_jit, out_jit = median_time(lambda: run_points(jit, args.points), args.repeat)
    t_py, out_py = median_time(lambda: run_points(py, args.points), args.repeat)
    dev = np.abs(out_jit - out_py).max()
    print(f"point pipeline   numba: {t_jit:8.3f} s   numpy: {t_py:8.3f} s   "
          f"speedup: {t_py / t_jit:5.1f}x   max deviation: {dev:.3e}")

    t_jit, final_jit = median_time(lambda: run_rk4(jit, args.steps), args.repeat)
    t_py, final_py = median_time(lambda: run_rk4(py, args.steps), args.repeat)
    dev = np.abs(final_jit - final_py).max()
    print(f"rk4 integration  numba: {t_jit:8.3f} s   numpy: {t_py:8.3f} s   "
          f"speedup: {t_py / t_jit:5.1f}x   max deviation: {dev:.3e}")


if __name__ == "__main__":
    main()
