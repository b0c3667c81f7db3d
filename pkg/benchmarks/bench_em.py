"""Compare the numba and numpy E-step kernels on a synthetic parallel corpus.

    python benchmarks/bench_em.py --pairs 20000 --repeat 5
"""

import argparse
import random
import time

import numpy as np

from decompound import _kernels
from decompound.lexicon import ParallelCorpus, _Problem


def synthetic_corpus(n_pairs, vocab, seed=0):
    rng = random.Random(seed)
    pairs = []
    for _ in range(n_pairs):
        g = [f"g{int(rng.paretovariate(1.2)) % vocab}" for _ in range(rng.randint(2, 12))]
        e = [f"e{int(rng.paretovariate(1.2)) % vocab}" for _ in range(rng.randint(2, 12))]
        pairs.append((g, e))
    return ParallelCorpus(pairs)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=20000)
    parser.add_argument("--vocab", type=int, default=5000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    problem = _Problem(synthetic_corpus(args.pairs, args.vocab))
    probs = _kernels.uniform_init(problem.pair_german)
    print(f"{args.pairs} pairs, {len(problem.pairs)} co-occurring pairs, {len(problem.pair_ids)} links")

    start = time.perf_counter()
    _kernels.e_step_numba(problem.pair_ids, problem.row_ptr, probs)
    print(f"numba first call (incl. compile/cache load): {time.perf_counter() - start:.3f}s")

    results = {}
    for name, kernel in (("numpy", _kernels.e_step_numpy), ("numba", _kernels.e_step_numba)):
        results[name] = kernel(problem.pair_ids, problem.row_ptr, probs)
        elapsed = best_of(lambda: kernel(problem.pair_ids, problem.row_ptr, probs), args.repeat)
        print(f"{name:>6} e-step: {elapsed * 1000:8.2f} ms")
    np.testing.assert_allclose(results["numpy"][0], results["numba"][0], rtol=1e-10)
    print("backends agree")


if __name__ == "__main__":
    main()
