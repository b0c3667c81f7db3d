"""EM inner loops for the lexicon trainer.

The corpus is flattened into co-occurrence rows: one row per English token,
holding the ids of the (german, english) pairs it can align to. Both
backends take the same arrays and return identical expected counts.

Set ``DECOMPOUND_DISABLE_NUMBA=1`` to force the numpy path.
"""

import math
import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

USE_NUMBA = njit is not None and os.environ.get("DECOMPOUND_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def e_step_numpy(pair_ids, row_ptr, probs):
    """Return (expected pair counts, corpus log-likelihood)."""
    lengths = np.diff(row_ptr)
    n_rows = len(lengths)
    row_of = np.repeat(np.arange(n_rows), lengths)
    t = probs[pair_ids]
    denom = np.bincount(row_of, weights=t, minlength=n_rows)
    counts = np.bincount(pair_ids, weights=t / denom[row_of], minlength=len(probs))
    loglik = float(np.sum(np.log(denom / lengths)))
    return counts, loglik


if njit is not None:

    @njit(cache=True)
    def e_step_numba(pair_ids, row_ptr, probs):
        counts = np.zeros(probs.shape[0])
        loglik = 0.0
        for r in range(row_ptr.shape[0] - 1):
            lo = row_ptr[r]
            hi = row_ptr[r + 1]
            denom = 0.0
            for k in range(lo, hi):
                denom += probs[pair_ids[k]]
            for k in range(lo, hi):
                pid = pair_ids[k]
                counts[pid] += probs[pid] / denom
            loglik += math.log(denom / (hi - lo))
        return counts, loglik

else:  # pragma: no cover
    e_step_numba = None


def e_step(pair_ids, row_ptr, probs):
    if USE_NUMBA:
        return e_step_numba(pair_ids, row_ptr, probs)
    return e_step_numpy(pair_ids, row_ptr, probs)


def m_step(counts, pair_german):
    """Renormalize expected counts per German word."""
    totals = np.bincount(pair_german, weights=counts)
    return counts / totals[pair_german]


def uniform_init(pair_german):
    """p(e|g) = 1 / number of English words co-occurring with g."""
    fanout = np.bincount(pair_german)
    return 1.0 / fanout[pair_german]
