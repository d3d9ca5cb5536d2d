"""Deterministic, partition-independent Monte Carlo trial streams.

Every trial draws its noise from a counter-based Philox generator keyed by
(master seed, trial index), so the noise for trial ``i`` is the same no
matter which worker runs it or in what order.  Aggregates are computed from
per-trial arrays assembled in trial-index order, which makes reports
bit-identical for any partitioning of the trials across workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np


def trial_generator(seed: int, trial_index: int) -> np.random.Generator:
    """Independent generator for one trial, keyed by (seed, trial_index)."""
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), trial_index]))


def partition(trials: int, workers: int) -> list[range]:
    """Split range(trials) into <= workers contiguous chunks."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    workers = min(workers, trials)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    return [range(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def run_trials(chunk_fn, trials: int, workers: int = 1) -> np.ndarray:
    """Run ``chunk_fn(range)`` over a partition of trial indices.

    ``chunk_fn`` must return an ndarray whose leading axis follows the chunk
    order; chunks are concatenated back in index order, so the result is
    independent of the worker count.
    """
    chunks = partition(trials, workers)
    if len(chunks) == 1:
        return np.asarray(chunk_fn(chunks[0]))
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(chunk_fn, chunks))
    return np.concatenate([np.asarray(p) for p in parts], axis=0)
