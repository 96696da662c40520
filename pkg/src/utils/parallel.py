from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np

from config import DEFAULT_THREADS, logger
from utils.symmat import spawn_streams

R = TypeVar("R")


def run_replicas(
    task: Callable[[int, np.random.Generator], R],
    count: int,
    seed: int,
    threads: int = DEFAULT_THREADS,
    label: str = "replicas",
) -> List[R]:
    """Run task(index, rng) for each replica index with its own (seed, index) stream.

    Results come back in replica order, so the output does not depend on `threads`.
    """
    streams = spawn_streams(seed, count)
    if threads <= 1 or count <= 1:
        results = [task(i, rng) for i, rng in enumerate(streams)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(task, i, rng) for i, rng in enumerate(streams)]
            results = [f.result() for f in futures]
    logger.info(f"{label}: {count} replicas done (seed={seed}, threads={threads})")
    return results


def sample_batches(
    draw: Callable[[int, np.random.Generator], np.ndarray],
    total: int,
    seed: int,
    threads: int = DEFAULT_THREADS,
    batch_size: int = 10_000,
    label: str = "samples",
) -> np.ndarray:
    """Concatenate draw(size, rng) over fixed-size batches; batch i always uses stream (seed, i)."""
    sizes: Sequence[int] = [batch_size] * (total // batch_size)
    if total % batch_size:
        sizes = list(sizes) + [total % batch_size]
    parts = run_replicas(lambda i, rng: draw(sizes[i], rng), len(sizes), seed, threads, label)
    return np.concatenate(parts) if parts else np.zeros(0)
