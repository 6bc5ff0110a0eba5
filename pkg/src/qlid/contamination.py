"""Contamination protocols, order-statistic mean samples, and bin counts.

Three tools for stress-testing fits: a deterministic outlier injector, a
simulator that averages sorted replications rank by rank (the "artificial
mean sample" of a model), and a bin counter whose last bin catches values
sitting exactly on the top edge.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import DistributionSpec
from .sample import Sample, Support

# Replications are grouped into fixed-size blocks with one RNG stream per
# block, so results do not depend on how many workers consume the blocks.
BLOCK_SIZE = 250


def inject_outliers(sample: Sample) -> Sample:
    """Append deterministic outliers scaled off the sample's extremes.

    Half-line data get one point at twice the maximum; full-line data get a
    symmetric pair at plus and minus twice the largest magnitude.  The
    returned sample marks the appended points in its ``injected`` mask.
    """
    values = sample.values
    if sample.support is Support.HALF_LINE:
        extra = np.array([2.0 * float(np.max(values))])
    else:
        magnitude = 2.0 * float(np.max(np.abs(values)))
        extra = np.array([magnitude, -magnitude])
    new_values = np.concatenate([values, extra])
    new_mask = np.concatenate([sample.injected, np.ones(extra.size, dtype=bool)])
    return Sample(new_values, sample.support, new_mask)


def rank_means(replications) -> np.ndarray:
    """Mean of each sorted position across equal-length replications."""
    arrays = [np.sort(np.asarray(rep, dtype=float)) for rep in replications]
    if not arrays:
        raise ValueError("need at least one replication")
    length = arrays[0].size
    if any(arr.size != length for arr in arrays):
        raise ValueError("replications must share a common length")
    return np.mean(np.vstack(arrays), axis=0)


def _block_sizes(replications: int) -> list[int]:
    sizes = [BLOCK_SIZE] * (replications // BLOCK_SIZE)
    if replications % BLOCK_SIZE:
        sizes.append(replications % BLOCK_SIZE)
    return sizes


def artificial_mean_sample(
    f0: DistributionSpec,
    n: int,
    replications: int,
    seed: int,
    workers: int = 1,
) -> Sample:
    """Rank-wise mean of many sorted draws from a model.

    Draws ``replications`` samples of size ``n`` from ``f0``, sorts each,
    and averages position by position; the result is a smoothed sample whose
    r-th value estimates the mean r-th order statistic.  Work is split into
    fixed blocks with one child RNG stream per block and merged in block
    order, so the output is bit-identical for any ``workers`` count.
    """
    n = int(n)
    replications = int(replications)
    workers = int(workers)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if replications < 1:
        raise ValueError(f"replications must be at least 1, got {replications}")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    sizes = _block_sizes(replications)
    streams = np.random.SeedSequence(int(seed)).spawn(len(sizes))

    def run_block(index: int) -> np.ndarray:
        rng = np.random.default_rng(streams[index])
        acc = np.zeros(n)
        for _ in range(sizes[index]):
            acc += np.sort(f0.sample_values(n, rng))
        return acc

    if workers == 1:
        block_sums = [run_block(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            block_sums = list(pool.map(run_block, range(len(sizes))))

    total = np.zeros(n)
    for block in block_sums:  # fixed merge order, independent of scheduling
        total += block
    return Sample(total / replications, f0.support)


@dataclass(frozen=True)
class BinReport:
    """Counts per edge with the closed-top convention.

    ``counts`` has the same length as ``edges``: entry ``i < m-1`` counts
    ``edges[i] <= x < edges[i+1]`` and the final entry counts values equal
    to the last edge.  ``out_of_range`` holds everything below the first or
    above the last edge, so counts plus out-of-range always equals n.
    """

    edges: np.ndarray
    counts: np.ndarray
    out_of_range: int

    def __post_init__(self):
        object.__setattr__(self, "edges", np.asarray(self.edges, dtype=float))
        object.__setattr__(self, "counts", np.asarray(self.counts, dtype=int))

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.out_of_range

    def to_csv(self) -> str:
        lines = ["edge,count"]
        for edge, count in zip(self.edges, self.counts):
            lines.append(f"{float(edge)!r},{int(count)}")
        lines.append(f"out_of_range,{self.out_of_range}")
        return "\n".join(lines) + "\n"


def bin_count(data, edges) -> BinReport:
    """Count observations against increasing edges, last edge inclusive.

    ``data`` may be a :class:`Sample` or a plain array.  Requires at least
    two strictly increasing, finite edges.
    """
    values = data.values if isinstance(data, Sample) else np.asarray(data, dtype=float)
    edge_arr = np.asarray(edges, dtype=float)
    if edge_arr.ndim != 1 or edge_arr.size < 2:
        raise ValueError("edges must be a one-dimensional array of length >= 2")
    if not np.all(np.isfinite(edge_arr)):
        raise ValueError("edges must be finite")
    if np.any(np.diff(edge_arr) <= 0.0):
        raise ValueError("edges must be strictly increasing")
    in_range = (values >= edge_arr[0]) & (values <= edge_arr[-1])
    # side="right" sends a value equal to the last edge to index m-1, the
    # dedicated top slot; everything else lands in its half-open interval.
    idx = np.searchsorted(edge_arr, values[in_range], side="right") - 1
    counts = np.bincount(idx, minlength=edge_arr.size)
    return BinReport(
        edges=edge_arr,
        counts=counts,
        out_of_range=int(values.size - in_range.sum()),
    )
