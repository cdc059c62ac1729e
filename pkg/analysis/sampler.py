"""
Uniform Sampler - exact uniform random expressions of a given size
Recursive counting method over the r[n] table, plus the empirical
|π| / state-count experiment with censoring of oversized samples.
"""

import csv
import io
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, List, Optional, Union

import numpy as np
from scipy import stats as scipy_stats

from analysis.combinatorics import CoeffTable, cached_coefficients, enumerate_all
from core.automaton import build_apd
from core.derive import pi
from core.errors import StateBudgetError
from core.syntax import BINARY_OPS, Alphabet, Expr, binary, eps, star, sym
from utils.config import setting
from utils.logger import logger, run_logger

Seed = Union[int, str]


def substream(seed: Seed, index: int) -> random.Random:
    """Independent generator for sample #index; identical across processes"""
    return random.Random(f"{seed}/{index}")


def sample_uniform(k: int, n: int, rng: Union[Seed, random.Random, None] = None,
                   table: Optional[CoeffTable] = None) -> Expr:
    """
    Draw one expression of size n uniformly among the r[n] expressions

    Args:
        k: Alphabet size
        n: Size (>= 1)
        rng: random.Random, or a seed for one
        table: Coefficient table of order >= n

    Returns:
        The sampled expression over Alphabet.standard(k)
    """
    if n < 1:
        raise ValueError(f"Size must be >= 1, got {n}")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    table = table if table is not None and table.n_max >= n else cached_coefficients(k, n)
    r = table.r
    leaves = [eps()] + [sym(s) for s in Alphabet.standard(k).names]

    def draw(size: int) -> Expr:
        if size == 1:
            return leaves[rng.randrange(len(leaves))]

        x = rng.randrange(r[size])
        if x < r[size - 1]:
            return star(draw(size - 1))
        x -= r[size - 1]
        for op in BINARY_OPS:
            for i in range(1, size - 1):
                weight = r[i] * r[size - 1 - i]
                if x < weight:
                    left = draw(i)
                    return binary(op, left, draw(size - 1 - i))
                x -= weight
        raise AssertionError(f"Counting table inconsistent at size {size}")

    return draw(n)


def sample_many(k: int, n: int, count: int, seed: Seed = 0) -> List[Expr]:
    """count samples, sample #i drawn from substream(seed, i)"""
    table = cached_coefficients(k, n)
    return [sample_uniform(k, n, substream(seed, i), table) for i in range(count)]


@dataclass(frozen=True)
class SampleRecord:
    index: int
    width: int
    pi_size: int
    states: int
    censored: bool


def _evaluate_sample(args) -> SampleRecord:
    k, n, seed, index, budget = args
    e = sample_uniform(k, n, substream(seed, index), cached_coefficients(k, n))
    try:
        nfa = build_apd(e, budget=budget)
    except StateBudgetError as exc:
        run_logger.log_censored(index, str(exc))
        return SampleRecord(index, e.width, 0, 0, True)
    return SampleRecord(index, e.width, len(pi(e)), nfa.state_count, False)


@dataclass(frozen=True)
class SampleStats:
    """
    Aggregates of a sampling run

    Means are over the uncensored samples; bound_worst and bound_avg are the
    means of 2^|α|_Σ and (4/3)^|α|_Σ over the same samples. When every sample
    is censored, mean_pi and mean_states are 0 and mean_width and the bounds
    are taken over all samples.
    """
    k: int
    n: int
    samples: int
    seed: str
    mean_width: float
    mean_pi: float
    max_pi: int
    mean_states: float
    bound_worst: float
    bound_avg: float
    censored: int

    def to_csv_row(self) -> List:
        return list(astuple(self))


STATS_HEADER = [f.name for f in fields(SampleStats)]


def run_stats(k: int, n: int, samples: Optional[int] = None, seed: Seed = 0,
              workers: Optional[int] = None, budget: Optional[int] = None) -> SampleStats:
    """
    Sample, build π and A_pd for each expression, and aggregate

    Results are identical for any worker count: each sample uses its own
    substream and aggregation runs in index order.

    Args:
        k: Alphabet size
        n: Expression size
        samples: Number of samples (default from config)
        seed: Base seed
        workers: Worker processes (default from config)
        budget: Per-sample closure budget (default from config)
    """
    samples = setting('sampler', 'default_samples', samples)
    workers = setting('sampler', 'workers', workers)
    budget = setting('sampler', 'state_budget', budget)
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    cached_coefficients(k, n)

    jobs = [(k, n, seed, i, budget) for i in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_evaluate_sample, jobs, chunksize=max(1, samples // (4 * workers))))
    else:
        records = [_evaluate_sample(job) for job in jobs]
    records.sort(key=lambda rec: rec.index)

    kept = [rec for rec in records if not rec.censored]
    censored = len(records) - len(kept)
    if not kept:
        logger.warning(f"All {samples} samples censored at k={k}, n={n}")
        # censored samples still carry their width
        widths = np.array([rec.width for rec in records], dtype=float)
        pis = states = np.zeros(1)
    else:
        widths = np.array([rec.width for rec in kept], dtype=float)
        pis = np.array([rec.pi_size for rec in kept], dtype=float)
        states = np.array([rec.states for rec in kept], dtype=float)

    result = SampleStats(
        k=k, n=n, samples=samples, seed=str(seed),
        mean_width=float(widths.mean()),
        mean_pi=float(pis.mean()),
        max_pi=int(pis.max()),
        mean_states=float(states.mean()),
        bound_worst=float(np.power(2.0, widths).mean()),
        bound_avg=float(np.power(4.0 / 3.0, widths).mean()),
        censored=censored,
    )
    run_logger.log_run("stats", k=k, n=n, samples=samples, seed=seed, censored=censored)
    return result


def stats_csv(rows: Iterable[SampleStats]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(STATS_HEADER)
    for row in rows:
        writer.writerow(row.to_csv_row())
    return buffer.getvalue()


def chi_square_uniformity(k: int, n: int, draws: int, seed: Seed = 0) -> float:
    """
    Chi-square goodness of fit of sampler output against the uniform law

    Returns:
        p-value of scipy.stats.chisquare over all r[n] outcomes
    """
    outcomes = list(enumerate_all(k, n))
    counts = Counter(sample_many(k, n, draws, seed))
    observed = [counts.get(e, 0) for e in outcomes]
    if sum(observed) != draws:
        raise AssertionError("Sampler produced an expression outside the enumeration")
    return float(scipy_stats.chisquare(observed).pvalue)
