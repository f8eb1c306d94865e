"""Independent checks of the D/M/1 solver.

A discrete-event simulation of the queue and a plain contraction iteration of
the fixed point, plus grid reports comparing them with ``queueing``.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy import stats

from offload.constants import DES_BATCHES, DES_WARMUP_FRACTION
from offload.exceptions import QueuePreconditionError
from offload.services import queueing
from offload.services.queueing import QueueParams

logger = logging.getLogger(__name__)

# Service rate used by the grid reports: the default UAV queue, C_UAV / C_l
REFERENCE_SERVICE_RATE = 1000 / 90


@dataclass(frozen=True)
class DesResult:
    mean_sojourn: float             # s
    sample_count: int
    confidence_halfwidth: float     # s, 95%


def _batch_halfwidth(samples: np.ndarray, batches: int) -> float:
    means = np.array([chunk.mean() for chunk in np.array_split(samples, batches)])
    return float(stats.t.ppf(0.975, batches - 1) * means.std(ddof=1) / math.sqrt(batches))


def simulate_dm1(
    q: QueueParams,
    arrivals: int,
    warmup: int,
    seed: int,
    batches: int = DES_BATCHES,
) -> DesResult:
    """Simulate a FIFO D/M/1 queue and average the sojourn of post-warmup jobs.

    Waiting times follow the Lindley recursion W' = max(0, W + S - 1/lambda),
    evaluated in closed form as the running sum minus its running minimum.

    Args:
        q: stable queue (rho < 1)
        arrivals: number of simulated jobs
        warmup: leading jobs excluded from the statistics
        seed: PCG64 seed; equal seeds give equal results
        batches: batch count of the batch-means confidence interval

    Returns:
        DesResult with the mean sojourn and its 95% halfwidth
    """
    if q.arrival_rate <= 0 or queueing.load_factor(q) >= 1:
        raise QueuePreconditionError(f"simulation needs 0 < rho < 1, got rho={queueing.load_factor(q):.4g}")
    if arrivals <= warmup or warmup < 0:
        raise QueuePreconditionError(f"arrivals ({arrivals}) must exceed warmup ({warmup})")
    if arrivals - warmup < 2 * batches:
        raise QueuePreconditionError(f"too few post-warmup jobs for {batches} batches")

    rng = np.random.Generator(np.random.PCG64(seed))
    service = rng.exponential(1 / q.service_rate, arrivals)
    drift = np.concatenate(([0.0], np.cumsum(service[:-1] - 1 / q.arrival_rate)))
    waiting = drift - np.minimum.accumulate(drift)
    sojourn = (waiting + service)[warmup:]

    result = DesResult(
        mean_sojourn=float(sojourn.mean()),
        sample_count=int(sojourn.size),
        confidence_halfwidth=_batch_halfwidth(sojourn, batches),
    )
    logger.debug(
        f"DES lambda={q.arrival_rate:.4g} mu={q.service_rate:.4g}: "
        f"{result.mean_sojourn:.6g} ± {result.confidence_halfwidth:.2g} s over {result.sample_count} jobs"
    )
    return result


def fixed_point_iterate(q: QueueParams, iterations: int) -> float:
    """Iterate delta <- exp(-(mu / lambda)(1 - delta)) from 0.5."""
    if q.arrival_rate <= 0 or queueing.load_factor(q) >= 1:
        raise QueuePreconditionError("fixed-point iteration needs 0 < rho < 1")
    ratio = q.service_rate / q.arrival_rate
    delta = 0.5
    for _ in range(iterations):
        following = math.exp(-ratio * (1 - delta))
        if following == delta:
            break
        delta = following
    return delta


def dm1_grid_report(
    rhos: Sequence[float],
    arrivals: int,
    seed: int,
    warmup_fraction: float = DES_WARMUP_FRACTION,
    batches: int = DES_BATCHES,
) -> List[Dict[str, Any]]:
    """Simulated against analytic sojourn time, one row per load factor.

    A row passes when the analytic value lies within the 95% halfwidth plus
    1% of the simulated mean.
    """
    rows = []
    warmup = int(arrivals * warmup_fraction)
    for rho in rhos:
        q = QueueParams(arrival_rate=rho * REFERENCE_SERVICE_RATE, service_rate=REFERENCE_SERVICE_RATE)
        analytic = queueing.sojourn_time(q).sojourn_time
        des = simulate_dm1(q, arrivals, warmup, seed, batches)
        error = abs(des.mean_sojourn - analytic)
        rows.append({
            'rho': rho,
            'arrival_rate': q.arrival_rate,
            'service_rate': q.service_rate,
            'analytic_sojourn_s': analytic,
            'des_sojourn_s': des.mean_sojourn,
            'halfwidth_s': des.confidence_halfwidth,
            'samples': des.sample_count,
            'relative_error': error / analytic,
            'passed': error <= des.confidence_halfwidth + 0.01 * analytic,
        })
    logger.info(f"DES grid: {sum(r['passed'] for r in rows)}/{len(rows)} load factors within tolerance")
    return rows


def solver_grid_report(rhos: Sequence[float], iterations: int = 100_000) -> List[Dict[str, Any]]:
    """Newton, bisection, contraction iteration and the closed-form fit side by side."""
    rows = []
    for rho in rhos:
        q = QueueParams(arrival_rate=rho * REFERENCE_SERVICE_RATE, service_rate=REFERENCE_SERVICE_RATE)
        newton = queueing.solve_delta(q)
        bisection = queueing.bisect_delta(q)
        contraction = fixed_point_iterate(q, iterations)
        fit = queueing.delta_approximation(q)
        rows.append({
            'rho': rho,
            'newton': newton,
            'bisection': bisection,
            'fixed_point': contraction,
            'approximation': fit,
            'max_disagreement': max(newton, bisection, contraction) - min(newton, bisection, contraction),
            'approximation_error': abs(fit - newton) / newton if newton > 0 else None,
        })
    return rows
