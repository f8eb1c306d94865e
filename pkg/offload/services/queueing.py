"""D/M/1 steady state.

The sojourn time of a D/M/1 queue is ``1 / (mu (1 - delta))`` where delta is
the root in (0, 1) of ``delta = exp(-(mu / lambda) (1 - delta))``.
"""
import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Optional

from scipy.optimize import bisect, newton

from offload.constants import NEWTON_MAX_ITERATIONS, ROOT_EPSILON, SOLVER_TOLERANCE
from offload.exceptions import QueuePreconditionError

logger = logging.getLogger(__name__)


class QueueStatus(StrEnum):
    STABLE = "stable"
    IDLE = "idle"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class QueueParams:
    arrival_rate: float     # jobs/s
    service_rate: float     # jobs/s

    def __post_init__(self):
        if self.arrival_rate < 0:
            raise ValueError("arrival rate must be ≥ 0")
        if self.service_rate <= 0:
            raise ValueError("service rate must be > 0")


@dataclass(frozen=True)
class QueueResult:
    load_factor: float
    status: QueueStatus
    delta: Optional[float] = None
    sojourn_time: Optional[float] = None

    @property
    def is_stable(self) -> bool:
        return self.status != QueueStatus.UNSTABLE


def load_factor(q: QueueParams) -> float:
    return q.arrival_rate / q.service_rate


def _residual(q: QueueParams):
    ratio = q.service_rate / q.arrival_rate

    def f(delta):
        return delta - math.exp(-ratio * (1 - delta))

    def fprime(delta):
        return 1 - ratio * math.exp(-ratio * (1 - delta))

    return f, fprime


def _check_domain(q: QueueParams) -> None:
    if q.arrival_rate == 0:
        raise QueuePreconditionError("delta is undefined for an idle queue (lambda = 0)")
    rho = load_factor(q)
    if rho >= 1:
        raise QueuePreconditionError(f"load factor {rho:.4g} ≥ 1: the queue has no steady state")


def _underflows(q: QueueParams) -> bool:
    # exp(-mu/lambda) == 0 means delta is 0 to double precision
    return math.exp(-q.service_rate / q.arrival_rate) == 0.0


def bisect_delta(q: QueueParams, tol: float = SOLVER_TOLERANCE) -> float:
    """Root by bisection on [0, 1 - eps]; f(0) < 0 < f(1 - eps) whenever rho < 1."""
    _check_domain(q)
    if _underflows(q):
        return 0.0
    f, _ = _residual(q)
    return bisect(f, 0.0, 1.0 - ROOT_EPSILON, xtol=tol * 1e-3, maxiter=200)


def solve_delta(q: QueueParams, tol: float = SOLVER_TOLERANCE) -> float:
    """Root of the D/M/1 fixed point.

    Newton iteration seeded at rho; falls back to bisection when an iterate
    leaves [0, 1), the residual exceeds ``tol``, or 50 iterations pass
    without convergence.

    Args:
        q: queue with 0 < rho < 1
        tol: absolute bound on |f(delta)|

    Returns:
        delta in [0, 1); exactly 0 when exp(-mu/lambda) underflows
    """
    _check_domain(q)
    if _underflows(q):
        return 0.0
    f, fprime = _residual(q)
    root, info = newton(
        f,
        load_factor(q),
        fprime=fprime,
        tol=tol * 1e-3,
        maxiter=NEWTON_MAX_ITERATIONS,
        full_output=True,
        disp=False,
    )
    root = float(root)
    if info.converged and 0.0 <= root < 1.0 - ROOT_EPSILON and abs(f(root)) <= tol:
        return root
    logger.debug(
        f"Newton did not settle for lambda={q.arrival_rate}, mu={q.service_rate} "
        f"(root={root}, converged={info.converged}); bisecting"
    )
    return bisect_delta(q, tol)


def delta_approximation(q: QueueParams) -> float:
    """Closed-form fit 4.2 exp(-1.5 mu / lambda), for comparison with ``solve_delta``."""
    if q.arrival_rate <= 0:
        raise QueuePreconditionError("the closed-form fit needs lambda > 0")
    return min(4.2 * math.exp(-1.5 * q.service_rate / q.arrival_rate), 1.0 - ROOT_EPSILON)


def sojourn_time(q: QueueParams, tol: float = SOLVER_TOLERANCE) -> QueueResult:
    """Mean waiting plus service time; instability is a status, not an error."""
    rho = load_factor(q)
    if q.arrival_rate == 0:
        return QueueResult(load_factor=0.0, status=QueueStatus.IDLE, delta=0.0, sojourn_time=1 / q.service_rate)
    if rho >= 1:
        logger.debug(f"Queue unstable: rho={rho:.4g}")
        return QueueResult(load_factor=rho, status=QueueStatus.UNSTABLE)
    delta = solve_delta(q, tol)
    return QueueResult(
        load_factor=rho,
        status=QueueStatus.STABLE,
        delta=delta,
        sojourn_time=1 / (q.service_rate * (1 - delta)),
    )
