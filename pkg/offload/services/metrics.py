"""Delay, autonomy and energy metrics of one scenario.

A delay of ``None`` means the queue it depends on is unstable.
"""
import logging
from dataclasses import dataclass, replace
from enum import StrEnum
from typing import Optional, Sequence

import numpy as np

from offload.exceptions import UnreachableLinkError
from offload.services import channel, energy, queueing
from offload.services.channel import LinkBudget, LinkDirection
from offload.services.energy import EnergyBreakdown, EnergyCapacity
from offload.services.queueing import QueueParams, QueueResult
from offload.services.scenario import ScenarioConfig

logger = logging.getLogger(__name__)


class QueueKind(StrEnum):
    LOCAL = "local"
    EDGE = "edge"


@dataclass(frozen=True)
class MetricRow:
    edge_class: str
    offload_factor: float
    num_uavs: int
    frame_rate: float
    antenna_elements: int
    elevation_angle: float
    uav_gpu_efficiency: float
    flight_time: float                  # s
    bandwidth: float                    # Hz per UAV
    load_local: float
    load_edge: float
    local_delay: Optional[float]        # s
    edge_delay: Optional[float]         # s
    avg_delay: Optional[float]          # s
    autonomy: float
    uav_energy: EnergyBreakdown
    edge_energy: EnergyBreakdown
    uav_capacity: EnergyCapacity
    edge_capacity: EnergyCapacity
    uav_endurance: Optional[float]      # s
    edge_utilisation: Optional[float]
    uplink: LinkBudget
    downlink: LinkBudget


def local_queue(cfg: ScenarioConfig) -> QueueParams:
    return QueueParams(
        arrival_rate=(1 - cfg.offload_factor) * cfg.frame_rate,
        service_rate=cfg.uav.compute_capacity / cfg.compute_load,
    )


def edge_queue(cfg: ScenarioConfig) -> QueueParams:
    return QueueParams(
        arrival_rate=cfg.offload_factor * cfg.frame_rate * cfg.num_uavs,
        service_rate=cfg.edge.compute_capacity / cfg.compute_load,
    )


def local_delay(cfg: ScenarioConfig) -> Optional[float]:
    return queueing.sojourn_time(local_queue(cfg)).sojourn_time


def _transmission_times(uplink: LinkBudget, downlink: LinkBudget, cfg: ScenarioConfig):
    t_ul = channel.transmission_delay(cfg.ul_payload, uplink.capacity)
    t_dl = channel.transmission_delay(cfg.dl_payload, downlink.capacity)
    return t_ul, t_dl


def _edge_delay(cfg: ScenarioConfig, uplink: LinkBudget, downlink: LinkBudget, queue: QueueResult) -> Optional[float]:
    if not queue.is_stable:
        return None
    try:
        t_ul, t_dl = _transmission_times(uplink, downlink, cfg)
    except UnreachableLinkError:
        # a local-only swarm never uses the link
        if cfg.offload_factor == 0:
            return None
        raise
    return 2 * channel.propagation_delay(uplink.distance) + t_ul + t_dl + queue.sojourn_time


def edge_delay(cfg: ScenarioConfig) -> Optional[float]:
    """Round trip through the edge server: propagation both ways, UL and DL
    transmission on B_T / n, and the edge queue.

    Raises:
        UnreachableLinkError: when either link carries no data and frames are offloaded
    """
    uplink = channel.link_budget(cfg, LinkDirection.UL)
    downlink = channel.link_budget(cfg, LinkDirection.DL)
    return _edge_delay(cfg, uplink, downlink, queueing.sojourn_time(edge_queue(cfg)))


def combine_delays(eta: float, local: Optional[float], edge: Optional[float]) -> Optional[float]:
    # the endpoints ignore the unused term entirely, stable or not
    if eta == 0:
        return local
    if eta == 1:
        return edge
    if local is None or edge is None:
        return None
    return (1 - eta) * local + eta * edge


def average_delay(cfg: ScenarioConfig) -> Optional[float]:
    return combine_delays(cfg.offload_factor, local_delay(cfg), edge_delay(cfg))


def _uav_energy(cfg: ScenarioConfig, uplink: LinkBudget, downlink: LinkBudget):
    uav_do = edge_do = 0.0
    if cfg.offload_factor > 0:
        t_ul, t_dl = _transmission_times(uplink, downlink, cfg)
        uav_do, edge_do = energy.offload_energy_per_frame(t_ul, t_dl, cfg.uav.antenna, cfg.edge.antenna, cfg.tx_power)
    uav = energy.uav_total_energy(
        cfg, uav_do, energy.processing_energy_per_frame(cfg.compute_load, cfg.uav.gpu_efficiency)
    )
    edge = energy.edge_total_energy(
        cfg, edge_do, energy.processing_energy_per_frame(cfg.compute_load, cfg.edge.gpu_efficiency)
    )
    return uav, edge


def _autonomy(breakdown: EnergyBreakdown) -> float:
    if breakdown.total == 0:
        return 1.0
    return breakdown.movement / breakdown.total


def uav_autonomy(cfg: ScenarioConfig) -> float:
    """Share of the UAV's energy that goes into hovering."""
    uplink = channel.link_budget(cfg, LinkDirection.UL)
    downlink = channel.link_budget(cfg, LinkDirection.DL)
    uav, _ = _uav_energy(cfg, uplink, downlink)
    return _autonomy(uav)


def stability_map(
    cfg: ScenarioConfig,
    n_values: Sequence[int],
    r_values: Sequence[float],
    queue: QueueKind,
) -> np.ndarray:
    """Load factor of the local or edge queue for every (n, r) pair.

    Args:
        cfg: base scenario; its eta, C_l and capacities are used
        n_values: swarm sizes (rows)
        r_values: frame rates (columns)
        queue: ``QueueKind.LOCAL`` or ``QueueKind.EDGE``

    Returns:
        Array of shape (len(n_values), len(r_values))
    """
    if len(n_values) == 0 or len(r_values) == 0:
        raise ValueError("stability map needs non-empty n and r grids")
    build = local_queue if queue == QueueKind.LOCAL else edge_queue
    grid = np.empty((len(n_values), len(r_values)))
    for i, n in enumerate(n_values):
        for j, r in enumerate(r_values):
            point = replace(cfg, num_uavs=n, frame_rate=r)
            grid[i, j] = queueing.load_factor(build(point))
    return grid


def evaluate(cfg: ScenarioConfig) -> MetricRow:
    """Compute every reported metric of one scenario.

    Args:
        cfg: validated scenario

    Returns:
        MetricRow with delays (``None`` when unstable), energies, capacities
        and both link budgets
    """
    uplink = channel.link_budget(cfg, LinkDirection.UL)
    downlink = channel.link_budget(cfg, LinkDirection.DL)
    local = queueing.sojourn_time(local_queue(cfg))
    edge = queueing.sojourn_time(edge_queue(cfg))

    local_t = local.sojourn_time
    edge_t = _edge_delay(cfg, uplink, downlink, edge)
    uav_e, edge_e = _uav_energy(cfg, uplink, downlink)
    uav_c = energy.node_energy_capacity(cfg, cfg.uav, uav_e)
    edge_c = energy.node_energy_capacity(cfg, cfg.edge, edge_e)

    # flight time the battery alone sustains at this load
    endurance = None
    if cfg.flight_time > 0:
        uav_rate = energy.uav_hover_power(cfg) + (uav_e.processing + uav_e.offloading) / cfg.flight_time
        endurance = cfg.uav.battery_capacity / uav_rate
    utilisation = edge_e.total / edge_c.capacity if edge_c.capacity > 0 else None

    row = MetricRow(
        edge_class=str(cfg.edge.node_class),
        offload_factor=cfg.offload_factor,
        num_uavs=cfg.num_uavs,
        frame_rate=cfg.frame_rate,
        antenna_elements=cfg.uav.antenna.elements,
        elevation_angle=cfg.elevation_angle,
        uav_gpu_efficiency=cfg.uav.gpu_efficiency,
        flight_time=cfg.flight_time,
        bandwidth=uplink.bandwidth,
        load_local=local.load_factor,
        load_edge=edge.load_factor,
        local_delay=local_t,
        edge_delay=edge_t,
        avg_delay=combine_delays(cfg.offload_factor, local_t, edge_t),
        autonomy=_autonomy(uav_e),
        uav_energy=uav_e,
        edge_energy=edge_e,
        uav_capacity=uav_c,
        edge_capacity=edge_c,
        uav_endurance=endurance,
        edge_utilisation=utilisation,
        uplink=uplink,
        downlink=downlink,
    )
    if row.avg_delay is None:
        logger.debug(
            f"Unstable point: eta={cfg.offload_factor}, n={cfg.num_uavs}, r={cfg.frame_rate}, "
            f"rho_local={local.load_factor:.3g}, rho_edge={edge.load_factor:.3g}"
        )
    return row
