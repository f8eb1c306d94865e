"""Energy ledger of the UAVs and the edge server.

Hovering, transceiver and processing energy per node over one flight, plus
the energy capacity a node can draw on (battery, and solar harvest for the
edge platforms).
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from offload.constants import MILLIWATT, NodeClass
from offload.services.scenario import CONSTANTS, AntennaPowerModel, NodeProfile, ScenarioConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnergyBreakdown:
    movement: float     # J
    processing: float   # J
    offloading: float   # J

    @property
    def total(self) -> float:
        return self.movement + self.processing + self.offloading


@dataclass(frozen=True)
class EnergyCapacity:
    battery: float      # J
    harvested: float    # J

    @property
    def capacity(self) -> float:
        return self.battery + self.harvested


def dbm_to_watt(value: float) -> float:
    return 10 ** (value / 10) * MILLIWATT


def hover_power(mass: float, propeller_radius: float, air_density: float) -> float:
    """Rotor power needed to hover, in W."""
    thrust = mass * CONSTANTS.gravity
    return math.sqrt(thrust ** 3 / (2 * math.pi * propeller_radius ** 2 * air_density))


def movement_energy(node: NodeProfile, flight_time: float, power: float) -> float:
    """Hovering energy over ``flight_time``; HAPs and satellites spend none on moving."""
    if node.node_class != NodeClass.UAV:
        return 0.0
    return power * flight_time


def tx_power(a: AntennaPowerModel, tx_power_dbm: float) -> float:
    circuitry = (a.tx_slope * a.elements + a.tx_intercept) * MILLIWATT
    return dbm_to_watt(tx_power_dbm) / a.amplifier_efficiency + circuitry


def rx_power(a: AntennaPowerModel) -> float:
    return (a.rx_slope * a.elements + a.rx_intercept) * MILLIWATT


def offload_energy_per_frame(
    t_ul: float,
    t_dl: float,
    uav_antenna: AntennaPowerModel,
    edge_antenna: AntennaPowerModel,
    p_t: float,
) -> Tuple[float, float]:
    """Radio energy spent moving one frame up and its result back down.

    Args:
        t_ul: uplink transmission time (s)
        t_dl: downlink transmission time (s)
        uav_antenna: UAV transceiver
        edge_antenna: edge transceiver
        p_t: radiated power (dBm), shared by both ends

    Returns:
        (uav, edge) energy per offloaded frame in J
    """
    uav = t_ul * tx_power(uav_antenna, p_t) + t_dl * rx_power(uav_antenna)
    edge = t_dl * tx_power(edge_antenna, p_t) + t_ul * rx_power(edge_antenna)
    return uav, edge


def processing_energy_per_frame(compute_load: float, efficiency: float) -> float:
    return compute_load / efficiency


def uav_hover_power(cfg: ScenarioConfig) -> float:
    return hover_power(cfg.uav_mass, cfg.propeller_radius, cfg.air_density)


def uav_total_energy(cfg: ScenarioConfig, per_frame_offload: float, per_frame_processing: float) -> EnergyBreakdown:
    """Energy one UAV spends over the flight.

    Each of the r frames per second is processed onboard with probability
    1 - eta and offloaded otherwise; hovering runs for the whole flight.
    """
    frames = cfg.frame_rate * cfg.flight_time
    eta = cfg.offload_factor
    return EnergyBreakdown(
        movement=movement_energy(cfg.uav, cfg.flight_time, uav_hover_power(cfg)),
        processing=(1 - eta) * per_frame_processing * frames,
        offloading=eta * per_frame_offload * frames,
    )


def edge_total_energy(
    cfg: ScenarioConfig,
    per_frame_offload_edge: float,
    per_frame_processing_edge: float,
) -> EnergyBreakdown:
    """Energy the edge server spends serving every offloaded frame of the swarm."""
    frames = cfg.offload_factor * cfg.frame_rate * cfg.num_uavs * cfg.flight_time
    return EnergyBreakdown(
        movement=0.0,
        processing=per_frame_processing_edge * frames,
        offloading=per_frame_offload_edge * frames,
    )


def energy_capacity(
    node: NodeProfile,
    consumption_rate: float,
    flight_time: float,
    irradiance: float,
    pv_efficiency: float,
) -> EnergyCapacity:
    """Battery plus the share of solar harvest the node can actually use.

    Consumption is constant and the battery starts full. While consumption
    outpaces the panels every harvested joule is used; otherwise the battery
    stays full and only ``consumption_rate`` of the harvest is usable.

    Args:
        node: node whose capacity is computed; UAVs harvest nothing
        consumption_rate: constant draw P_c (W)
        flight_time: t_f (s)
        irradiance: solar irradiance I (W/m^2)
        pv_efficiency: photovoltaic efficiency chi

    Returns:
        EnergyCapacity with battery and usable harvest in J
    """
    if node.node_class == NodeClass.UAV or not node.solar_panel_area:
        return EnergyCapacity(battery=node.battery_capacity, harvested=0.0)
    harvest_rate = pv_efficiency * irradiance * node.solar_panel_area
    if consumption_rate >= harvest_rate:
        harvested = harvest_rate * flight_time
    else:
        harvested = consumption_rate * flight_time
    return EnergyCapacity(battery=node.battery_capacity, harvested=harvested)


def node_energy_capacity(cfg: ScenarioConfig, node: NodeProfile, breakdown: EnergyBreakdown) -> EnergyCapacity:
    rate = breakdown.total / cfg.flight_time if cfg.flight_time > 0 else 0.0
    return energy_capacity(node, rate, cfg.flight_time, cfg.solar_irradiance, cfg.photovoltaic_efficiency)
