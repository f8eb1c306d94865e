"""Scenario configuration: domain types, loading, validation and unit conversion.

Configuration files are flat JSON objects in file units (see
``offload.constants``). ``load_config`` validates them with
``ScenarioConfigSerializer`` and converts every quantity to SI exactly once.
"""
import hashlib
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Mapping, Optional, Union

from offload import constants as c
from offload.constants import AntennaKind, NodeClass
from offload.exceptions import ConfigParseError
from offload.serializers import ScenarioConfigSerializer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhysicalConstants:
    boltzmann: float = c.BOLTZMANN
    light_speed: float = c.LIGHT_SPEED
    earth_radius: float = c.EARTH_RADIUS
    gravity: float = c.GRAVITY


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class AntennaPowerModel:
    """Transceiver power as aggregate circuitry coefficients, in mW."""
    kind: AntennaKind
    elements: int
    tx_slope: float
    tx_intercept: float
    rx_slope: float
    rx_intercept: float
    amplifier_efficiency: float = 1.0


@dataclass(frozen=True)
class NodeProfile:
    node_class: NodeClass
    altitude: float             # m
    compute_capacity: float     # GFLOP/s
    gpu_efficiency: float       # GFLOP/J
    battery_capacity: float     # J
    solar_panel_area: Optional[float]  # m^2, None for the UAV
    eirp: float                 # dBW
    gain_to_temp: float         # dB/K
    antenna: AntennaPowerModel


@dataclass(frozen=True)
class ScenarioConfig:
    """One validated scenario, SI units except for fields declared in dB."""
    uav: NodeProfile
    edge: NodeProfile
    num_uavs: int
    frame_rate: float           # frames/s
    offload_factor: float
    ul_payload: float           # bits
    dl_payload: float           # bits
    compute_load: float         # GFLOP
    total_bandwidth: float      # Hz
    ul_carrier: float           # Hz
    dl_carrier: float           # Hz
    tx_power: float             # dBm
    elevation_angle: float      # degrees
    flight_time: float          # s
    uav_mass: float             # kg
    propeller_radius: float     # m
    air_density: float          # kg/m^3
    extra_loss_ul: float        # dB
    extra_loss_dl: float        # dB
    solar_irradiance: float     # W/m^2
    photovoltaic_efficiency: float


def uav_eirp(elements: int) -> float:
    return 10 * math.log10(elements) + c.UAV_EIRP_OFFSET_DB


def uav_gain_to_temp(elements: int) -> float:
    return 10 * math.log10(elements) + c.UAV_GAIN_TO_TEMP_OFFSET_DB


def parse_overrides(items: Iterable[str]) -> Dict[str, str]:
    """Turn ``key=value`` strings into a mapping; later keys win."""
    overrides = {}
    for item in items:
        key, sep, value = item.partition('=')
        if not sep or not key.strip():
            raise ConfigParseError(f"override '{item}' is not of the form key=value")
        overrides[key.strip()] = value.strip()
    return overrides


def parse_source(source: Optional[str]) -> Dict[str, Any]:
    """Parse JSON configuration text; empty text means all defaults."""
    if source is None or not source.strip():
        return {}
    try:
        values = json.loads(source)
    except json.JSONDecodeError as e:
        raise ConfigParseError(f"configuration is not valid JSON: {e}") from e
    if not isinstance(values, dict):
        raise ConfigParseError("configuration must be a JSON object of key/value pairs")
    return values


def _antenna(kind, elements, v) -> AntennaPowerModel:
    if kind == AntennaKind.CAR:
        return AntennaPowerModel(
            kind=AntennaKind.CAR,
            elements=1,
            tx_slope=0.0,
            tx_intercept=v['car_tx_intercept'],
            rx_slope=0.0,
            rx_intercept=v['car_rx_intercept'],
            amplifier_efficiency=v['amplifier_efficiency'],
        )
    return AntennaPowerModel(
        kind=AntennaKind.UPA,
        elements=elements,
        tx_slope=v['upa_tx_slope'],
        tx_intercept=v['upa_tx_intercept'],
        rx_slope=v['upa_rx_slope'],
        rx_intercept=v['upa_rx_intercept'],
        amplifier_efficiency=v['amplifier_efficiency'],
    )


def _build(v: Mapping[str, Any]) -> ScenarioConfig:
    """Convert validated file-unit values into an SI ``ScenarioConfig``."""
    n_uav = v['uav_antenna_elements']
    uav = NodeProfile(
        node_class=NodeClass.UAV,
        altitude=v['uav_altitude'] * c.KILOMETRE,
        compute_capacity=v['uav_compute_capacity'],
        gpu_efficiency=v['uav_gpu_efficiency'],
        battery_capacity=v['uav_battery_capacity'] * c.WATT_HOUR,
        solar_panel_area=None,
        eirp=uav_eirp(n_uav),
        gain_to_temp=uav_gain_to_temp(n_uav),
        antenna=_antenna(AntennaKind.UPA, n_uav, v),
    )
    edge = NodeProfile(
        node_class=NodeClass(v['edge_class']),
        altitude=v['edge_altitude'] * c.KILOMETRE,
        compute_capacity=v['edge_compute_capacity'],
        gpu_efficiency=v['edge_gpu_efficiency'],
        battery_capacity=v['edge_battery_capacity'] * c.WATT_HOUR,
        solar_panel_area=v['edge_solar_panel_area'],
        eirp=v['edge_eirp'],
        gain_to_temp=v['edge_gain_to_temp'],
        antenna=_antenna(v['edge_antenna_kind'], v['edge_antenna_elements'], v),
    )
    return ScenarioConfig(
        uav=uav,
        edge=edge,
        num_uavs=v['num_uavs'],
        frame_rate=v['frame_rate'],
        offload_factor=v['offload_factor'],
        ul_payload=v['ul_payload'] * c.MEGABIT,
        dl_payload=v['dl_payload'] * c.MEGABIT,
        compute_load=v['compute_load'],
        total_bandwidth=v['total_bandwidth'] * c.MEGAHERTZ,
        ul_carrier=v['ul_carrier'] * c.GIGAHERTZ,
        dl_carrier=v['dl_carrier'] * c.GIGAHERTZ,
        tx_power=v['tx_power'],
        elevation_angle=v['elevation_angle'],
        flight_time=v['flight_time'] * c.MINUTE,
        uav_mass=v['uav_mass'],
        propeller_radius=v['propeller_radius'],
        air_density=v['air_density'],
        extra_loss_ul=v['extra_loss_ul'],
        extra_loss_dl=v['extra_loss_dl'],
        solar_irradiance=v['solar_irradiance'],
        photovoltaic_efficiency=v['photovoltaic_efficiency'],
    )


def validate_values(values: Mapping[str, Any]) -> ScenarioConfig:
    """Validate a flat file-unit mapping and build the config.

    Raises:
        rest_framework.exceptions.ValidationError: keyed by the offending field
    """
    serializer = ScenarioConfigSerializer(data=dict(values))
    serializer.is_valid(raise_exception=True)
    return _build(serializer.validated_data)


def load_config(
    source: Optional[str] = None,
    overrides: Union[Mapping[str, Any], Iterable[str], None] = None,
) -> ScenarioConfig:
    """Load a scenario from JSON text plus overrides.

    Args:
        source: JSON object text; ``None`` or empty text selects all defaults
        overrides: mapping, or ``key=value`` strings as given to ``--set``

    Returns:
        A validated, immutable ``ScenarioConfig`` in SI units
    """
    values = parse_source(source)
    if overrides:
        if not isinstance(overrides, Mapping):
            overrides = parse_overrides(overrides)
        values.update(overrides)
    cfg = validate_values(values)
    logger.debug(f"Loaded scenario with {len(values)} explicit keys, edge={cfg.edge.node_class}")
    return cfg


def with_overrides(values: Mapping[str, Any], overrides: Mapping[str, Any]) -> ScenarioConfig:
    """Re-validate a raw mapping merged with per-point overrides."""
    return validate_values({**values, **overrides})


def dump_config(cfg: ScenarioConfig) -> Dict[str, Any]:
    """Serialize a config back to its flat file-unit mapping."""
    uav, edge = cfg.uav, cfg.edge
    car = edge.antenna if edge.antenna.kind == AntennaKind.CAR else None
    return {
        'edge_class': str(edge.node_class),
        'num_uavs': cfg.num_uavs,
        'frame_rate': cfg.frame_rate,
        'offload_factor': cfg.offload_factor,
        'ul_payload': cfg.ul_payload / c.MEGABIT,
        'dl_payload': cfg.dl_payload / c.MEGABIT,
        'compute_load': cfg.compute_load,
        'total_bandwidth': cfg.total_bandwidth / c.MEGAHERTZ,
        'ul_carrier': cfg.ul_carrier / c.GIGAHERTZ,
        'dl_carrier': cfg.dl_carrier / c.GIGAHERTZ,
        'tx_power': cfg.tx_power,
        'elevation_angle': cfg.elevation_angle,
        'flight_time': cfg.flight_time / c.MINUTE,
        'uav_mass': cfg.uav_mass,
        'propeller_radius': cfg.propeller_radius,
        'air_density': cfg.air_density,
        'extra_loss_ul': cfg.extra_loss_ul,
        'extra_loss_dl': cfg.extra_loss_dl,
        'solar_irradiance': cfg.solar_irradiance,
        'photovoltaic_efficiency': cfg.photovoltaic_efficiency,
        'amplifier_efficiency': uav.antenna.amplifier_efficiency,
        'uav_antenna_elements': uav.antenna.elements,
        'uav_gpu_efficiency': uav.gpu_efficiency,
        'uav_compute_capacity': uav.compute_capacity,
        'uav_battery_capacity': uav.battery_capacity / c.WATT_HOUR,
        'uav_altitude': uav.altitude / c.KILOMETRE,
        'edge_antenna_kind': str(edge.antenna.kind),
        'edge_antenna_elements': edge.antenna.elements,
        'edge_gpu_efficiency': edge.gpu_efficiency,
        'edge_compute_capacity': edge.compute_capacity,
        'edge_battery_capacity': edge.battery_capacity / c.WATT_HOUR,
        'edge_altitude': edge.altitude / c.KILOMETRE,
        'edge_solar_panel_area': edge.solar_panel_area,
        'edge_eirp': edge.eirp,
        'edge_gain_to_temp': edge.gain_to_temp,
        'upa_tx_slope': uav.antenna.tx_slope,
        'upa_tx_intercept': uav.antenna.tx_intercept,
        'upa_rx_slope': uav.antenna.rx_slope,
        'upa_rx_intercept': uav.antenna.rx_intercept,
        'car_tx_intercept': car.tx_intercept if car else c.SCENARIO_DEFAULTS['car_tx_intercept'],
        'car_rx_intercept': car.rx_intercept if car else c.SCENARIO_DEFAULTS['car_rx_intercept'],
    }


def canonical_json(values: Mapping[str, Any]) -> str:
    return json.dumps(values, sort_keys=True, separators=(',', ':'))


def config_digest(cfg: ScenarioConfig) -> str:
    """SHA-256 of the canonical JSON dump, used to stamp CSV headers."""
    return hashlib.sha256(canonical_json(dump_config(cfg)).encode('utf-8')).hexdigest()


def per_uav_bandwidth(cfg: ScenarioConfig) -> float:
    """Bandwidth of one UAV's orthogonal channel, B = B_T / n (Hz)."""
    return cfg.total_bandwidth / cfg.num_uavs
