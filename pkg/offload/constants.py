"""Physical constants, parameter-table defaults and harness defaults.

Scenario defaults are written in the units a configuration file uses
(Mb, MHz, GHz, km, Wh, min, mW); ``services.scenario`` converts them to SI.
"""
from enum import StrEnum

from scipy import constants as sc

# Unit factors (file unit -> SI)
MEGABIT = sc.mega
MEGAHERTZ = sc.mega
GIGAHERTZ = sc.giga
KILOMETRE = sc.kilo
MINUTE = sc.minute
WATT_HOUR = sc.hour
MILLIWATT = sc.milli

# Physical constants, exactly as the parameter table states them
BOLTZMANN = 1.38e-23
LIGHT_SPEED = 2.998e8
EARTH_RADIUS = 6.371e6
GRAVITY = 9.81

# Numerical guards
ROOT_EPSILON = 1e-9
SOLVER_TOLERANCE = 1e-12
NEWTON_MAX_ITERATIONS = 50


class NodeClass(StrEnum):
    UAV = "UAV"
    HAP = "HAP"
    LEO = "LEO"


class AntennaKind(StrEnum):
    UPA = "UPA"
    CAR = "CAR"


EDGE_CLASSES = (NodeClass.HAP, NodeClass.LEO)
ANTENNA_KINDS = (AntennaKind.UPA, AntennaKind.CAR)

# UAV EIRP and G/T grow with the array size: 10 log10(N) + offset
UAV_EIRP_OFFSET_DB = -6.0
UAV_GAIN_TO_TEMP_OFFSET_DB = -31.0

SCENARIO_DEFAULTS = {
    "edge_class": NodeClass.HAP,
    "num_uavs": 20,
    "frame_rate": 10.0,
    "offload_factor": 0.5,
    "ul_payload": 3.0,
    "dl_payload": 0.1,
    "compute_load": 90.0,
    "total_bandwidth": 400.0,
    "ul_carrier": 30.0,
    "dl_carrier": 20.0,
    "tx_power": 30.0,
    "elevation_angle": 70.0,
    "flight_time": 60.0,
    "uav_mass": 3.0,
    "propeller_radius": 0.3,
    "air_density": 1.0,
    "extra_loss_ul": 0.0,
    "extra_loss_dl": 0.0,
    "solar_irradiance": 600.0,
    "photovoltaic_efficiency": 0.15,
    "amplifier_efficiency": 1.0,
    "uav_antenna_elements": 8,
    "uav_gpu_efficiency": 50.0,
    "uav_compute_capacity": 1000.0,
    "uav_battery_capacity": 130.0,
    "uav_altitude": 0.1,
    "upa_tx_slope": 168.0,
    "upa_tx_intercept": 178.5,
    "upa_rx_slope": 69.0,
    "upa_rx_intercept": 266.8,
    "car_tx_intercept": 316.0,
    "car_rx_intercept": 305.8,
}

EDGE_DEFAULTS = {
    NodeClass.HAP: {
        "edge_antenna_kind": AntennaKind.UPA,
        "edge_antenna_elements": 64,
        "edge_gpu_efficiency": 200.0,
        "edge_compute_capacity": 20000.0,
        "edge_battery_capacity": 8000.0,
        "edge_altitude": 20.0,
        "edge_solar_panel_area": 100.0,
        "edge_eirp": 12.0,
        "edge_gain_to_temp": -13.0,
    },
    NodeClass.LEO: {
        "edge_antenna_kind": AntennaKind.CAR,
        "edge_antenna_elements": 1,
        "edge_gpu_efficiency": 200.0,
        "edge_compute_capacity": 20000.0,
        "edge_battery_capacity": 6000.0,
        "edge_altitude": 600.0,
        "edge_solar_panel_area": 30.0,
        "edge_eirp": 32.5,
        "edge_gain_to_temp": 13.0,
    },
}

# Harness defaults (exposed through constance)
SWEEP_ROW_CAP = 1_000_000
SWEEP_WORKERS = 4
DES_ARRIVALS = 1_000_000
DES_WARMUP_FRACTION = 0.1
DES_SEED = 2023
DES_BATCHES = 20
