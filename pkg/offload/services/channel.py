"""Link budget between a UAV and its edge server.

Free-space path loss plus a configurable extra loss per direction; SNR from
EIRP, G/T, path loss and thermal noise; Shannon capacity.
"""
import logging
import math
from dataclasses import dataclass
from enum import StrEnum

from offload.constants import NodeClass
from offload.exceptions import UnreachableLinkError
from offload.services.scenario import CONSTANTS, ScenarioConfig, per_uav_bandwidth

logger = logging.getLogger(__name__)


class LinkDirection(StrEnum):
    UL = "UL"
    DL = "DL"


@dataclass(frozen=True)
class LinkBudget:
    direction: LinkDirection
    carrier: float          # Hz
    distance: float         # m
    bandwidth: float        # Hz
    eirp: float             # dBW
    gain_to_temp: float     # dB/K
    path_loss: float        # dB
    snr: float              # linear
    capacity: float         # bits/s

    @property
    def snr_db(self) -> float:
        return 10 * math.log10(self.snr) if self.snr > 0 else -math.inf


def slant_range_leo(alpha: float, sat_altitude: float) -> float:
    """Distance to a satellite at altitude ``sat_altitude`` seen at elevation ``alpha`` degrees."""
    if not 0.0 <= alpha <= 90.0:
        raise ValueError(f"elevation angle {alpha} outside [0, 90] degrees")
    if sat_altitude <= 0:
        raise ValueError("satellite altitude must be > 0")
    r_e = CONSTANTS.earth_radius
    h = sat_altitude
    sin_a = math.sin(math.radians(alpha))
    return math.sqrt(r_e ** 2 * sin_a ** 2 + h ** 2 + 2 * h * r_e) - r_e * sin_a


def link_distance(cfg: ScenarioConfig) -> float:
    # HAP sits at nadir; for a LEO the UAV altitude is negligible
    if cfg.edge.node_class == NodeClass.LEO:
        return slant_range_leo(cfg.elevation_angle, cfg.edge.altitude)
    return cfg.edge.altitude - cfg.uav.altitude


def path_loss_db(distance: float, carrier: float, extra_loss: float = 0.0) -> float:
    fspl = 20 * math.log10(4 * math.pi * distance * carrier / CONSTANTS.light_speed)
    return fspl + extra_loss


def snr(eirp: float, gt: float, pl: float, bandwidth: float) -> float:
    """Linear SNR; the only dB-to-linear conversion of the link budget."""
    noise_db = 10 * math.log10(CONSTANTS.boltzmann * bandwidth)
    return 10 ** ((eirp + gt - pl - noise_db) / 10)


def capacity(bandwidth: float, snr: float) -> float:
    # log1p keeps the rate positive for SNRs far below machine epsilon
    return bandwidth * math.log1p(snr) / math.log(2)


def transmission_delay(payload: float, rate: float) -> float:
    if rate <= 0:
        raise UnreachableLinkError(f"link rate {rate} bit/s cannot carry any payload")
    return payload / rate


def propagation_delay(distance: float) -> float:
    return distance / CONSTANTS.light_speed


def link_budget(cfg: ScenarioConfig, direction: LinkDirection) -> LinkBudget:
    """Assemble the UL (UAV -> edge) or DL (edge -> UAV) budget of one UAV.

    Args:
        cfg: validated scenario
        direction: ``LinkDirection.UL`` or ``LinkDirection.DL``

    Returns:
        The budget, with SNR and capacity computed on B = B_T / n
    """
    if direction == LinkDirection.UL:
        tx, rx = cfg.uav, cfg.edge
        carrier, extra = cfg.ul_carrier, cfg.extra_loss_ul
    else:
        tx, rx = cfg.edge, cfg.uav
        carrier, extra = cfg.dl_carrier, cfg.extra_loss_dl

    distance = link_distance(cfg)
    bandwidth = per_uav_bandwidth(cfg)
    pl = path_loss_db(distance, carrier, extra)
    gamma = snr(tx.eirp, rx.gain_to_temp, pl, bandwidth)
    rate = capacity(bandwidth, gamma)
    logger.debug(
        f"{direction} link: d={distance:.1f} m, PL={pl:.2f} dB, SNR={gamma:.4g}, R={rate:.4g} bit/s"
    )
    return LinkBudget(
        direction=direction,
        carrier=carrier,
        distance=distance,
        bandwidth=bandwidth,
        eirp=tx.eirp,
        gain_to_temp=rx.gain_to_temp,
        path_loss=pl,
        snr=gamma,
        capacity=rate,
    )
