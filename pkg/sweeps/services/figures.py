"""Named data grids: one sweep configuration per published result set.

Each metric figure is a regular sweep over full MetricRows, so the autonomy
and delay panels of one configuration share a CSV. ``stability`` is the only
grid that is not a sweep: it tabulates load factors in closed form.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence

import pandas as pd

from offload.constants import NodeClass
from offload.exceptions import SweepError
from offload.services import metrics, scenario
from offload.services.metrics import QueueKind
from sweeps.services.sweep import Axis, build_spec, header_lines, run_sweep, write_csv

logger = logging.getLogger(__name__)

OFFLOAD_FACTORS = [0.0, 0.5, 1.0]
ANTENNA_ELEMENTS = [4, 8, 16, 32, 64, 128]


@dataclass(frozen=True)
class Figure:
    id: str
    description: str
    base: Dict[str, Any] = field(default_factory=dict)
    axes: List[Axis] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)


FIGURES = {
    f.id: f for f in [
        Figure(
            id='stability',
            description='Load factor of the local and edge queues',
        ),
        Figure(
            id='hap-autonomy',
            description='HAP edge: autonomy and delay vs UAV antenna elements',
            base={'edge_class': NodeClass.HAP, 'uav_gpu_efficiency': 50, 'num_uavs': 20, 'frame_rate': 10},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('uav_antenna_elements', ANTENNA_ELEMENTS)],
        ),
        Figure(
            id='hap-delay',
            description='HAP edge: delay vs frame rate',
            base={'edge_class': NodeClass.HAP, 'uav_antenna_elements': 8, 'uav_gpu_efficiency': 50, 'num_uavs': 15},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('frame_rate', list(range(1, 20)))],
        ),
        Figure(
            id='hap-efficiency',
            description='HAP edge: autonomy vs UAV GPU efficiency',
            base={'edge_class': NodeClass.HAP, 'uav_antenna_elements': 8, 'num_uavs': 20, 'frame_rate': 10},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('uav_gpu_efficiency', [30, 50, 70, 90])],
        ),
        Figure(
            id='hap-nuavs',
            description='HAP edge: autonomy and delay vs swarm size',
            base={'edge_class': NodeClass.HAP, 'uav_antenna_elements': 8, 'uav_gpu_efficiency': 50, 'frame_rate': 10},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('num_uavs', list(range(5, 55, 5)))],
        ),
        Figure(
            id='leo-autonomy',
            description='LEO edge: autonomy vs UAV antenna elements',
            base={'edge_class': NodeClass.LEO, 'elevation_angle': 70, 'num_uavs': 20},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('uav_antenna_elements', ANTENNA_ELEMENTS)],
        ),
        Figure(
            id='leo-delay',
            description='LEO edge: delay vs UAV antenna elements',
            base={'edge_class': NodeClass.LEO, 'elevation_angle': 70, 'num_uavs': 20},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('uav_antenna_elements', ANTENNA_ELEMENTS)],
        ),
        Figure(
            id='leo-elevation',
            description='LEO edge: autonomy and delay vs elevation angle',
            base={'edge_class': NodeClass.LEO, 'uav_antenna_elements': 64, 'num_uavs': 20},
            axes=[('offload_factor', OFFLOAD_FACTORS), ('elevation_angle', [10, 30, 50, 70, 90])],
        ),
        Figure(
            id='edge-energy',
            description='Edge server energy vs flight time',
            base={'offload_factor': 1, 'frame_rate': 10, 'uav_antenna_elements': 8},
            axes=[
                ('edge_class', [NodeClass.HAP, NodeClass.LEO]),
                ('num_uavs', [5, 10, 15, 20]),
                ('flight_time', [10, 20, 30, 40, 50, 60]),
            ],
            assumptions=['assumption: offload_factor = 1 for every edge-energy bar'],
        ),
    ]
}

STABILITY_ETAS = OFFLOAD_FACTORS
STABILITY_LOCAL_RATES = [5, 10, 15, 20, 25, 30]
STABILITY_SWARM_SIZES = [5, 10, 15, 20, 25, 30]
STABILITY_EDGE_RATES = [5, 10, 15, 20]


def get_figure(figure_id: str) -> Figure:
    try:
        return FIGURES[figure_id]
    except KeyError:
        raise SweepError(f"unknown figure '{figure_id}'; choose one of {', '.join(FIGURES)}") from None


def stability_frame(cfg: scenario.ScenarioConfig) -> pd.DataFrame:
    """Local rows (n blank) then edge rows, each with a ``stable`` flag."""
    records = []
    for eta in STABILITY_ETAS:
        point = replace(cfg, offload_factor=eta)
        local = metrics.stability_map(point, [cfg.num_uavs], STABILITY_LOCAL_RATES, QueueKind.LOCAL)
        for r, rho in zip(STABILITY_LOCAL_RATES, local[0]):
            records.append({'eta': eta, 'queue': str(QueueKind.LOCAL), 'n': None, 'r': r, 'load_factor': rho})
    for eta in STABILITY_ETAS:
        point = replace(cfg, offload_factor=eta)
        edge = metrics.stability_map(point, STABILITY_SWARM_SIZES, STABILITY_EDGE_RATES, QueueKind.EDGE)
        for i, n in enumerate(STABILITY_SWARM_SIZES):
            for j, r in enumerate(STABILITY_EDGE_RATES):
                records.append({'eta': eta, 'queue': str(QueueKind.EDGE), 'n': n, 'r': r, 'load_factor': edge[i, j]})
    frame = pd.DataFrame.from_records(records, columns=['eta', 'queue', 'n', 'r', 'load_factor'])
    frame['n'] = frame['n'].astype('Int64')
    frame['load_factor'] = frame['load_factor'].astype(float)
    frame['stable'] = frame['load_factor'] < 1
    return frame


def figure_command(
    figure_id: str,
    output,
    overrides: Optional[Mapping[str, Any]] = None,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """Regenerate the data grid behind a named figure.

    Args:
        figure_id: key of ``FIGURES``
        output: CSV path
        overrides: flat config keys applied on top of the figure's base
        workers: sweep pool size

    Returns:
        The DataFrame written to ``output``
    """
    figure = get_figure(figure_id)
    base_values = {**figure.base, **(overrides or {})}
    logger.info(f"Generating figure {figure.id}: {figure.description}")

    if figure.id == 'stability':
        cfg = scenario.validate_values(base_values)
        frame = stability_frame(cfg)
        header = header_lines(scenario.config_digest(cfg), [f"figure: {figure.id}", *figure.assumptions])
        write_csv(frame, output, header)
        return frame

    spec = build_spec(
        base_values,
        figure.axes,
        output,
        header=[f"figure: {figure.id}", *figure.assumptions],
    )
    return run_sweep(spec, workers=workers)


def figure_ids() -> Sequence[str]:
    return list(FIGURES)
