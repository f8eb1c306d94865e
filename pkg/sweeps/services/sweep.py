"""Parameter sweeps over scenario keys, written as CSV.

Every grid point is the base mapping plus that point's axis values,
re-validated through the scenario serializer. Rows come out in the
lexicographic order of the axes no matter how the worker pool schedules them.
"""
import itertools
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import pandas as pd
from constance import config

from config import __version__
from offload.exceptions import SweepError
from offload.serializers import ScenarioConfigSerializer
from offload.services import metrics, scenario
from offload.services.metrics import MetricRow
from offload.services.scenario import ScenarioConfig

logger = logging.getLogger(__name__)

UNSTABLE = 'unstable'

# Config keys every row already carries; other axes get a column of their own
ROW_KEYS = frozenset({
    'edge_class', 'offload_factor', 'num_uavs', 'frame_rate',
    'uav_antenna_elements', 'elevation_angle', 'uav_gpu_efficiency',
})

METRIC_COLUMNS = [
    'edge_class', 'offload_factor', 'num_uavs', 'frame_rate', 'antenna_elements',
    'elevation_angle', 'uav_gpu_efficiency', 'flight_time_s', 'bandwidth_hz',
    'load_local', 'load_edge', 'local_delay_s', 'edge_delay_s', 'avg_delay_s', 'autonomy',
    'uav_movement_j', 'uav_processing_j', 'uav_offloading_j', 'uav_total_j',
    'edge_processing_j', 'edge_offloading_j', 'edge_total_j',
    'uav_capacity_j', 'edge_capacity_j', 'uav_endurance_s', 'edge_utilisation',
    'ul_snr_db', 'dl_snr_db', 'ul_rate_bps', 'dl_rate_bps',
]

Axis = Tuple[str, List[Any]]


@dataclass(frozen=True)
class SweepSpec:
    base: ScenarioConfig
    base_values: Mapping[str, Any]
    axes: Sequence[Axis]
    output: Path
    header: Sequence[str] = field(default_factory=tuple)

    def size(self) -> int:
        return math.prod(len(values) for _, values in self.axes)


def parse_axis_value(raw: str) -> Any:
    """``"20"`` -> 20, ``"0.5"`` -> 0.5, anything that is not JSON stays a string."""
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw.strip()


def parse_axis(item: str) -> Axis:
    """Parse ``field=v1,v2,...`` as given to ``--axis``."""
    key, sep, values = item.partition('=')
    key = key.strip()
    if not sep or not key:
        raise SweepError(f"axis '{item}' is not of the form field=v1,v2,...")
    parsed = [parse_axis_value(v) for v in values.split(',') if v.strip()]
    if not parsed:
        raise SweepError(f"axis '{key}' has no values")
    return key, parsed


def build_spec(
    base_values: Mapping[str, Any],
    axes: Sequence[Axis],
    output,
    header: Sequence[str] = (),
    row_cap: Optional[int] = None,
) -> SweepSpec:
    """Validate the base scenario and the axes and assemble a ``SweepSpec``.

    Raises:
        SweepError: empty axes, unknown or repeated field, empty value list, cap exceeded
        rest_framework.exceptions.ValidationError: invalid base scenario
    """
    if not axes:
        raise SweepError("a sweep needs at least one axis")
    known = set(ScenarioConfigSerializer().fields)
    names = [name for name, _ in axes]
    for name, values in axes:
        if name not in known:
            raise SweepError(f"unknown axis field '{name}'")
        if not values:
            raise SweepError(f"axis '{name}' has no values")
    if len(set(names)) != len(names):
        raise SweepError(f"repeated axis field in {', '.join(names)}")

    spec = SweepSpec(
        base=scenario.validate_values(base_values),
        base_values=dict(base_values),
        axes=[(name, list(values)) for name, values in axes],
        output=Path(output),
        header=tuple(header),
    )
    cap = config.SWEEP_ROW_CAP if row_cap is None else row_cap
    if spec.size() > cap:
        raise SweepError(f"sweep has {spec.size()} rows, above the cap of {cap}")
    return spec


def grid_points(axes: Sequence[Axis]) -> List[Dict[str, Any]]:
    names = [name for name, _ in axes]
    return [dict(zip(names, combo)) for combo in itertools.product(*(values for _, values in axes))]


def _delay(value: Optional[float]):
    return UNSTABLE if value is None else value


def row_record(row: MetricRow) -> Dict[str, Any]:
    """Flatten a MetricRow into the documented CSV columns."""
    return {
        'edge_class': row.edge_class,
        'offload_factor': row.offload_factor,
        'num_uavs': row.num_uavs,
        'frame_rate': row.frame_rate,
        'antenna_elements': row.antenna_elements,
        'elevation_angle': row.elevation_angle,
        'uav_gpu_efficiency': row.uav_gpu_efficiency,
        'flight_time_s': row.flight_time,
        'bandwidth_hz': row.bandwidth,
        'load_local': row.load_local,
        'load_edge': row.load_edge,
        'local_delay_s': _delay(row.local_delay),
        'edge_delay_s': _delay(row.edge_delay),
        'avg_delay_s': _delay(row.avg_delay),
        'autonomy': row.autonomy,
        'uav_movement_j': row.uav_energy.movement,
        'uav_processing_j': row.uav_energy.processing,
        'uav_offloading_j': row.uav_energy.offloading,
        'uav_total_j': row.uav_energy.total,
        'edge_processing_j': row.edge_energy.processing,
        'edge_offloading_j': row.edge_energy.offloading,
        'edge_total_j': row.edge_energy.total,
        'uav_capacity_j': row.uav_capacity.capacity,
        'edge_capacity_j': row.edge_capacity.capacity,
        'uav_endurance_s': row.uav_endurance,
        'edge_utilisation': row.edge_utilisation,
        'ul_snr_db': row.uplink.snr_db,
        'dl_snr_db': row.downlink.snr_db,
        'ul_rate_bps': row.uplink.capacity,
        'dl_rate_bps': row.downlink.capacity,
    }


def extra_columns(axes: Sequence[Axis]) -> List[str]:
    return [name for name, _ in axes if name not in ROW_KEYS]


def header_lines(digest: str, extra: Sequence[str] = ()) -> List[str]:
    return [f"ntn-offload-sim {__version__}", f"config_sha256: {digest}", *extra]


def write_csv(frame: pd.DataFrame, path, header: Sequence[str]) -> Path:
    """Write ``#``-prefixed header lines followed by the CSV body."""
    path = Path(path)
    if path.parent != Path('.'):
        path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', encoding='utf-8', newline='') as f:
        for line in header:
            f.write(f"# {line}\n")
        frame.to_csv(f, index=False, lineterminator='\n')
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> pd.DataFrame:
    """Evaluate every grid point and write one CSV row per point.

    Args:
        spec: validated sweep
        workers: pool size; ``SWEEP_WORKERS`` from constance when omitted

    Returns:
        The DataFrame that was written to ``spec.output``
    """
    points = grid_points(spec.axes)
    workers = workers or config.SWEEP_WORKERS
    logger.info(f"Sweeping {len(points)} points over {', '.join(n for n, _ in spec.axes)} with {workers} workers")

    def evaluate(point):
        return metrics.evaluate(scenario.with_overrides(spec.base_values, point))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(evaluate, points))

    extra = extra_columns(spec.axes)
    records = []
    for point, row in zip(points, rows):
        record = {name: point[name] for name in extra}
        record.update(row_record(row))
        records.append(record)
    frame = pd.DataFrame.from_records(records, columns=[*extra, *METRIC_COLUMNS])

    header = header_lines(scenario.config_digest(spec.base), spec.header)
    header.append("axes: " + "; ".join(f"{name}={','.join(map(str, values))}" for name, values in spec.axes))
    write_csv(frame, spec.output, header)
    return frame
