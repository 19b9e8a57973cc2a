import csv
import logging
import math

from .metrics import metrics_from_records
from .trace import read_trace

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('time_s', 'bed_x', 'bed_y', 'bed_heading', 'chosen_offset',
        'min_clearance', 'directive', 'tracks')


def replay(trace_path, csv_path=None):
    """Recompute a run's metrics from its trace, optionally exporting a per-tick CSV."""
    header, ticks = read_trace(trace_path)
    metrics = metrics_from_records(header, ticks)
    if csv_path is not None:
        write_csv(header, ticks, csv_path)
        logger.info('wrote %d row(s) to %s', len(ticks), csv_path)
    return metrics


def tick_row(header, tick):
    bed_id = header.get('bed_agent_id')
    classes = {a['agent_id']: a['class'] for a in header['agents']}
    bed = next((a for a in tick['truth'] if a['agent_id'] == bed_id), None)
    row = {column: '' for column in CSV_COLUMNS}
    row['time_s'] = tick['time'] / 1e6
    row['tracks'] = len(tick['picture'])
    if bed is not None:
        row.update(bed_x=bed['x'], bed_y=bed['y'], bed_heading=bed['heading'])
        gaps = [math.hypot(a['x'] - bed['x'], a['y'] - bed['y']) for a in tick['truth']
                if classes.get(a['agent_id']) == 'Pedestrian']
        if gaps:
            row['min_clearance'] = min(gaps)
    plan = tick.get('plan')
    if plan is not None and plan['kind'] == 'trajectory':
        row['chosen_offset'] = plan['lateral_offset']
    if tick.get('directive') is not None:
        row['directive'] = tick['directive']['kind']
    elif plan is not None and plan['kind'] == 'stop':
        row['directive'] = 'stop'
    return row


def write_csv(header, ticks, path):
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for tick in ticks:
            writer.writerow(tick_row(header, tick))
