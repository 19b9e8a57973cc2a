"""
Run metrics, computed from a trace and nothing else so that a replay
recomputes exactly the same numbers.
"""
import itertools
import math
import os
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from fusion.association import solve_gated

from .trace import parse_lines, read_trace

VEHICLE = 'Vehicle'
PEDESTRIAN = 'Pedestrian'
STATIC = 'StaticObstacle'


@dataclass(frozen=True)
class RunMetrics:
    localization_rmse: Optional[float] = None
    latency_p50: Optional[float] = None
    latency_p99: Optional[float] = None
    id_switches: int = 0
    duplicate_tracks: int = 0
    track_continuity: Optional[float] = None
    min_person_clearance: Optional[float] = None
    warning_lead_time: Optional[float] = None
    missed_conflicts: int = 0
    messages_lost: int = 0
    messages_sent: int = 0

    def as_dict(self):
        return asdict(self)


def compute_metrics(trace):
    """trace is a file path or a sequence of NDJSON lines."""
    if isinstance(trace, (str, os.PathLike)):
        header, ticks = read_trace(trace)
    else:
        header, ticks = parse_lines(list(trace))
    return metrics_from_records(header, ticks)


def match_tick(tick, history, gate):
    """
    Match Confirmed tracks to non-static truth agents, each track against
    the truth at its own last update. Returns (pairs, unmatched, errors)
    with pairs as (track_id, agent_id).
    """
    tracks = [t for t in tick['picture'] if t['status'] == 'Confirmed']
    agent_ids = sorted(a['agent_id'] for a in tick['truth'] if a['class'] != STATIC)
    if not tracks or not agent_ids:
        return [], tracks, []
    costs = np.full((len(tracks), len(agent_ids)), np.inf)
    for i, track in enumerate(tracks):
        truth = history.get(track['last_update'], {})
        for j, agent_id in enumerate(agent_ids):
            if agent_id in truth:
                ax, ay = truth[agent_id]
                costs[i, j] = math.hypot(track['x'] - ax, track['y'] - ay)
    assignment = solve_gated(np.where(np.isfinite(costs), costs, gate * 1e3), gate)
    pairs = [(tracks[i]['track_id'], agent_ids[j]) for i, j in assignment.pairs]
    errors = [costs[i, j] for i, j in assignment.pairs]
    unmatched = [tracks[i] for i in assignment.unmatched_tracks]
    return pairs, unmatched, errors


def metrics_from_records(header, ticks):
    params = header['metrics']
    gate = params['match_gate_m']
    history = {}
    squared = []
    latencies = []
    current = {}
    switches = 0
    duplicates = set()
    matched_ticks = {}
    detected_ticks = {}
    track_owner = {}
    first_warning = {}
    lost = sent = 0
    clearance = None
    bed_id = header.get('bed_agent_id')
    classes = {a['agent_id']: a['class'] for a in header['agents']}
    separations = {}

    for tick in ticks:
        truth = {a['agent_id']: (a['x'], a['y']) for a in tick['truth']}
        history[tick['time']] = truth
        pairs, unmatched, errors = match_tick(tick, history, gate)
        squared.extend(e * e for e in errors)
        for track_id, agent_id in pairs:
            if agent_id in current and current[agent_id] != track_id:
                switches += 1
            current[agent_id] = track_id
            track_owner[track_id] = agent_id
            matched_ticks.setdefault(agent_id, set()).add(tick['index'])
        matched_agents = {agent_id for _, agent_id in pairs}
        for track in unmatched:
            for agent_id in matched_agents:
                ax, ay = truth[agent_id]
                if math.hypot(track['x'] - ax, track['y'] - ay) <= gate:
                    duplicates.add(track['track_id'])
        for detection in tick['detections']:
            if detection.get('agent_id') is not None:
                detected_ticks.setdefault(detection['agent_id'], []).append(tick['index'])

        for message in tick['delivered']:
            if message['type'] == 'perception':
                latencies.append(message['delivery_time'] - message['capture_time'])
        for message in tick['sent']:
            sent += 1
            lost += bool(message['dropped'])

        for event in tick['events']:
            key = frozenset((track_owner.get(event['track_a']), track_owner.get(event['track_b'])))
            if None not in key and len(key) == 2 and key not in first_warning:
                first_warning[key] = event['issued_at']

        if bed_id is not None and bed_id in truth:
            bx, by = truth[bed_id]
            for agent_id, (x, y) in truth.items():
                if classes.get(agent_id) == PEDESTRIAN:
                    gap = math.hypot(x - bx, y - by)
                    clearance = gap if clearance is None else min(clearance, gap)

        for a, b in itertools.combinations(sorted(truth), 2):
            if VEHICLE not in (classes.get(a), classes.get(b)) or STATIC in (classes.get(a), classes.get(b)):
                continue
            gap = math.hypot(truth[a][0] - truth[b][0], truth[a][1] - truth[b][1])
            best = separations.get((a, b))
            if best is None or gap < best[0]:
                separations[(a, b)] = (gap, tick['time'])

    leads = []
    missed = 0
    for (a, b), (gap, instant) in sorted(separations.items()):
        if not gap < params['conflict_radius_m']:
            continue
        issued = first_warning.get(frozenset((a, b)))
        if issued is None or issued > instant:
            missed += 1
        else:
            leads.append((instant - issued) / 1e6)

    covered = matched = 0
    for agent_id, seen in detected_ticks.items():
        first, last = min(seen), max(seen)
        covered += last - first + 1
        matched += len([i for i in matched_ticks.get(agent_id, ()) if first <= i <= last])

    p50 = p99 = None
    if latencies:
        p50, p99 = (float(v) for v in np.percentile(np.array(latencies, dtype=float), [50, 99]))
    return RunMetrics(
            localization_rmse=float(math.sqrt(sum(squared) / len(squared))) if squared else None,
            latency_p50=p50,
            latency_p99=p99,
            id_switches=switches,
            duplicate_tracks=len(duplicates),
            track_continuity=matched / covered if covered else None,
            min_person_clearance=clearance,
            warning_lead_time=min(leads) if leads else None,
            missed_conflicts=missed,
            messages_lost=lost,
            messages_sent=sent,
            )
