"""
Socially-aware lattice planner for the medical bed.

Each candidate shifts the reference path sideways (smoothstep blend) and
drives along the shifted curve with a speed ramp toward a target speed,
braking to rest where the reference path ends.
Candidates are enumerated offset-major, speed-minor; the cheapest
surviving candidate wins and ties keep enumeration order.
"""
import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from django.core.exceptions import ValidationError

from camsim.config import build_config
from geometry.primitives import (Polyline, Pose2, distance_to_polygon_edges,
        micros_to_seconds, point_in_polygon, seconds_to_micros)
from geometry.validators import validate_non_negative, validate_positive

from .proxemics import personal_space_costs, space_for

logger = logging.getLogger(__name__)

# Arc-length resolution of the shifted candidate curves, metres
CURVE_STEP = 0.05


class PlannerError(ValueError):
    pass


@dataclass(frozen=True)
class PlannerConfig:
    max_speed: float
    max_accel: float
    horizon_s: float
    plan_dt_s: float
    lateral_offsets: Tuple[float, ...]
    speeds: Tuple[float, ...]
    lateral_transition_m: float
    boundary_clearance_m: float
    weight_social: float
    weight_path: float
    weight_speed: float
    stop_cost_threshold: float
    sigma_front: float
    sigma_side: float
    sigma_back: float
    r_hard: float
    moving_speed_threshold: float
    yield_range_m: float
    yield_margin_mps: float
    yield_cone_rad: float
    yield_release_m: float
    follow_lookahead_m: float
    reference_path: Tuple[Tuple[float, float], ...] = ()
    boundary: Optional[Tuple[Tuple[float, float], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'lateral_offsets', tuple(float(v) for v in self.lateral_offsets))
        object.__setattr__(self, 'speeds', tuple(float(v) for v in self.speeds))
        object.__setattr__(self, 'reference_path', tuple(tuple(p) for p in self.reference_path))
        if self.boundary is not None:
            object.__setattr__(self, 'boundary', tuple(tuple(p) for p in self.boundary))
        validate_positive(self.max_speed, 'max speed')
        validate_positive(self.max_accel, 'max acceleration')
        validate_positive(self.horizon_s, 'horizon')
        validate_positive(self.plan_dt_s, 'planning step')
        validate_positive(self.lateral_transition_m, 'lateral transition')
        validate_positive(self.follow_lookahead_m, 'follow lookahead')
        for name in ('weight_social', 'weight_path', 'weight_speed', 'boundary_clearance_m', 'r_hard'):
            validate_non_negative(getattr(self, name), name.replace('_', ' '))
        if not self.lateral_offsets or not self.speeds:
            raise ValidationError('the candidate lattice is empty')
        for speed in self.speeds:
            if not 0 <= speed <= self.max_speed:
                raise ValidationError('candidate speed %s outside [0, %s]' % (speed, self.max_speed))
        if len(self.reference_path) < 2:
            raise ValidationError('a reference path needs at least 2 points')

    @classmethod
    def from_settings(cls, reference_path, boundary=None, **overrides):
        return build_config(cls, 'CAM_PLANNER', overrides,
                reference_path=reference_path, boundary=boundary)

    @property
    def steps(self):
        return max(1, int(round(self.horizon_s / self.plan_dt_s)))

    @property
    def polyline(self):
        return _polyline(self.reference_path)


@functools.lru_cache(maxsize=16)
def _polyline(points):
    return Polyline(points)


@dataclass(frozen=True)
class TimedWaypoint:
    time: int
    pose: Pose2
    speed: float


@dataclass(frozen=True)
class PlannedTrajectory:
    waypoints: Tuple[TimedWaypoint, ...]
    chosen_cost: float
    lateral_offset: float = 0.0
    target_speed: float = 0.0
    min_clearance: Optional[float] = None

    @property
    def planned_at(self):
        return self.waypoints[0].time

    def position_at(self, time):
        """Linear interpolation between waypoints; held at both ends."""
        times = [w.time for w in self.waypoints]
        xs = [w.pose.x for w in self.waypoints]
        ys = [w.pose.y for w in self.waypoints]
        return (float(np.interp(time, times, xs)), float(np.interp(time, times, ys)))

    def speed_at(self, time):
        return float(np.interp(time, [w.time for w in self.waypoints], [w.speed for w in self.waypoints]))

    def lateral_offset_at(self, station, polyline):
        """Signed offset of the trajectory from polyline at arc length station; held at both ends."""
        projected = np.array([polyline.project(w.pose.position) for w in self.waypoints])
        stations, first = np.unique(projected[:, 0], return_index=True)
        return float(np.interp(station, stations, projected[first, 1]))

    def as_record(self):
        return {
                'kind': 'trajectory',
                'lateral_offset': self.lateral_offset,
                'target_speed': self.target_speed,
                'cost': self.chosen_cost,
                'min_clearance': self.min_clearance,
                'waypoints': [[w.time, w.pose.x, w.pose.y, w.speed] for w in self.waypoints],
                }


@dataclass(frozen=True)
class Stop:
    issued_at: int
    reason: str = ''

    def as_record(self):
        return {'kind': 'stop', 'reason': self.reason}


@dataclass(frozen=True)
class Candidate:
    lateral_offset: float
    target_speed: float
    waypoints: Tuple[TimedWaypoint, ...] = field(repr=False)
    rejected: Optional[str] = None
    intrusion: float = 0.0
    path_deviation: float = 0.0
    speed_deviation: float = 0.0
    cost: Optional[float] = None
    min_clearance: Optional[float] = None


def _smoothstep(u):
    u = np.clip(u, 0.0, 1.0)
    return u * u * (3.0 - 2.0 * u)


def allowed_speeds(config, speed_cap=None):
    if speed_cap is None:
        return config.speeds
    return tuple(s for s in config.speeds if s <= speed_cap) or (float(speed_cap),)


def _braking_cap(v, remaining, config):
    """
    Fastest next sample from which braking at max_accel still comes to
    rest within ``remaining`` metres.
    """
    dv = config.max_accel * config.plan_dt_s
    disc = dv * dv + 8.0 * config.max_accel * remaining - 4.0 * dv * v
    return max(0.0, 0.5 * (math.sqrt(max(disc, 0.0)) - dv))


def _speed_profile(v0, target, config, stop_within=None):
    dv = config.max_accel * config.plan_dt_s
    speeds = [v0]
    travelled = [0.0]
    for _ in range(config.steps):
        v = speeds[-1]
        wanted = min(v + dv, target) if v < target else max(v - dv, target)
        if stop_within is not None:
            wanted = min(wanted, _braking_cap(v, stop_within - travelled[-1], config))
        # Never brake harder than max_accel, even if that overruns the end
        nxt = max(wanted, v - dv, 0.0)
        speeds.append(nxt)
        travelled.append(travelled[-1] + 0.5 * (v + nxt) * config.plan_dt_s)
    return np.array(speeds), np.array(travelled)


def evaluate_candidates(bed, persons, config, now, speed_cap=None, initial_speed=None):
    """
    Score the whole lattice. Rejected candidates carry a reason and no cost.

    initial_speed replaces the bed track speed as the start of every speed
    profile when the caller knows what the bed was last told to do.
    """
    polyline = config.polyline
    origin = bed.position_at(now)
    if config.boundary is not None and not point_in_polygon(origin, config.boundary):
        raise PlannerError('bed at (%.2f, %.2f) is outside the operating boundary' % origin)
    s0, e0 = polyline.project(origin)
    v0 = min(bed.speed if initial_speed is None else initial_speed, config.max_speed)
    dt_us = seconds_to_micros(config.plan_dt_s)
    times = now + dt_us * np.arange(config.steps + 1)

    reach = config.max_speed * config.horizon_s + 2 * CURVE_STEP
    grid = np.unique(np.clip(s0 + np.arange(0.0, reach + CURVE_STEP, CURVE_STEP), s0, polyline.length))
    base, normals = polyline.sample(grid)
    # Profiles only brake for the end of the reference path, not for the end of the grid
    path_end = grid[-1] >= polyline.length
    fallback_heading = polyline.heading_at(s0)

    predicted = []
    for person in persons:
        centres = np.array([person.position_at(int(t)) for t in times])
        space = space_for(person, now, config)
        predicted.append((centres, space))

    candidates = []
    for offset in config.lateral_offsets:
        lateral = e0 + (offset - e0) * _smoothstep((grid - s0) / config.lateral_transition_m)
        curve = base + lateral[:, None] * normals
        arc = np.concatenate(([0.0], np.cumsum(np.hypot(*np.diff(curve, axis=0).T))))
        for target in allowed_speeds(config, speed_cap):
            speeds, travelled = _speed_profile(v0, target, config, arc[-1] if path_end else None)
            travelled = np.minimum(travelled, arc[-1])
            candidates.append(_score(offset, target, times, speeds, travelled, arc, curve,
                lateral, fallback_heading, predicted, config))
    return candidates


def _score(offset, target, times, speeds, travelled, arc, curve, lateral, fallback_heading,
        predicted, config):
    xs = np.interp(travelled, arc, curve[:, 0])
    ys = np.interp(travelled, arc, curve[:, 1])
    ahead = np.minimum(travelled + CURVE_STEP, arc[-1])
    behind = np.maximum(travelled - CURVE_STEP, 0.0)
    hx = np.interp(ahead, arc, curve[:, 0]) - np.interp(behind, arc, curve[:, 0])
    hy = np.interp(ahead, arc, curve[:, 1]) - np.interp(behind, arc, curve[:, 1])
    headings = np.where(np.hypot(hx, hy) > 1e-9, np.arctan2(hy, hx), fallback_heading)
    waypoints = tuple(TimedWaypoint(int(t), Pose2(float(x), float(y), float(h)), float(v))
            for t, x, y, h, v in zip(times, xs, ys, headings, speeds))
    points = np.stack((xs, ys), axis=1)

    clearance = None
    intrusion = 0.0
    for centres, space in predicted:
        gaps = np.hypot(*(points - centres).T)
        clearance = float(gaps.min()) if clearance is None else min(clearance, float(gaps.min()))
        # The space moves with the person; its shape is fixed at planning time
        shifted = points[1:] - centres[1:] + np.asarray(space.center)
        intrusion = max(intrusion, float(personal_space_costs(space, shifted).max()))

    reason = None
    if clearance is not None and clearance < config.r_hard:
        reason = 'person'
    elif config.boundary is not None:
        for point in points[1:]:
            p = (float(point[0]), float(point[1]))
            if not point_in_polygon(p, config.boundary) or \
                    distance_to_polygon_edges(p, config.boundary) < config.boundary_clearance_m:
                reason = 'boundary'
                break
    candidate = Candidate(offset, target, waypoints, reason, intrusion, min_clearance=clearance,
            path_deviation=float(np.abs(np.interp(travelled[1:], arc, lateral)).mean()),
            speed_deviation=float(((config.max_speed - speeds[1:]) / config.max_speed).mean()))
    if reason is not None:
        return candidate
    cost = config.weight_social * candidate.intrusion + config.weight_path * candidate.path_deviation \
            + config.weight_speed * candidate.speed_deviation
    return Candidate(offset, target, waypoints, None, candidate.intrusion, candidate.path_deviation,
            candidate.speed_deviation, cost, clearance)


def best_candidate(candidates):
    best = None
    for candidate in candidates:
        if candidate.cost is not None and (best is None or candidate.cost < best.cost):
            best = candidate
    return best


def plan(bed, persons, config, now, speed_cap=None, initial_speed=None):
    candidates = evaluate_candidates(bed, persons, config, now, speed_cap, initial_speed)
    best = best_candidate(candidates)
    if best is None:
        logger.info('stop at %d: every candidate is blocked', now)
        return Stop(now, 'blocked')
    if best.cost > config.stop_cost_threshold:
        logger.info('stop at %d: cheapest candidate costs %.2f', now, best.cost)
        return Stop(now, 'cost')
    logger.debug('plan at %d: offset %.2f speed %.2f cost %.3f', now,
            best.lateral_offset, best.target_speed, best.cost)
    return PlannedTrajectory(best.waypoints, best.cost, best.lateral_offset,
            best.target_speed, best.min_clearance)
