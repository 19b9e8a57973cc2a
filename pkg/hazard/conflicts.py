"""
Constant-velocity closest-approach conflict prediction between fused
tracks, and the scanner that turns each picture into fresh events.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional

from camsim.config import build_config
from geometry.primitives import AgentClass, micros_to_seconds, seconds_to_micros
from geometry.validators import validate_non_negative, validate_positive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HazardConfig:
    conflict_radius_m: float
    horizon_s: float
    re_alert_delta_s: float
    warn_lead_s: float

    def __post_init__(self):
        validate_positive(self.conflict_radius_m, 'conflict radius')
        validate_positive(self.horizon_s, 'horizon')
        validate_non_negative(self.re_alert_delta_s, 're-alert delta')
        validate_non_negative(self.warn_lead_s, 'warning lead')

    @classmethod
    def from_settings(cls, **overrides):
        return build_config(cls, 'CAM_HAZARD', overrides)


@dataclass(frozen=True)
class ConflictEvent:
    event_id: int
    track_a: int
    track_b: int
    time_to_conflict: float
    min_distance: float
    issued_at: int
    # Absolute instant of closest approach, microseconds
    conflict_at: Optional[int] = None

    def as_record(self):
        return {
                'event_id': self.event_id,
                'track_a': self.track_a,
                'track_b': self.track_b,
                'time_to_conflict': self.time_to_conflict,
                'min_distance': self.min_distance,
                'issued_at': self.issued_at,
                'conflict_at': self.conflict_at,
                }


def _aligned(a, b):
    t0 = max(a.last_update, b.last_update)
    (ax, ay), (bx, by) = a.position_at(t0), b.position_at(t0)
    (avx, avy), (bvx, bvy) = a.velocity, b.velocity
    return t0, (bx - ax, by - ay), (bvx - avx, bvy - avy)


def closest_approach(a, b, horizon):
    """(t*, d(t*)) with t* measured from the later of the two updates."""
    _, (px, py), (vx, vy) = _aligned(a, b)
    vv = vx * vx + vy * vy
    if vv < 1e-12:
        t_star = 0.0
    else:
        t_star = min(max(-(px * vx + py * vy) / vv, 0.0), horizon)
    return t_star, math.hypot(px + vx * t_star, py + vy * t_star)


def predict_conflict(a, b, horizon, conflict_radius, issued_at=None, event_id=0):
    t_star, d_min = closest_approach(a, b, horizon)
    if not d_min < conflict_radius:
        return None
    t0, (px, py), (vx, vy) = _aligned(a, b)
    pp = px * px + py * py
    if pp < conflict_radius ** 2:
        ttc = 0.0
    else:
        vv = vx * vx + vy * vy
        pv = px * vx + py * vy
        disc = max(pv * pv - vv * (pp - conflict_radius ** 2), 0.0)
        ttc = max((-pv - math.sqrt(disc)) / vv, 0.0)
    return ConflictEvent(
            event_id=event_id,
            track_a=min(a.track_id, b.track_id),
            track_b=max(a.track_id, b.track_id),
            time_to_conflict=ttc,
            min_distance=d_min,
            issued_at=t0 if issued_at is None else issued_at,
            conflict_at=t0 + seconds_to_micros(t_star),
            )


class ConflictScanner(object):
    """Owns the per-pair dedup table and the event id sequence."""

    def __init__(self, config=None):
        self.config = config or HazardConfig.from_settings()
        self._last = {}
        self._next_id = 1

    def scan(self, picture, now=None):
        now = picture.time if now is None else now
        config = self.config
        confirmed = picture.confirmed()
        events = []
        for a, b in itertools.combinations(confirmed, 2):
            if AgentClass.VEHICLE not in (a.agent_class, b.agent_class):
                continue
            event = predict_conflict(a, b, config.horizon_s, config.conflict_radius_m, issued_at=now)
            if event is None:
                continue
            key = (event.track_a, event.track_b)
            previous = self._last.get(key)
            if previous is not None and previous.conflict_at >= now and \
                    abs(micros_to_seconds(event.conflict_at - previous.conflict_at)) <= config.re_alert_delta_s:
                continue
            event = ConflictEvent(self._next_id, event.track_a, event.track_b,
                    event.time_to_conflict, event.min_distance, now, event.conflict_at)
            self._next_id += 1
            self._last[key] = event
            events.append(event)
            logger.info('conflict %d between tracks %d and %d: ttc %.2fs, min distance %.2fm',
                    event.event_id, event.track_a, event.track_b, event.time_to_conflict, event.min_distance)
        return events
