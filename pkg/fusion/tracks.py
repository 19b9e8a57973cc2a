import enum
import math
from dataclasses import dataclass, field
from typing import FrozenSet, Tuple

import numpy as np
from django.core.exceptions import ValidationError

from camsim.config import build_config
from geometry.primitives import AgentClass, micros_to_seconds, seconds_to_micros
from geometry.validators import validate_non_negative, validate_positive


class TrackStatus(str, enum.Enum):
    TENTATIVE = 'Tentative'
    CONFIRMED = 'Confirmed'
    COASTING = 'Coasting'


@dataclass(frozen=True)
class FusionConfig:
    gate_m: float
    accel_psd: float
    initial_velocity_sigma: float
    min_measurement_sigma: float
    confirm_threshold: int
    miss_threshold: int
    drop_timeout_s: float
    staleness_window_s: float
    class_vote_window: int

    def __post_init__(self):
        validate_positive(self.gate_m, 'gate')
        validate_non_negative(self.accel_psd, 'acceleration spectral density')
        validate_positive(self.initial_velocity_sigma, 'initial velocity sigma')
        validate_positive(self.min_measurement_sigma, 'minimum measurement sigma')
        validate_positive(self.drop_timeout_s, 'drop timeout')
        validate_non_negative(self.staleness_window_s, 'staleness window')
        for name in ('confirm_threshold', 'miss_threshold', 'class_vote_window'):
            if int(getattr(self, name)) < 1:
                raise ValidationError('%s must be at least 1' % name)

    @classmethod
    def from_settings(cls, **overrides):
        return build_config(cls, 'CAM_FUSION', overrides)

    @property
    def drop_timeout_us(self):
        return seconds_to_micros(self.drop_timeout_s)

    @property
    def staleness_window_us(self):
        return seconds_to_micros(self.staleness_window_s)


@dataclass(frozen=True, eq=False)
class Track:
    track_id: int
    agent_class: AgentClass
    state: np.ndarray # (x, y, vx, vy)
    covariance: np.ndarray # 4x4
    last_update: int
    status: TrackStatus = TrackStatus.TENTATIVE
    hit_count: int = 1
    miss_count: int = 0
    contributing_nodes: FrozenSet[int] = field(default_factory=frozenset)
    class_votes: Tuple[int, ...] = ()

    @property
    def position(self):
        return (float(self.state[0]), float(self.state[1]))

    @property
    def velocity(self):
        return (float(self.state[2]), float(self.state[3]))

    @property
    def speed(self):
        return math.hypot(self.state[2], self.state[3])

    def position_at(self, time):
        """Constant-velocity extrapolation without touching the covariance."""
        dt = micros_to_seconds(time - self.last_update)
        return (float(self.state[0] + self.state[2] * dt), float(self.state[1] + self.state[3] * dt))

    def as_record(self):
        return {
                'track_id': self.track_id,
                'class': self.agent_class.label,
                'status': self.status.value,
                'x': float(self.state[0]),
                'y': float(self.state[1]),
                'vx': float(self.state[2]),
                'vy': float(self.state[3]),
                'last_update': self.last_update,
                'nodes': sorted(self.contributing_nodes),
                }


@dataclass(frozen=True)
class GlobalPicture:
    time: int
    tracks: Tuple[Track, ...] = ()

    def confirmed(self):
        return [t for t in self.tracks if t.status == TrackStatus.CONFIRMED]

    def of_class(self, agent_class):
        return [t for t in self.tracks if t.agent_class == agent_class]


@dataclass(frozen=True)
class PictureDelta:
    time: int
    updated: Tuple[int, ...] = ()
    spawned: Tuple[int, ...] = ()
    dropped: Tuple[int, ...] = ()
    stale: bool = False
