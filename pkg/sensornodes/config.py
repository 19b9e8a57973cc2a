import math
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from geometry.primitives import NodeExtrinsics, seconds_to_micros
from geometry.validators import (validate_non_negative, validate_positive,
        validate_probability, validate_unsigned)


@dataclass(frozen=True)
class SensorNodeConfig:
    """Parametric stand-in for one pole- or ceiling-mounted LiDAR+camera node."""
    node_id: int
    extrinsics: NodeExtrinsics
    fov: float = math.pi
    max_range: float = 60.0
    detection_period: float = 0.1 # seconds
    noise_sigma: float = 0.15
    miss_rate: float = 0.05
    class_accuracy: float = 0.95
    link: str = 'urllc'

    def __post_init__(self):
        validate_unsigned(self.node_id, 16, 'node id')
        validate_positive(self.fov, 'field of view')
        if self.fov > 2 * math.pi + 1e-12:
            raise ValidationError('field of view %s exceeds 2*pi' % self.fov)
        validate_positive(self.max_range, 'max range')
        validate_positive(self.detection_period, 'detection period')
        validate_non_negative(self.noise_sigma, 'noise sigma')
        # A miss rate of exactly 1 is allowed: a node that never reports.
        validate_probability(self.miss_rate, 'miss rate', allow_one=True)
        validate_probability(self.class_accuracy, 'class accuracy', allow_zero=False, allow_one=True)

    @property
    def detection_period_us(self):
        return seconds_to_micros(self.detection_period)

    @property
    def pose(self):
        return self.extrinsics.node_pose
