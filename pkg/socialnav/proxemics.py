"""
Proxemic personal space: an asymmetric Gaussian, elongated along the
person's direction of motion.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from django.core.exceptions import ValidationError

from geometry.validators import validate_positive


@dataclass(frozen=True)
class PersonalSpace:
    center: Tuple[float, float]
    heading: Optional[float]
    sigma_front: float = 1.2
    sigma_side: float = 0.6
    sigma_back: float = 0.6

    def __post_init__(self):
        validate_positive(self.sigma_front, 'front sigma')
        validate_positive(self.sigma_side, 'side sigma')
        validate_positive(self.sigma_back, 'back sigma')
        if self.sigma_front < self.sigma_back:
            raise ValidationError('front sigma %s is smaller than back sigma %s'
                    % (self.sigma_front, self.sigma_back))


def personal_space_cost(space, point):
    """1 at the centre, falling off as exp(-d^2/2) in scaled distance."""
    return float(personal_space_costs(space, np.asarray(point, dtype=float)[None, :])[0])


def personal_space_costs(space, points):
    points = np.asarray(points, dtype=float)
    dx = points[:, 0] - space.center[0]
    dy = points[:, 1] - space.center[1]
    if space.heading is None:
        d2 = (dx * dx + dy * dy) / space.sigma_side ** 2
    else:
        c, s = math.cos(space.heading), math.sin(space.heading)
        along = c * dx + s * dy
        across = -s * dx + c * dy
        longitudinal = np.where(along >= 0.0, space.sigma_front, space.sigma_back)
        d2 = (along / longitudinal) ** 2 + (across / space.sigma_side) ** 2
    return np.exp(-0.5 * d2)


def space_for(track, time, config):
    """Personal space of a tracked person, extrapolated to the given time."""
    vx, vy = track.velocity
    heading = math.atan2(vy, vx) if track.speed >= config.moving_speed_threshold else None
    return PersonalSpace(track.position_at(time), heading,
            config.sigma_front, config.sigma_side, config.sigma_back)
