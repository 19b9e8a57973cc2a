import logging
import math
from dataclasses import dataclass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class YieldDirective:
    person_track_id: int
    issued_at: int
    speed_cap: float = 0.0

    def as_record(self):
        return {'kind': 'yield', 'person': self.person_track_id, 'speed_cap': self.speed_cap}


def bed_heading(bed, config):
    if bed.speed >= config.moving_speed_threshold:
        vx, vy = bed.velocity
        return math.atan2(vy, vx)
    s, _ = config.polyline.project(bed.position)
    return config.polyline.heading_at(s)


def yield_check(bed, persons, config, now=None):
    """
    A directive for the first person (by track id) coming up fast from
    behind, or None.
    """
    now = bed.last_update if now is None else now
    bx, by = bed.position_at(now)
    bvx, bvy = bed.velocity
    heading = bed_heading(bed, config)
    back = (-math.cos(heading), -math.sin(heading))
    cone = math.cos(config.yield_cone_rad)
    for person in sorted(persons, key=lambda p: p.track_id):
        px, py = person.position_at(now)
        rx, ry = px - bx, py - by
        gap = math.hypot(rx, ry)
        if gap == 0.0 or gap >= config.yield_range_m:
            continue
        if (rx * back[0] + ry * back[1]) / gap < cone:
            continue
        if person.speed <= bed.speed + config.yield_margin_mps:
            continue
        pvx, pvy = person.velocity
        if rx * (pvx - bvx) + ry * (pvy - bvy) >= 0.0:
            continue
        return YieldDirective(person.track_id, now)
    return None


class Yielder(object):
    """
    The yielding latch: a directive stays active until its person is ahead
    of the bed by yield_release_m or the person's track is gone.
    """

    def __init__(self, config):
        self.config = config
        self.active = None

    def update(self, bed, persons, now):
        if self.active is not None:
            person = next((p for p in persons if p.track_id == self.active.person_track_id), None)
            if person is None or self._ahead(bed, person, now) > self.config.yield_release_m:
                logger.info('yield to track %d released at %d', self.active.person_track_id, now)
                self.active = None
        if self.active is None:
            self.active = yield_check(bed, persons, self.config, now)
            if self.active is not None:
                logger.info('yielding to track %d at %d', self.active.person_track_id, now)
        return self.active

    def _ahead(self, bed, person, now):
        heading = bed_heading(bed, self.config)
        (bx, by), (px, py) = bed.position_at(now), person.position_at(now)
        return (px - bx) * math.cos(heading) + (py - by) * math.sin(heading)
