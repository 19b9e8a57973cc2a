"""
Seeded latency/jitter/loss link emulation and the discrete-event delivery
queue that serializes everything crossing the emulated 5G network.
"""
import heapq
import itertools
import logging
from collections import defaultdict, deque
from dataclasses import dataclass, replace
from typing import Any, Optional

from django.conf import settings
from django.core.exceptions import ValidationError

from geometry.validators import validate_probability, validate_unsigned

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkProfile:
    name: str
    base_latency_us: int
    jitter_us: int = 0
    loss_probability: float = 0.0
    reorder_allowed: bool = False

    def __post_init__(self):
        validate_unsigned(self.base_latency_us, 64, 'base latency')
        validate_unsigned(self.jitter_us, 64, 'jitter')
        # A loss probability of exactly 1 is accepted for dead links.
        validate_probability(self.loss_probability, 'loss probability', allow_one=True)

    @classmethod
    def from_settings(cls, name, **overrides):
        try:
            values = dict(settings.CAM_LINK_PROFILES[name])
        except KeyError:
            raise ValidationError('%s is not a known link profile' % name)
        values.update(overrides)
        return cls(name=name, **values)

    @property
    def latency_bounds(self):
        return (max(0, self.base_latency_us - self.jitter_us), self.base_latency_us + self.jitter_us)


@dataclass(frozen=True)
class InTransit:
    message: Any
    sender: tuple
    send_time: int
    delivery_time: Optional[int]
    dropped: bool = False
    reorder_allowed: bool = False

    @property
    def latency(self):
        if self.dropped:
            return None
        return self.delivery_time - self.send_time


def send(message, link, now, rng, sender=('node', 0)):
    """Push one message through a link profile. The loss draw comes first."""
    if rng.random() < link.loss_probability:
        return InTransit(message, sender, now, None, dropped=True,
                reorder_allowed=link.reorder_allowed)
    jitter = int(rng.integers(-link.jitter_us, link.jitter_us, endpoint=True)) if link.jitter_us else 0
    delivery = max(now, now + link.base_latency_us + jitter)
    return InTransit(message, sender, now, delivery, reorder_allowed=link.reorder_allowed)


class _Entry(object):
    __slots__ = ('order', 'transit', 'ready')

    def __init__(self, order, transit):
        self.order = order
        self.transit = transit
        self.ready = False


class DeliveryQueue(object):
    """
    Single-writer discrete-event queue. Messages come out of poll() in
    delivery-time order; senders on links without reordering never see a
    later send overtake an earlier one (the later one is held and released
    with its predecessor).
    """

    def __init__(self):
        self._heap = []
        self._order = itertools.count()
        self._fifo = defaultdict(deque)
        self._held = 0
        self._clock = None
        self.sent = 0
        self.delivered = 0
        self.dropped = 0

    def __len__(self):
        return self.pending

    @property
    def pending(self):
        return len(self._heap) + self._held

    def push(self, transit):
        self.sent += 1
        if transit.dropped:
            self.dropped += 1
            logger.debug('message from %s dropped at %d', transit.sender, transit.send_time)
            return
        entry = _Entry(next(self._order), transit)
        heapq.heappush(self._heap, (transit.delivery_time, entry.order, entry))
        if not transit.reorder_allowed:
            self._fifo[transit.sender].append(entry)

    def poll(self, now):
        if self._clock is not None and now < self._clock:
            raise ValueError('poll time %d is before the previous poll at %d' % (now, self._clock))
        self._clock = now
        released = []
        while self._heap and self._heap[0][0] <= now:
            due, _, entry = heapq.heappop(self._heap)
            transit = entry.transit
            if transit.reorder_allowed:
                released.append((due, entry.order, transit))
                continue
            entry.ready = True
            self._held += 1
            fifo = self._fifo[transit.sender]
            while fifo and fifo[0].ready:
                head = fifo.popleft()
                self._held -= 1
                effective = head.transit
                if effective.delivery_time < due:
                    effective = replace(effective, delivery_time=due)
                released.append((due, head.order, effective))
        released.sort(key=lambda item: (item[0], item[1]))
        self.delivered += len(released)
        return [transit for _, _, transit in released]
