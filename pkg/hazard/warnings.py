"""
Warning delivery to subscribed traffic participants over the emulated
network.
"""
import enum
import logging
from dataclasses import dataclass

import numpy as np

from netsim.codec import WarningMessage
from netsim.links import send

logger = logging.getLogger(__name__)

SUBSCRIBER_STREAM = 3


class SubscriberKind(str, enum.Enum):
    CONNECTED_VEHICLE = 'ConnectedVehicle'
    PHONE_APP = 'PhoneApp'


@dataclass(frozen=True)
class Subscriber:
    subscriber_id: int
    kind: SubscriberKind
    link: str


def warning_for(event, subscriber):
    return WarningMessage(
            subscriber_id=subscriber.subscriber_id,
            event_id=event.event_id,
            track_a=event.track_a,
            track_b=event.track_b,
            time_to_conflict=event.time_to_conflict,
            min_distance=event.min_distance,
            issued_at=event.issued_at,
            )


class Dispatcher(object):
    """
    Sends one warning per subscriber through the subscriber's link into the
    shared delivery queue. Each subscriber draws from its own stream.
    """

    def __init__(self, links, queue, seed, capture=None):
        self.links = links
        self.queue = queue
        self.capture = capture
        self._seed = seed
        self._rngs = {}

    def _rng(self, subscriber_id):
        if subscriber_id not in self._rngs:
            self._rngs[subscriber_id] = np.random.default_rng([self._seed, SUBSCRIBER_STREAM, subscriber_id])
        return self._rngs[subscriber_id]

    def dispatch(self, event, subscribers, now):
        sent = []
        for subscriber in subscribers:
            message = warning_for(event, subscriber)
            if self.capture is not None:
                self.capture.write(message)
            transit = send(message, self.links[subscriber.link], now,
                    self._rng(subscriber.subscriber_id),
                    sender=('subscriber', subscriber.subscriber_id))
            self.queue.push(transit)
            sent.append(transit)
        if sent:
            logger.info('event %d dispatched to %d subscriber(s)', event.event_id, len(sent))
        return sent
