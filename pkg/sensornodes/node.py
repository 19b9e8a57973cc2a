import logging

import numpy as np

from netsim.codec import seq_next

from .detection import make_message, sense

logger = logging.getLogger(__name__)

SENSING_STREAM = 1


class NodeRuntime(object):
    """
    Mutable per-node state for a run: the node's own random stream, the
    next capture instant and the next sequence number.
    """

    def __init__(self, config, seed, first_seq=0):
        self.config = config
        self.rng = np.random.default_rng([seed, SENSING_STREAM, config.node_id])
        self.next_due = 0
        self.next_seq = first_seq

    @property
    def node_id(self):
        return self.config.node_id

    def due(self, now):
        return now >= self.next_due

    def capture(self, world):
        """Sense once and package the frame. Advances the schedule and seq."""
        detections = sense(self.config, world, self.rng)
        message = make_message(self.node_id, detections, world.time, self.next_seq)
        self.next_seq = seq_next(self.next_seq)
        self.next_due += self.config.detection_period_us
        logger.debug('node %d captured %d object(s) at %d', self.node_id, len(detections), world.time)
        return detections, message
