import factory
import numpy as np

from geometry.primitives import AgentClass
from sensornodes.detection import Detection

from .tracks import Track, TrackStatus


class TrackFactory(factory.Factory):
    class Meta:
        model = Track

    track_id = factory.Sequence(lambda n: n + 1)
    agent_class = AgentClass.PEDESTRIAN
    state = factory.LazyFunction(lambda: np.zeros(4))
    covariance = factory.LazyFunction(lambda: np.eye(4))
    last_update = 0
    status = TrackStatus.CONFIRMED
    hit_count = 3


class DetectionFactory(factory.Factory):
    class Meta:
        model = Detection

    node_id = 1
    local_object_index = factory.Sequence(lambda n: n)
    class_estimate = AgentClass.PEDESTRIAN
    position_global = (0.0, 0.0)
    capture_time = 0
    position_sigma = 0.1


def track_at(x, y, vx=0.0, vy=0.0, **kwargs):
    return TrackFactory(state=np.array([x, y, vx, vy], dtype=float), **kwargs)
