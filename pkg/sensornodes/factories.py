import math

import factory

from geometry.primitives import NodeExtrinsics, Pose2

from .config import SensorNodeConfig


class SensorNodeConfigFactory(factory.Factory):
    class Meta:
        model = SensorNodeConfig

    node_id = factory.Sequence(lambda n: n + 1)
    extrinsics = factory.LazyFunction(lambda: NodeExtrinsics(Pose2(0.0, 0.0, 0.0)))
    fov = math.pi
    max_range = 50.0
    detection_period = 0.1
    noise_sigma = 0.0
    miss_rate = 0.0
    class_accuracy = 1.0


def node_at(x, y, heading=0.0, **kwargs):
    return SensorNodeConfigFactory(extrinsics=NodeExtrinsics(Pose2(x, y, heading)), **kwargs)
