"""
Parametric object-level detector for one infrastructure node: coverage
sector, hard occlusion by agent disks, Gaussian position noise, misses and
misclassification.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from geometry.primitives import (AgentClass, TWO_PI, segment_intersects_disk,
        to_local)
from netsim.codec import (MAX_RECORDS, CountOverflow, ObjectRecord,
        PerceptionMessage, f32)

# Bearing tolerance at the edge of the sector
_EDGE = 1e-12


@dataclass(frozen=True)
class Detection:
    node_id: int
    local_object_index: int
    class_estimate: AgentClass
    position_global: Tuple[float, float]
    capture_time: int
    position_sigma: float
    # Simulation bookkeeping for the trace; never put on the wire.
    agent_id: Optional[int] = None


def in_coverage(node, point):
    """Range and field-of-view test, ignoring occlusion."""
    lx, ly = to_local(node.extrinsics, point)
    if math.hypot(lx, ly) > node.max_range:
        return False
    if node.fov >= TWO_PI:
        return True
    return abs(math.atan2(ly, lx)) <= node.fov / 2.0 + _EDGE


def visible(node, world, agent):
    target = (agent.pose.x, agent.pose.y)
    if not in_coverage(node, target):
        return False
    origin = node.pose.position
    for other in world.agents:
        if other.agent_id == agent.agent_id:
            continue
        if segment_intersects_disk(origin, target, other.pose.position, other.radius):
            return False
    return True


def sense(node, world, rng):
    """
    One detection frame. Agents are visited in id order and every visible
    agent consumes the same draws (miss, noise pair, class), so the stream
    stays aligned whatever the parameters.
    """
    detections = []
    for agent in sorted(world.agents, key=lambda a: a.agent_id):
        if agent.agent_class == AgentClass.STATIC_OBSTACLE:
            continue
        if not visible(node, world, agent):
            continue
        missed = rng.random() < node.miss_rate
        noise = rng.normal(0.0, node.noise_sigma, size=2)
        correct = rng.random() < node.class_accuracy
        wrong = int(rng.integers(len(AgentClass) - 1))
        if missed:
            continue
        if correct:
            label = agent.agent_class
        else:
            label = [c for c in AgentClass if c != agent.agent_class][wrong]
        detections.append(Detection(
            node_id=node.node_id,
            local_object_index=len(detections),
            class_estimate=label,
            position_global=(agent.pose.x + float(noise[0]), agent.pose.y + float(noise[1])),
            capture_time=world.time,
            position_sigma=node.noise_sigma,
            agent_id=agent.agent_id,
            ))
    return detections


def make_message(node_id, detections, capture_time, seq):
    if len(detections) > MAX_RECORDS:
        raise CountOverflow('%d detections exceed the count field (max %d)' % (len(detections), MAX_RECORDS))
    records = []
    for d in detections:
        if d.capture_time != capture_time:
            raise ValueError('detection captured at %d in a frame for %d' % (d.capture_time, capture_time))
        records.append(ObjectRecord(
            object_index=d.local_object_index,
            class_code=int(d.class_estimate),
            x=float(d.position_global[0]),
            y=float(d.position_global[1]),
            sigma=f32(d.position_sigma),
            ))
    return PerceptionMessage(node_id, seq, capture_time, tuple(records))


def detections_from_message(message):
    """Cloud-side view of a perception message."""
    return [Detection(
                node_id=message.node_id,
                local_object_index=r.object_index,
                class_estimate=AgentClass(r.class_code),
                position_global=(r.x, r.y),
                capture_time=message.capture_time,
                position_sigma=r.sigma)
            for r in message.records]
