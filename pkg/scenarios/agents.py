import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from django.core.exceptions import ValidationError

from geometry.primitives import AgentClass, Pose2, micros_to_seconds, seconds_to_micros
from geometry.validators import validate_non_negative, validate_positive, validate_unsigned


class Behavior(str, enum.Enum):
    FOLLOW_PATH = 'FollowPath'
    STATIONARY = 'Stationary'
    SCRIPTED = 'Scripted'
    PLANNED = 'Planned'


@dataclass(frozen=True)
class Agent:
    agent_id: int
    agent_class: AgentClass
    pose: Pose2
    radius: float
    speed: float = 0.0
    path: Tuple[Tuple[float, float], ...] = ()
    behavior: Behavior = Behavior.STATIONARY
    # Index into path of the next waypoint to reach
    waypoint_index: int = 1
    # (time in microseconds, speed) pairs for Scripted agents, sorted
    schedule: Tuple[Tuple[int, float], ...] = ()

    def __post_init__(self):
        validate_unsigned(self.agent_id, 64, 'agent id')
        validate_positive(self.radius, 'radius')
        validate_non_negative(self.speed, 'speed')
        if self.behavior in (Behavior.FOLLOW_PATH, Behavior.SCRIPTED) and len(self.path) < 2:
            raise ValidationError('agent %d follows a path but has fewer than 2 waypoints' % self.agent_id)

    @property
    def position(self):
        return self.pose.position

    @property
    def velocity(self):
        return (self.speed * math.cos(self.pose.heading), self.speed * math.sin(self.pose.heading))

    def scheduled_speed(self, time):
        speed = self.speed
        for at, value in self.schedule:
            if at > time:
                break
            speed = value
        return speed

    def as_record(self):
        return {
                'agent_id': self.agent_id,
                'class': self.agent_class.label,
                'x': self.pose.x,
                'y': self.pose.y,
                'heading': self.pose.heading,
                'speed': self.speed,
                'radius': self.radius,
                }


@dataclass(frozen=True)
class WorldState:
    time: int
    agents: Tuple[Agent, ...]

    def __post_init__(self):
        ids = [a.agent_id for a in self.agents]
        if len(ids) != len(set(ids)):
            raise ValidationError('duplicate agent ids in world state')

    def agent(self, agent_id):
        for a in self.agents:
            if a.agent_id == agent_id:
                return a
        raise KeyError(agent_id)

    @property
    def seconds(self):
        return micros_to_seconds(self.time)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    duration: float
    tick_dt: float
    rng_seed: int
    nodes: tuple
    links: tuple
    agents: Tuple[Agent, ...]
    boundary: Optional[tuple] = None
    reference_path: Optional[tuple] = None
    subscribers: tuple = ()
    max_speed: float = 30.0
    fusion: dict = field(default_factory=dict)
    hazard: dict = field(default_factory=dict)
    planner: dict = field(default_factory=dict)
    frame: str = ''
    notes: str = ''

    @property
    def tick_us(self):
        return seconds_to_micros(self.tick_dt)

    @property
    def duration_us(self):
        return seconds_to_micros(self.duration)

    @property
    def tick_count(self):
        return self.duration_us // self.tick_us

    def link(self, name):
        for link in self.links:
            if link.name == name:
                return link
        raise KeyError(name)

    def node(self, node_id):
        for node in self.nodes:
            if node.node_id == node_id:
                return node
        raise KeyError(node_id)

    def initial_world(self):
        return WorldState(0, self.agents)
