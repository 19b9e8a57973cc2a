import json

import factory
from faker import Factory as FakerFactory

from geometry.primitives import AgentClass, Pose2

from .agents import Agent, Behavior, WorldState
from .loader import bundled_path, load_scenario

faker = FakerFactory.create()


class AgentFactory(factory.Factory):
    class Meta:
        model = Agent

    agent_id = factory.Sequence(lambda n: n + 1)
    agent_class = AgentClass.PEDESTRIAN
    pose = factory.LazyFunction(lambda: Pose2(0.0, 0.0, 0.0))
    radius = 0.3
    behavior = Behavior.STATIONARY


def world_of(*agents, time=0):
    return WorldState(time, tuple(agents))


def bundled_document(name):
    with open(bundled_path(name), encoding='utf-8') as f:
        return json.load(f)


def scenario_from(document):
    return load_scenario(json.dumps(document, indent=2))


def noiseless(document):
    """Copy of a scenario document with perfect detectors."""
    document = json.loads(json.dumps(document))
    for node in document['nodes']:
        node.update(noise_sigma_m=0.0, miss_rate=0.0, class_accuracy=1.0)
    return document


def minimal_document(**overrides):
    document = {
            'name': faker.slug(),
            'duration_s': 2.0,
            'tick_dt_s': 0.05,
            'rng_seed': faker.random_int(min=0, max=1000),
            'nodes': [
                {'node_id': 1, 'pose': {'x': 0.0, 'y': 0.0, 'heading': 0.0}},
                ],
            'agents': [
                {'agent_id': 1, 'class': 'Pedestrian', 'radius_m': 0.3, 'behavior': 'FollowPath',
                    'speed_mps': 1.0, 'path': [[5.0, 0.0], [10.0, 0.0]]},
                ],
            }
    document.update(overrides)
    return document
