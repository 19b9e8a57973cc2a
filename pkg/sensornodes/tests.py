import math

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from geometry.primitives import AgentClass, Pose2
from netsim.codec import CountOverflow, decode, encode, f32, seq_newer, seq_next
from scenarios.factories import AgentFactory, world_of

from .detection import Detection, detections_from_message, make_message, sense, visible
from .factories import node_at
from .node import NodeRuntime


def agent(agent_id, x, y, radius=0.3, agent_class=AgentClass.PEDESTRIAN):
    return AgentFactory(agent_id=agent_id, pose=Pose2(x, y, 0.0), radius=radius, agent_class=agent_class)


def segment_hits_disk(origin, target, center, radius):
    """Independent oracle: roots of |origin + t*(target - origin) - center|^2 = r^2 on [0, 1]."""
    dx, dy = target[0] - origin[0], target[1] - origin[1]
    fx, fy = origin[0] - center[0], origin[1] - center[1]
    a = dx * dx + dy * dy
    b = 2 * (fx * dx + fy * dy)
    c = fx * fx + fy * fy - radius * radius
    if c <= 0:
        return True
    disc = b * b - 4 * a * c
    if disc < 0:
        return False
    root = math.sqrt(disc)
    t1, t2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
    return t1 <= 1 and t2 >= 0


class VisibilityTestCase(SimpleTestCase):

    def setUp(self):
        self.node = node_at(0.0, 0.0, 0.0, fov=math.pi, max_range=50.0)

    def test_target_inside_cone(self):
        target = agent(1, 10.0, 0.0)
        self.assertTrue(visible(self.node, world_of(target), target))

    def test_occluder_on_the_line_of_sight(self):
        target = agent(1, 10.0, 0.0)
        world = world_of(target, agent(2, 5.0, 0.0, radius=1.0))
        self.assertFalse(visible(self.node, world, target))

    def test_line_of_sight_clears_the_occluder(self):
        target = agent(1, 10.0, 5.0)
        world = world_of(target, agent(2, 5.0, 0.0, radius=1.0))
        self.assertTrue(visible(self.node, world, target))

    def test_out_of_range(self):
        target = agent(1, 50.5, 0.0)
        self.assertFalse(visible(self.node, world_of(target), target))

    def test_behind_the_node(self):
        target = agent(1, -1.0, 0.5)
        self.assertFalse(visible(self.node, world_of(target), target))

    def test_edge_of_sector_is_inside(self):
        target = agent(1, 0.0, 10.0)
        self.assertTrue(visible(self.node, world_of(target), target))

    def test_agrees_with_brute_force_oracle(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            heading = rng.uniform(-math.pi, math.pi)
            fov = rng.uniform(0.2, 2 * math.pi)
            node = node_at(*rng.uniform(-5, 5, 2), heading, fov=fov, max_range=30.0)
            target = agent(1, *rng.uniform(-35, 35, 2))
            occluders = [agent(i, *rng.uniform(-35, 35, 2), radius=rng.uniform(0.2, 3.0))
                    for i in range(2, 2 + int(rng.integers(0, 5)))]
            origin, goal = node.pose.position, target.position
            bearing = math.remainder(math.atan2(goal[1] - origin[1], goal[0] - origin[0]) - heading, 2 * math.pi)
            expected = (math.hypot(goal[0] - origin[0], goal[1] - origin[1]) <= 30.0
                    and abs(bearing) <= fov / 2
                    and not any(segment_hits_disk(origin, goal, o.position, o.radius) for o in occluders))
            self.assertEqual(visible(node, world_of(target, *occluders), target), expected)


class SenseTestCase(SimpleTestCase):

    def test_noiseless_detection_is_exact(self):
        world = world_of(agent(1, 3.0, 4.0))
        detections = sense(node_at(0.0, 0.0), world, np.random.default_rng(0))
        self.assertEqual(len(detections), 1)
        self.assertEqual(detections[0].position_global, (3.0, 4.0))
        self.assertEqual(detections[0].class_estimate, AgentClass.PEDESTRIAN)
        self.assertEqual(detections[0].capture_time, 0)

    def test_noiseless_frame_matches_the_world(self):
        agents = [agent(1, 3.0, 4.0), agent(2, 12.0, -7.5, agent_class=AgentClass.VEHICLE),
                agent(3, 20.0, 20.0, agent_class=AgentClass.MEDICAL_BED), agent(4, -3.0, 1.0)]
        world = world_of(*agents, time=250000)
        detections = sense(node_at(0.0, 0.0), world, np.random.default_rng(1))
        self.assertEqual({(d.agent_id, d.position_global, d.class_estimate) for d in detections},
                {(a.agent_id, a.position, a.agent_class) for a in agents[:3]})
        self.assertEqual([d.local_object_index for d in detections], [0, 1, 2])
        self.assertTrue(all(d.capture_time == 250000 for d in detections))

    def test_miss_rate_of_one_reports_nothing(self):
        world = world_of(agent(1, 3.0, 4.0), agent(2, 8.0, 1.0))
        rng = np.random.default_rng(5)
        for _ in range(50):
            self.assertEqual(sense(node_at(0.0, 0.0, miss_rate=1.0), world, rng), [])

    def test_position_noise_matches_sigma(self):
        world = world_of(agent(1, 10.0, 2.0))
        node = node_at(0.0, 0.0, noise_sigma=0.1)
        rng = np.random.default_rng(99)
        errors = np.array([np.subtract(sense(node, world, rng)[0].position_global, (10.0, 2.0))
                for _ in range(10000)])
        for std in errors.std(axis=0, ddof=1):
            self.assertGreaterEqual(std, 0.097)
            self.assertLessEqual(std, 0.103)

    def test_class_accuracy(self):
        world = world_of(agent(1, 10.0, 2.0))
        node = node_at(0.0, 0.0, class_accuracy=0.5)
        rng = np.random.default_rng(3)
        labels = [sense(node, world, rng)[0].class_estimate for _ in range(4000)]
        correct = sum(1 for label in labels if label == AgentClass.PEDESTRIAN)
        self.assertGreater(correct / 4000, 0.46)
        self.assertLess(correct / 4000, 0.54)
        wrong = {label for label in labels if label != AgentClass.PEDESTRIAN}
        self.assertEqual(wrong, set(AgentClass) - {AgentClass.PEDESTRIAN})

    def test_same_seed_same_detections(self):
        world = world_of(agent(1, 3.0, 4.0), agent(2, 8.0, 1.0), agent(3, 15.0, -4.0))
        node = node_at(0.0, 0.0, noise_sigma=0.2, miss_rate=0.3, class_accuracy=0.8)
        a, b = np.random.default_rng([7, 1, 1]), np.random.default_rng([7, 1, 1])
        for _ in range(100):
            self.assertEqual(sense(node, world, a), sense(node, world, b))

    def test_misses_do_not_shift_the_noise_stream(self):
        world = world_of(agent(1, 3.0, 4.0), agent(2, 8.0, 1.0), agent(3, 15.0, -4.0))
        always = node_at(0.0, 0.0, node_id=1, noise_sigma=0.2, miss_rate=0.0)
        sometimes = node_at(0.0, 0.0, node_id=1, noise_sigma=0.2, miss_rate=0.5)
        a, b = np.random.default_rng(12), np.random.default_rng(12)
        for _ in range(100):
            full = {(d.agent_id, d.position_global) for d in sense(always, world, a)}
            thinned = {(d.agent_id, d.position_global) for d in sense(sometimes, world, b)}
            self.assertLessEqual(thinned, full)

    def test_static_obstacles_occlude_but_are_never_detected(self):
        wall = agent(2, 5.0, 0.0, radius=1.0, agent_class=AgentClass.STATIC_OBSTACLE)
        world = world_of(agent(1, 10.0, 0.0), wall, agent(3, 4.0, 6.0))
        detections = sense(node_at(0.0, 0.0), world, np.random.default_rng(0))
        self.assertEqual([d.agent_id for d in detections], [3])


class MakeMessageTestCase(SimpleTestCase):

    def detection(self, index, x, y, capture_time=1000, sigma=0.15):
        return Detection(7, index, AgentClass.VEHICLE, (x, y), capture_time, sigma)

    def test_empty_message(self):
        message = make_message(7, [], 1000, 0)
        self.assertEqual(message.count, 0)
        self.assertEqual(len(encode(message)), 21)

    def test_two_detections_survive_the_wire(self):
        detections = [self.detection(0, 1.25, -3.5), self.detection(1, 100.125, 42.0, sigma=0.1)]
        message = make_message(7, detections, 1000, 41)
        self.assertEqual(decode(encode(message)), message)
        back = detections_from_message(decode(encode(message)))
        self.assertEqual([d.position_global for d in back], [(1.25, -3.5), (100.125, 42.0)])
        self.assertEqual(back[1].position_sigma, f32(0.1))
        self.assertEqual(back[0].class_estimate, AgentClass.VEHICLE)

    def test_sequence_wraps(self):
        last = 2 ** 32 - 1
        self.assertEqual(seq_next(last), 0)
        self.assertTrue(seq_newer(0, last))
        self.assertFalse(seq_newer(last, 0))
        message = make_message(7, [], 1000, seq_next(last))
        self.assertEqual(decode(encode(message)).seq, 0)

    def test_count_overflow(self):
        detections = [self.detection(i, 0.0, 0.0) for i in range(65536)]
        with self.assertRaises(CountOverflow):
            make_message(7, detections, 1000, 0)

    def test_mixed_capture_times(self):
        detections = [self.detection(0, 0.0, 0.0), self.detection(1, 1.0, 1.0, capture_time=900)]
        with self.assertRaises(ValueError):
            make_message(7, detections, 1000, 0)


class NodeRuntimeTestCase(SimpleTestCase):

    def test_schedule_and_sequence_advance(self):
        runtime = NodeRuntime(node_at(0.0, 0.0, node_id=3, detection_period=0.1), seed=1, first_seq=2 ** 32 - 1)
        world = world_of(agent(1, 3.0, 4.0))
        self.assertTrue(runtime.due(0))
        _, first = runtime.capture(world)
        self.assertEqual(first.seq, 2 ** 32 - 1)
        self.assertEqual(first.node_id, 3)
        self.assertFalse(runtime.due(50000))
        self.assertTrue(runtime.due(100000))
        _, second = runtime.capture(world)
        self.assertEqual(second.seq, 0)

    def test_streams_are_node_scoped(self):
        world = world_of(agent(1, 3.0, 4.0))
        def positions(node_id, seed):
            runtime = NodeRuntime(node_at(0.0, 0.0, node_id=node_id, noise_sigma=0.5), seed=seed)
            return [runtime.capture(world)[0][0].position_global for _ in range(5)]
        self.assertEqual(positions(1, 8), positions(1, 8))
        self.assertNotEqual(positions(1, 8), positions(2, 8))
        self.assertNotEqual(positions(1, 8), positions(1, 9))

    def test_config_validation(self):
        with self.assertRaises(ValidationError):
            node_at(0.0, 0.0, fov=7.0)
        with self.assertRaises(ValidationError):
            node_at(0.0, 0.0, class_accuracy=0.0)
        with self.assertRaises(ValidationError):
            node_at(0.0, 0.0, node_id=70000)
