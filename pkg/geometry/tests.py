import math

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from geometry.primitives import (AgentClass, NodeExtrinsics, Polyline, Pose2,
        distance, normalize_heading, point_in_polygon, polyline_length, segment_intersects_disk,
        to_global, to_local)


def extrinsics(x, y, heading):
    return NodeExtrinsics(node_pose=Pose2(x, y, heading), mount_height=5.0)


class FrameTransformTestCase(SimpleTestCase):

    def assertPointAlmostEqual(self, a, b, places=9):
        self.assertAlmostEqual(a[0], b[0], places=places)
        self.assertAlmostEqual(a[1], b[1], places=places)

    def test_identity_transform(self):
        self.assertPointAlmostEqual(to_global(extrinsics(0, 0, 0), (3, 4)), (3, 4))

    def test_quarter_turn(self):
        self.assertPointAlmostEqual(to_global(extrinsics(0, 0, math.pi / 2), (1, 0)), (0, 1))

    def test_half_turn_then_translate(self):
        self.assertPointAlmostEqual(to_global(extrinsics(10, -2, math.pi), (2, 1)), (8, -3))

    def test_to_local_inverts_half_turn_example(self):
        self.assertPointAlmostEqual(to_local(extrinsics(10, -2, math.pi), (8, -3)), (2, 1))

    def test_to_local_quarter_turn(self):
        self.assertPointAlmostEqual(to_local(extrinsics(5, 5, math.pi / 2), (5, 6)), (1, 0))

    def test_non_finite_point_is_rejected(self):
        with self.assertRaises(ValidationError):
            to_global(extrinsics(0, 0, 0), (math.nan, 1.0))
        with self.assertRaises(ValidationError):
            to_local(extrinsics(0, 0, 0), (1.0, math.inf))

    def test_round_trip_and_rigidity_over_random_poses(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            ext = extrinsics(*rng.uniform(-500, 500, 2), rng.uniform(-10, 10))
            p, q = tuple(rng.uniform(-100, 100, 2)), tuple(rng.uniform(-100, 100, 2))
            back = to_local(ext, to_global(ext, p))
            self.assertLess(distance(back, p), 1e-9)
            self.assertAlmostEqual(
                    distance(to_global(ext, p), to_global(ext, q)), distance(p, q), delta=1e-9)


class NormalizeHeadingTestCase(SimpleTestCase):

    def test_zero(self):
        self.assertEqual(normalize_heading(0.0), 0.0)

    def test_three_pi_maps_to_pi(self):
        self.assertAlmostEqual(normalize_heading(3 * math.pi), math.pi, places=12)

    def test_minus_pi_maps_to_pi(self):
        self.assertEqual(normalize_heading(-math.pi), math.pi)

    def test_is_idempotent(self):
        rng = np.random.default_rng(3)
        for angle in rng.uniform(-50, 50, 500):
            once = normalize_heading(angle)
            self.assertTrue(-math.pi < once <= math.pi)
            self.assertEqual(normalize_heading(once), once)

    def test_non_finite_is_rejected(self):
        with self.assertRaises(ValidationError):
            normalize_heading(math.inf)

    def test_pose_normalizes_its_heading(self):
        self.assertAlmostEqual(Pose2(0, 0, 2 * math.pi + 0.5).heading, 0.5, places=12)


class ExtrinsicsValidationTestCase(SimpleTestCase):

    def test_mount_height_must_be_positive(self):
        with self.assertRaises(ValidationError):
            NodeExtrinsics(node_pose=Pose2(0, 0, 0), mount_height=0)

    def test_pose_must_be_finite(self):
        with self.assertRaises(ValidationError):
            Pose2(math.nan, 0, 0)


class AgentClassTestCase(SimpleTestCase):

    def test_wire_codes_are_stable(self):
        self.assertEqual([int(c) for c in AgentClass], [1, 2, 3, 4])

    def test_labels_round_trip(self):
        for member in AgentClass:
            self.assertEqual(AgentClass.from_label(member.label), member)


class ShapeHelpersTestCase(SimpleTestCase):

    def test_segment_disk_intersection(self):
        self.assertTrue(segment_intersects_disk((0, 0), (10, 0), (5, 0), 1))
        self.assertFalse(segment_intersects_disk((0, 0), (10, 5), (5, 0), 1))

    def test_point_in_polygon_is_strict(self):
        square = [(0, 0), (4, 0), (4, 4), (0, 4)]
        self.assertTrue(point_in_polygon((2, 2), square))
        self.assertFalse(point_in_polygon((4, 2), square))
        self.assertFalse(point_in_polygon((5, 2), square))

    def test_polyline_projection(self):
        line = Polyline([(0, 0), (10, 0), (10, 10)])
        self.assertEqual(line.length, 20.0)
        self.assertEqual(polyline_length([(0, 0), (10, 0), (10, 10)]), line.length)
        s, offset = line.project((4, 1.5))
        self.assertAlmostEqual(s, 4.0)
        self.assertAlmostEqual(offset, 1.5)
        self.assertEqual(line.point_at(15.0), (10.0, 5.0))
        s, offset = line.project((11, 5))
        self.assertAlmostEqual(s, 15.0)
        self.assertAlmostEqual(offset, -1.0)
