import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from fusion.factories import track_at
from socialnav.planner import PlannerConfig
from socialnav.proxemics import PersonalSpace, personal_space_cost, personal_space_costs, space_for


class PersonalSpaceTestCase(SimpleTestCase):

    def setUp(self):
        self.walking = PersonalSpace((2.0, 1.0), 0.0, sigma_front=1.2, sigma_side=0.6, sigma_back=0.6)
        self.standing = PersonalSpace((2.0, 1.0), None)

    def test_peak_at_centre(self):
        self.assertEqual(personal_space_cost(self.walking, (2.0, 1.0)), 1.0)
        self.assertEqual(personal_space_cost(self.standing, (2.0, 1.0)), 1.0)

    def test_tail_beyond_five_sigma(self):
        for point in ((2.0 + 5 * 1.2, 1.0), (2.0 - 5 * 0.6, 1.0), (2.0, 1.0 + 5 * 0.6), (2.0, 1.0 - 5 * 0.6)):
            self.assertLess(personal_space_cost(self.walking, point), 4e-6)
        for angle in (0.0, 1.0, 2.5, -2.0):
            point = (2.0 + 3.0 * math.cos(angle), 1.0 + 3.0 * math.sin(angle))
            self.assertLess(personal_space_cost(self.standing, point), 4e-6)

    def test_front_is_wider_than_back(self):
        ahead = personal_space_cost(self.walking, (3.0, 1.0))
        behind = personal_space_cost(self.walking, (1.0, 1.0))
        self.assertAlmostEqual(ahead / behind, math.exp(1 / 0.72 - 1 / 2.88))
        self.assertAlmostEqual(ahead / behind, 2.834, places=3)

    def test_heading_rotates_the_space(self):
        north = PersonalSpace((0.0, 0.0), math.pi / 2)
        self.assertAlmostEqual(personal_space_cost(north, (0.0, 1.0)), math.exp(-0.5 / 1.44))
        self.assertAlmostEqual(personal_space_cost(north, (1.0, 0.0)), math.exp(-0.5 / 0.36))

    def test_vectorised_costs_match(self):
        points = [(0.0, 0.0), (2.5, 1.3), (4.0, -1.0)]
        costs = personal_space_costs(self.walking, points)
        for point, cost in zip(points, costs):
            self.assertAlmostEqual(cost, personal_space_cost(self.walking, point))

    def test_front_must_not_be_narrower_than_back(self):
        with self.assertRaises(ValidationError):
            PersonalSpace((0.0, 0.0), 0.0, sigma_front=0.5, sigma_back=0.6)
        with self.assertRaises(ValidationError):
            PersonalSpace((0.0, 0.0), 0.0, sigma_side=0.0)


class SpaceForTrackTestCase(SimpleTestCase):

    def setUp(self):
        self.config = PlannerConfig.from_settings(reference_path=((0.0, 0.0), (10.0, 0.0)))

    def test_moving_person_faces_their_velocity(self):
        space = space_for(track_at(1.0, 1.0, 0.0, -1.5), 1000000, self.config)
        self.assertAlmostEqual(space.heading, -math.pi / 2)
        self.assertEqual(space.center, (1.0, -0.5))

    def test_slow_person_is_isotropic(self):
        self.assertIsNone(space_for(track_at(1.0, 1.0, 0.05, 0.0), 0, self.config).heading)
