import math

from django.test import SimpleTestCase

from fusion.factories import track_at
from geometry.primitives import AgentClass
from socialnav.planner import PlannerConfig
from socialnav.yielding import Yielder, bed_heading, yield_check


class YieldCheckTestCase(SimpleTestCase):

    def setUp(self):
        self.config = PlannerConfig.from_settings(reference_path=((-15.0, 0.0), (35.0, 0.0)))
        self.bed = track_at(0.0, 0.0, 0.8, 0.0, agent_class=AgentClass.MEDICAL_BED, track_id=1)

    def test_no_persons(self):
        self.assertIsNone(yield_check(self.bed, [], self.config, 0))

    def test_fast_walker_from_behind(self):
        walker = track_at(-3.0, 0.0, 1.8, 0.0, track_id=5)
        directive = yield_check(self.bed, [walker], self.config, 0)
        self.assertEqual(directive.person_track_id, 5)
        self.assertEqual(directive.speed_cap, 0.0)

    def test_fast_walker_ahead(self):
        self.assertIsNone(yield_check(self.bed, [track_at(3.0, 0.0, 1.8, 0.0)], self.config, 0))

    def test_slow_walker_behind(self):
        self.assertIsNone(yield_check(self.bed, [track_at(-3.0, 0.0, 0.9, 0.0)], self.config, 0))

    def test_walker_outside_rear_cone(self):
        self.assertIsNone(yield_check(self.bed, [track_at(-1.0, 3.0, 1.8, 0.0)], self.config, 0))

    def test_walker_out_of_range(self):
        self.assertIsNone(yield_check(self.bed, [track_at(-6.0, 0.0, 1.8, 0.0)], self.config, 0))

    def test_walker_moving_away(self):
        self.assertIsNone(yield_check(self.bed, [track_at(-3.0, 0.0, -1.8, 0.0)], self.config, 0))

    def test_first_track_id_wins(self):
        walkers = [track_at(-2.0, 0.2, 1.8, 0.0, track_id=9), track_at(-3.0, -0.2, 1.8, 0.0, track_id=4)]
        self.assertEqual(yield_check(self.bed, walkers, self.config, 0).person_track_id, 4)

    def test_stationary_bed_uses_the_reference_heading(self):
        still = track_at(0.0, 0.0, agent_class=AgentClass.MEDICAL_BED, track_id=1)
        self.assertEqual(bed_heading(still, self.config), 0.0)
        moving = track_at(0.0, 0.0, 0.0, -0.5, agent_class=AgentClass.MEDICAL_BED, track_id=1)
        self.assertAlmostEqual(bed_heading(moving, self.config), -math.pi / 2)


class YielderTestCase(SimpleTestCase):

    def setUp(self):
        self.config = PlannerConfig.from_settings(reference_path=((-15.0, 0.0), (35.0, 0.0)))
        self.yielder = Yielder(self.config)
        self.bed = track_at(0.0, 0.0, 0.8, 0.0, agent_class=AgentClass.MEDICAL_BED, track_id=1)

    def test_latch_holds_until_the_person_is_ahead(self):
        self.assertIsNotNone(self.yielder.update(self.bed, [track_at(-3.0, 0.0, 1.8, 0.0, track_id=5)], 0))
        stopped = track_at(0.0, 0.0, agent_class=AgentClass.MEDICAL_BED, track_id=1)
        # alongside: no longer closing from behind, but not yet ahead
        self.assertIsNotNone(self.yielder.update(stopped, [track_at(0.5, 0.3, 1.8, 0.0, track_id=5)], 0))
        self.assertIsNone(self.yielder.update(stopped, [track_at(1.5, 0.3, 1.8, 0.0, track_id=5)], 0))
        self.assertIsNone(self.yielder.active)

    def test_latch_releases_when_the_track_is_gone(self):
        self.yielder.update(self.bed, [track_at(-3.0, 0.0, 1.8, 0.0, track_id=5)], 0)
        self.assertIsNone(self.yielder.update(self.bed, [], 0))
