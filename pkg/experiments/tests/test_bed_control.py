import math
from dataclasses import replace

from django.test import SimpleTestCase

from geometry.primitives import Pose2
from scenarios.agents import WorldState
from scenarios.loader import load_bundled
from socialnav.planner import PlannedTrajectory, Stop, TimedWaypoint

from ..runner import Simulation


def trajectory(xs, y=0.0, speed=1.0):
    return PlannedTrajectory(tuple(TimedWaypoint(k * 1000000, Pose2(x, y), speed) for k, x in enumerate(xs)), 0.0)


class BedControlTestCase(SimpleTestCase):

    def setUp(self):
        self.simulation = Simulation(load_bundled('corridor_single_person'))

    def drive(self, command, speed=None):
        self.simulation.command = command
        world = self.simulation.world
        if speed is not None:
            agents = tuple(replace(a, speed=speed) if a.agent_id == 1 else a for a in world.agents)
            world = WorldState(world.time, agents)
        return self.simulation._drive_bed(world, 0).agent(1)

    def test_no_command_leaves_the_bed_alone(self):
        self.assertEqual(self.simulation._drive_bed(self.simulation.world, 0), self.simulation.world)

    def test_speed_change_is_rate_limited(self):
        bed = self.drive(trajectory([0.0, 1.0, 2.0, 3.0]))
        self.assertAlmostEqual(bed.speed, 0.8 + 0.5 * 0.05)
        bed = self.drive(trajectory([0.0, 0.0], speed=0.0))
        self.assertAlmostEqual(bed.speed, 0.8 - 0.5 * 0.05)

    def test_trajectory_behind_the_bed_does_not_reverse_it(self):
        bed = self.drive(trajectory([-6.0, -5.0, -4.0, -3.0, -2.0]))
        self.assertEqual(bed.pose.heading, 0.0)
        self.assertAlmostEqual(bed.speed, 0.825)

    def test_steers_toward_the_commanded_offset(self):
        bed = self.drive(trajectory([0.0, 1.0, 2.0, 3.0, 4.0], y=0.5, speed=0.5))
        self.assertAlmostEqual(bed.pose.heading, math.atan2(0.5, 1.0))
        self.assertLess(abs(bed.pose.heading), math.pi / 2)
        self.assertAlmostEqual(bed.speed, 0.775)

    def test_stop_brakes_to_rest(self):
        bed = self.drive(Stop(0, 'blocked'), speed=0.01)
        self.assertEqual(bed.speed, 0.0)
        self.assertEqual(bed.pose.heading, 0.0)

    def test_commanded_speed_after_a_stop(self):
        self.assertIsNone(self.simulation._commanded_speed(0))
        self.simulation.issued = Stop(0, 'cost')
        self.simulation.stop_speed = 0.8
        self.assertAlmostEqual(self.simulation._commanded_speed(1000000), 0.3)
        self.assertEqual(self.simulation._commanded_speed(2000000), 0.0)
        self.simulation.issued = trajectory([0.0, 1.0], speed=0.6)
        self.assertAlmostEqual(self.simulation._commanded_speed(500000), 0.6)
