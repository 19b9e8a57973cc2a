import numpy as np
from django.test import SimpleTestCase

from fusion.factories import track_at
from fusion.tracks import GlobalPicture, TrackStatus
from geometry.primitives import AgentClass
from hazard.conflicts import ConflictScanner, HazardConfig, closest_approach, predict_conflict


def vehicle(x, y, vx=0.0, vy=0.0, **kwargs):
    return track_at(x, y, vx, vy, agent_class=AgentClass.VEHICLE, **kwargs)


def pedestrian(x, y, vx=0.0, vy=0.0, **kwargs):
    return track_at(x, y, vx, vy, agent_class=AgentClass.PEDESTRIAN, **kwargs)


class PredictConflictTestCase(SimpleTestCase):

    def test_head_on_approach(self):
        a, b = vehicle(0.0, 0.0, 10.0, 0.0), pedestrian(100.0, 0.0)
        event = predict_conflict(a, b, horizon=15.0, conflict_radius=2.0)
        self.assertIsNotNone(event)
        self.assertAlmostEqual(event.time_to_conflict, 9.8)
        self.assertAlmostEqual(event.min_distance, 0.0)
        self.assertEqual(event.conflict_at, 10000000)

    def test_conflict_beyond_horizon(self):
        a, b = vehicle(0.0, 0.0, 10.0, 0.0), pedestrian(100.0, 0.0)
        self.assertIsNone(predict_conflict(a, b, horizon=6.0, conflict_radius=2.0))

    def test_parallel_tracks(self):
        a, b = vehicle(0.0, 0.0, 5.0, 0.0), vehicle(0.0, 10.0, 5.0, 0.0)
        self.assertIsNone(predict_conflict(a, b, horizon=6.0, conflict_radius=2.0))
        self.assertEqual(closest_approach(a, b, 6.0), (0.0, 10.0))

    def test_crossing_with_wide_miss(self):
        # relative motion along (-1, 1) with a perpendicular offset of 5 m
        a, b = vehicle(0.0, 0.0, 1.0, 0.0), pedestrian(10.0, 5.0 * 2 ** 0.5 - 10.0, 0.0, 1.0)
        t_star, d = closest_approach(a, b, 30.0)
        self.assertAlmostEqual(d, 5.0)
        self.assertIsNone(predict_conflict(a, b, horizon=30.0, conflict_radius=2.0))

    def test_already_inside_radius(self):
        event = predict_conflict(vehicle(0.0, 0.0, 1.0, 0.0), pedestrian(1.0, 0.0), 6.0, 2.0)
        self.assertEqual(event.time_to_conflict, 0.0)

    def test_receding_tracks(self):
        a, b = vehicle(0.0, 0.0, -3.0, 0.0), pedestrian(5.0, 0.0, 1.0, 0.0)
        self.assertEqual(closest_approach(a, b, 6.0), (0.0, 5.0))

    def test_tracks_are_aligned_in_time(self):
        a = vehicle(0.0, 0.0, 10.0, 0.0, last_update=1000000)
        b = pedestrian(100.0, 0.0, last_update=0)
        self.assertAlmostEqual(predict_conflict(a, b, 15.0, 2.0).time_to_conflict, 9.8)
        a = vehicle(0.0, 0.0, 10.0, 0.0, last_update=0)
        b = pedestrian(100.0, 0.0, last_update=1000000)
        event = predict_conflict(a, b, 15.0, 2.0)
        self.assertAlmostEqual(event.time_to_conflict, 8.8)
        self.assertEqual(event.issued_at, 1000000)

    def test_symmetry(self):
        rng = np.random.default_rng(41)
        for _ in range(500):
            a = vehicle(*rng.uniform(-50, 50, 2), *rng.uniform(-15, 15, 2), track_id=1)
            b = pedestrian(*rng.uniform(-50, 50, 2), *rng.uniform(-3, 3, 2), track_id=2)
            ab, ba = closest_approach(a, b, 6.0), closest_approach(b, a, 6.0)
            self.assertAlmostEqual(ab[0], ba[0], places=12)
            self.assertAlmostEqual(ab[1], ba[1], places=9)
            e1, e2 = predict_conflict(a, b, 6.0, 5.0), predict_conflict(b, a, 6.0, 5.0)
            self.assertEqual(e1 is None, e2 is None)
            if e1 is not None:
                self.assertEqual((e1.track_a, e1.track_b), (e2.track_a, e2.track_b))
                self.assertAlmostEqual(e1.time_to_conflict, e2.time_to_conflict, places=9)

    def test_agrees_with_dense_sampling(self):
        rng = np.random.default_rng(8)
        grid = np.arange(0, 6001) / 1000.0
        for _ in range(500):
            p = rng.uniform(-10, 10, 4)
            v = rng.uniform(-1, 1, 4)
            a, b = vehicle(p[0], p[1], v[0], v[1]), pedestrian(p[2], p[3], v[2], v[3])
            t_star, d = closest_approach(a, b, 6.0)
            dx = (p[2] - p[0]) + (v[2] - v[0]) * grid
            dy = (p[3] - p[1]) + (v[3] - v[1]) * grid
            sq = dx * dx + dy * dy
            k = int(np.argmin(sq))
            self.assertLess(abs(d - np.sqrt(sq[k])), 1e-3)
            if np.hypot(v[2] - v[0], v[3] - v[1]) > 0.5:
                self.assertLess(abs(t_star - grid[k]), 1e-3)


class ConflictScannerTestCase(SimpleTestCase):

    def picture(self, time, *tracks):
        return GlobalPicture(time, tuple(tracks))

    def test_empty_picture(self):
        self.assertEqual(ConflictScanner().scan(self.picture(0)), [])

    def test_second_scan_is_deduplicated(self):
        scanner = ConflictScanner()
        picture = self.picture(0, vehicle(0.0, 0.0, 10.0, 0.0, track_id=5), pedestrian(30.0, 0.5, track_id=2))
        events = scanner.scan(picture)
        self.assertEqual(len(events), 1)
        self.assertEqual((events[0].event_id, events[0].track_a, events[0].track_b), (1, 2, 5))
        self.assertEqual(events[0].conflict_at, 3000000)
        self.assertEqual(scanner.scan(picture), [])

    def test_moved_conflict_instant_re_alerts(self):
        scanner = ConflictScanner()
        ped = pedestrian(30.0, 0.5, track_id=2)
        scanner.scan(self.picture(0, vehicle(0.0, 0.0, 10.0, 0.0, track_id=1), ped))
        self.assertEqual(scanner.scan(self.picture(0, vehicle(0.0, 0.0, 12.0, 0.0, track_id=1), ped)), [])
        events = scanner.scan(self.picture(0, vehicle(0.0, 0.0, 5.0, 0.0, track_id=1), ped))
        self.assertEqual([e.event_id for e in events], [2])

    def test_expired_event_re_alerts(self):
        scanner = ConflictScanner(HazardConfig.from_settings(re_alert_delta_s=100.0))
        ped = pedestrian(30.0, 0.5, track_id=2)
        scanner.scan(self.picture(0, vehicle(0.0, 0.0, 10.0, 0.0, track_id=1), ped))
        later = vehicle(0.0, 0.0, 10.0, 0.0, track_id=1, last_update=1000000)
        self.assertEqual(scanner.scan(self.picture(1000000, later, pedestrian(30.0, 0.5, track_id=2, last_update=1000000))), [])
        again = vehicle(0.0, 0.0, 10.0, 0.0, track_id=1, last_update=3500000)
        events = scanner.scan(self.picture(3500000, again, pedestrian(30.0, 0.5, track_id=2, last_update=3500000)))
        self.assertEqual(len(events), 1)
        self.assertEqual(events[0].issued_at, 3500000)

    def test_pairs_without_a_vehicle_are_ignored(self):
        picture = self.picture(0, pedestrian(0.0, 0.0, 1.0, 0.0), pedestrian(3.0, 0.0, -1.0, 0.0))
        self.assertEqual(ConflictScanner().scan(picture), [])

    def test_vehicle_pairs_are_scanned(self):
        picture = self.picture(0, vehicle(0.0, 0.0, 10.0, 0.0), vehicle(40.0, 0.0, -10.0, 0.0))
        self.assertEqual(len(ConflictScanner().scan(picture)), 1)

    def test_tentative_tracks_are_ignored(self):
        picture = self.picture(0, vehicle(0.0, 0.0, 10.0, 0.0),
                pedestrian(30.0, 0.5, status=TrackStatus.TENTATIVE))
        self.assertEqual(ConflictScanner().scan(picture), [])
