import math

import numpy as np
from django.test import SimpleTestCase

from fusion.association import associate, distance_matrix, solve_gated
from fusion.factories import DetectionFactory, track_at


def brute_force(costs, gate):
    """Best (pair count, total cost) over every gated one-to-one matching."""
    n, m = costs.shape
    best = [0, 0.0]

    def walk(row, used, count, total):
        if (count, -total) > (best[0], -best[1]):
            best[0], best[1] = count, total
        if row == n:
            return
        walk(row + 1, used, count, total)
        for col in range(m):
            if col not in used and costs[row, col] <= gate:
                walk(row + 1, used | {col}, count + 1, total + costs[row, col])

    walk(0, frozenset(), 0, 0.0)
    return best[0], best[1]


class AssociationTestCase(SimpleTestCase):

    def test_no_tracks(self):
        detections = [DetectionFactory(position_global=(0.0, 0.0)), DetectionFactory(position_global=(1.0, 1.0))]
        result = associate([], detections, 2.0)
        self.assertEqual(result.pairs, ())
        self.assertEqual(result.unmatched_detections, (0, 1))

    def test_no_detections(self):
        result = associate([track_at(0.0, 0.0)], [], 2.0)
        self.assertEqual(result.unmatched_tracks, (0,))

    def test_two_separated_targets(self):
        tracks = [track_at(0.0, 0.0), track_at(10.0, 0.0)]
        detections = [DetectionFactory(position_global=(0.5, 0.0)), DetectionFactory(position_global=(9.5, 0.0))]
        result = associate(tracks, detections, 2.0)
        self.assertEqual(result.pairs, ((0, 0), (1, 1)))
        self.assertAlmostEqual(result.cost, 1.0)

    def test_ambiguous_cross_case(self):
        tracks = [track_at(0.0, 0.0), track_at(1.0, 0.0)]
        detections = [DetectionFactory(position_global=(0.4, 0.0)), DetectionFactory(position_global=(0.6, 0.0))]
        result = associate(tracks, detections, 2.0)
        self.assertEqual(result.pairs, ((0, 0), (1, 1)))
        self.assertAlmostEqual(result.cost, 0.8)

    def test_pairs_beyond_gate_are_never_matched(self):
        result = associate([track_at(0.0, 0.0)], [DetectionFactory(position_global=(5.0, 0.0))], 2.0)
        self.assertEqual(result.pairs, ())
        self.assertEqual(result.unmatched_tracks, (0,))
        self.assertEqual(result.unmatched_detections, (0,))

    def test_gated_pairs_are_maximised_before_cost(self):
        # The cheapest single pair (0,0) would strand track 1
        costs = np.array([[0.1, 1.5], [0.2, 9.0]])
        result = solve_gated(costs, 2.0)
        self.assertEqual(result.pairs, ((0, 1), (1, 0)))

    def test_distance_matrix(self):
        np.testing.assert_allclose(distance_matrix([(0, 0), (3, 0)], [(0, 4)]), [[4.0], [5.0]])

    def test_matches_exhaustive_enumeration(self):
        rng = np.random.default_rng(1234)
        for _ in range(1000):
            n, m = int(rng.integers(0, 8)), int(rng.integers(0, 8))
            costs = distance_matrix(rng.uniform(0, 10, (n, 2)), rng.uniform(0, 10, (m, 2)))
            result = solve_gated(costs, 3.0)
            count, total = brute_force(costs, 3.0)
            self.assertEqual(len(result.pairs), count)
            self.assertTrue(math.isclose(result.cost, total, abs_tol=1e-9))
            self.assertTrue(all(costs[r, c] <= 3.0 for r, c in result.pairs))
            self.assertEqual(len(result.pairs) + len(result.unmatched_tracks), n)
            self.assertEqual(len(result.pairs) + len(result.unmatched_detections), m)
