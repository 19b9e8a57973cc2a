"""
Gated optimal assignment of detections to tracks.

Pairs beyond the gate get a cost larger than any feasible total, so the
solver first maximises the number of gated pairs and then minimises their
summed Euclidean distance. Infeasible pairs are dropped from the result.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment


@dataclass(frozen=True)
class Assignment:
    pairs: Tuple[Tuple[int, int], ...] = ()
    unmatched_tracks: Tuple[int, ...] = ()
    unmatched_detections: Tuple[int, ...] = ()
    cost: float = 0.0


def distance_matrix(a, b):
    a = np.asarray(a, dtype=float).reshape(-1, 2)
    b = np.asarray(b, dtype=float).reshape(-1, 2)
    return np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])


def solve_gated(costs, gate):
    costs = np.asarray(costs, dtype=float)
    n, m = costs.shape if costs.ndim == 2 else (0, 0)
    if n == 0 or m == 0:
        return Assignment((), tuple(range(n)), tuple(range(m)), 0.0)
    feasible = costs <= gate
    prohibitive = gate * (min(n, m) + 1) + 1.0
    rows, cols = linear_sum_assignment(np.where(feasible, costs, prohibitive))
    pairs = tuple(sorted((int(r), int(c)) for r, c in zip(rows, cols) if feasible[r, c]))
    matched_rows = {r for r, _ in pairs}
    matched_cols = {c for _, c in pairs}
    return Assignment(
            pairs=pairs,
            unmatched_tracks=tuple(r for r in range(n) if r not in matched_rows),
            unmatched_detections=tuple(c for c in range(m) if c not in matched_cols),
            cost=float(sum(costs[r, c] for r, c in pairs)),
            )


def associate(tracks, detections, gate):
    """Indices in the result refer to the given sequences."""
    costs = distance_matrix([t.position for t in tracks], [d.position_global for d in detections])
    return solve_gated(costs, gate)
