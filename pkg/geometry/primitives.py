"""
Planar geometry, time and identity primitives shared by every app.

The world is a 2D ENU plane (x east, y north, metres) with a
scenario-defined origin. Time is integer microseconds since scenario
start. Everything here is an immutable value.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from .validators import validate_finite, validate_positive

TWO_PI = 2.0 * math.pi


class AgentClass(enum.IntEnum):
    # Values are wire codes; never renumber.
    VEHICLE = 1
    PEDESTRIAN = 2
    MEDICAL_BED = 3
    STATIC_OBSTACLE = 4

    @property
    def label(self):
        return _CLASS_LABELS[self]

    @classmethod
    def from_label(cls, label):
        for member, name in _CLASS_LABELS.items():
            if name == label:
                return member
        raise ValueError('%r is not an agent class' % label)


_CLASS_LABELS = {
        AgentClass.VEHICLE: 'Vehicle',
        AgentClass.PEDESTRIAN: 'Pedestrian',
        AgentClass.MEDICAL_BED: 'MedicalBed',
        AgentClass.STATIC_OBSTACLE: 'StaticObstacle',
        }


def seconds_to_micros(seconds):
    return int(round(seconds * 1000000))

def micros_to_seconds(micros):
    return micros / 1000000.0


def normalize_heading(angle):
    """Map an angle onto (-pi, pi]."""
    validate_finite(angle, 'heading')
    wrapped = math.remainder(angle, TWO_PI)
    # remainder() lands on -pi for odd multiples; the interval is open there
    if wrapped <= -math.pi + 1e-12:
        return math.pi
    return wrapped


@dataclass(frozen=True)
class Pose2:
    x: float
    y: float
    heading: float = 0.0

    def __post_init__(self):
        validate_finite(self.x, 'x coordinate')
        validate_finite(self.y, 'y coordinate')
        object.__setattr__(self, 'heading', normalize_heading(self.heading))

    @property
    def position(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class NodeExtrinsics:
    node_pose: Pose2
    mount_height: float = 6.0 # metadata only

    def __post_init__(self):
        validate_positive(self.mount_height, 'mount height')


def to_global(ext, local_point):
    """Rotate a node-local point by the node heading, then translate."""
    lx, ly = local_point
    validate_finite(lx, 'local x')
    validate_finite(ly, 'local y')
    pose = ext.node_pose
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    return (pose.x + c * lx - s * ly, pose.y + s * lx + c * ly)

def to_local(ext, global_point):
    gx, gy = global_point
    validate_finite(gx, 'global x')
    validate_finite(gy, 'global y')
    pose = ext.node_pose
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    dx, dy = gx - pose.x, gy - pose.y
    return (c * dx + s * dy, -s * dx + c * dy)


def distance(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def segment_intersects_disk(start, end, center, radius):
    """True if the closed segment start->end comes within radius of center."""
    sx, sy = start
    dx, dy = end[0] - sx, end[1] - sy
    length_sq = dx * dx + dy * dy
    if length_sq == 0.0:
        return distance(start, center) <= radius
    t = ((center[0] - sx) * dx + (center[1] - sy) * dy) / length_sq
    t = min(1.0, max(0.0, t))
    closest = (sx + t * dx, sy + t * dy)
    return distance(closest, center) <= radius


def point_in_polygon(point, polygon):
    """Strict interior test (ray casting). Points on an edge are outside."""
    px, py = point
    n = len(polygon)
    if n < 3:
        return False
    if distance_to_polygon_edges(point, polygon) == 0.0:
        return False
    inside = False
    j = n - 1
    for i in range(n):
        xi, yi = polygon[i]
        xj, yj = polygon[j]
        if (yi > py) != (yj > py):
            x_cross = xi + (py - yi) * (xj - xi) / (yj - yi)
            if px < x_cross:
                inside = not inside
        j = i
    return inside


def distance_to_polygon_edges(point, polygon):
    best = math.inf
    n = len(polygon)
    for i in range(n):
        best = min(best, _point_segment_distance(point, polygon[i], polygon[(i + 1) % n]))
    return best


def _point_segment_distance(point, a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    length_sq = dx * dx + dy * dy
    if length_sq == 0.0:
        return distance(point, a)
    t = ((point[0] - a[0]) * dx + (point[1] - a[1]) * dy) / length_sq
    t = min(1.0, max(0.0, t))
    return distance(point, (a[0] + t * dx, a[1] + t * dy))


def polyline_length(points):
    return sum(distance(points[i], points[i + 1]) for i in range(len(points) - 1))


class Polyline(object):
    """
    Arc-length parameterised open polyline. Used for reference paths and
    for the laterally shifted candidate curves of the planner.
    """

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] != 2:
            raise ValueError('a polyline needs at least two (x, y) points')
        segment_lengths = np.hypot(*np.diff(pts, axis=0).T)
        keep = np.concatenate(([True], segment_lengths > 0.0))
        pts = pts[keep]
        if pts.shape[0] < 2:
            raise ValueError('a polyline needs two distinct points')
        self.points = pts
        self.segment_lengths = np.hypot(*np.diff(pts, axis=0).T)
        self.cumulative = np.concatenate(([0.0], np.cumsum(self.segment_lengths)))

    @property
    def length(self):
        return float(self.cumulative[-1])

    def _segment_index(self, s):
        i = int(np.searchsorted(self.cumulative, s, side='right')) - 1
        return min(max(i, 0), len(self.segment_lengths) - 1)

    def point_at(self, s):
        s = min(max(s, 0.0), self.length)
        i = self._segment_index(s)
        frac = (s - self.cumulative[i]) / self.segment_lengths[i]
        p = self.points[i] + frac * (self.points[i + 1] - self.points[i])
        return (float(p[0]), float(p[1]))

    def tangent_at(self, s):
        i = self._segment_index(min(max(s, 0.0), self.length))
        d = (self.points[i + 1] - self.points[i]) / self.segment_lengths[i]
        return (float(d[0]), float(d[1]))

    def heading_at(self, s):
        tx, ty = self.tangent_at(s)
        return math.atan2(ty, tx)

    def normal_at(self, s):
        # Left-hand normal: positive lateral offsets lie to the left
        tx, ty = self.tangent_at(s)
        return (-ty, tx)

    def project(self, point):
        """Return (arc length, signed lateral offset) of the closest point."""
        p = np.asarray(point, dtype=float)
        a = self.points[:-1]
        d = self.points[1:] - a
        t = np.clip(np.einsum('ij,ij->i', p - a, d) / self.segment_lengths ** 2, 0.0, 1.0)
        closest = a + t[:, None] * d
        dist = np.hypot(*(p - closest).T)
        i = int(np.argmin(dist))
        s = float(self.cumulative[i] + t[i] * self.segment_lengths[i])
        nx, ny = -d[i][1] / self.segment_lengths[i], d[i][0] / self.segment_lengths[i]
        offset = (p[0] - closest[i][0]) * nx + (p[1] - closest[i][1]) * ny
        return s, float(offset)

    def sample(self, s):
        """Vectorised point_at / normal_at over an array of arc lengths."""
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.length)
        i = np.clip(np.searchsorted(self.cumulative, s, side='right') - 1, 0, len(self.segment_lengths) - 1)
        d = (self.points[i + 1] - self.points[i]) / self.segment_lengths[i][:, None]
        points = self.points[i] + (s - self.cumulative[i])[:, None] * d
        normals = np.stack((-d[:, 1], d[:, 0]), axis=1)
        return points, normals
