"""
Constant-velocity Kalman filter over (x, y, vx, vy) with white-noise
acceleration process noise.
"""
from collections import Counter
from dataclasses import replace

import numpy as np
import scipy.linalg

from geometry.primitives import AgentClass, micros_to_seconds

from .tracks import Track, TrackStatus

H = np.array([[1.0, 0.0, 0.0, 0.0],
              [0.0, 1.0, 0.0, 0.0]])
I4 = np.eye(4)


class FilterError(ValueError):
    pass

class PredictionError(FilterError):
    pass

class CovarianceError(FilterError):
    pass


def transition_matrix(dt):
    F = np.eye(4)
    F[0, 2] = F[1, 3] = dt
    return F


def process_noise(dt, accel_psd):
    """Q for one axis is q * [[dt^3/3, dt^2/2], [dt^2/2, dt]]."""
    Q = np.zeros((4, 4))
    q11, q12, q22 = dt ** 3 / 3.0, dt ** 2 / 2.0, dt
    for p, v in ((0, 2), (1, 3)):
        Q[p, p] = q11
        Q[p, v] = Q[v, p] = q12
        Q[v, v] = q22
    return accel_psd * Q


def check_positive_definite(covariance):
    try:
        scipy.linalg.cholesky(covariance, lower=True)
    except np.linalg.LinAlgError:
        raise CovarianceError('covariance is not positive-definite')


def initiate(detection, track_id, config):
    sigma = max(detection.position_sigma, config.min_measurement_sigma)
    v0 = config.initial_velocity_sigma
    x, y = detection.position_global
    status = TrackStatus.CONFIRMED if config.confirm_threshold <= 1 else TrackStatus.TENTATIVE
    return Track(
            track_id=track_id,
            agent_class=detection.class_estimate,
            state=np.array([x, y, 0.0, 0.0]),
            covariance=np.diag([sigma ** 2, sigma ** 2, v0 ** 2, v0 ** 2]),
            last_update=detection.capture_time,
            status=status,
            hit_count=1,
            contributing_nodes=frozenset([detection.node_id]),
            class_votes=(int(detection.class_estimate),),
            )


def predict(track, to_time, accel_psd):
    if to_time < track.last_update:
        raise PredictionError('cannot predict track %d back from %d to %d'
                % (track.track_id, track.last_update, to_time))
    if to_time == track.last_update:
        return track
    dt = micros_to_seconds(to_time - track.last_update)
    F = transition_matrix(dt)
    covariance = F @ track.covariance @ F.T + process_noise(dt, accel_psd)
    covariance = 0.5 * (covariance + covariance.T)
    return replace(track, state=F @ track.state, covariance=covariance, last_update=to_time)


def update(track, detection, config):
    """Joseph-form measurement update of position, then bookkeeping."""
    sigma = max(detection.position_sigma, config.min_measurement_sigma)
    R = sigma ** 2 * np.eye(2)
    P = track.covariance
    z = np.asarray(detection.position_global, dtype=float)
    innovation = z - H @ track.state
    S = H @ P @ H.T + R
    K = np.linalg.solve(S, H @ P).T
    state = track.state + K @ innovation
    A = I4 - K @ H
    covariance = A @ P @ A.T + K @ R @ K.T
    covariance = 0.5 * (covariance + covariance.T)
    check_positive_definite(covariance)

    votes = (track.class_votes + (int(detection.class_estimate),))[-config.class_vote_window:]
    return replace(track,
            agent_class=vote_class(votes, track.agent_class),
            state=state,
            covariance=covariance,
            last_update=max(track.last_update, detection.capture_time),
            hit_count=track.hit_count + 1,
            miss_count=0,
            contributing_nodes=track.contributing_nodes | {detection.node_id},
            class_votes=votes,
            )


def vote_class(votes, prior):
    counts = Counter(votes).most_common()
    leaders = [code for code, n in counts if n == counts[0][1]]
    if len(leaders) == 1:
        return AgentClass(leaders[0])
    return prior
