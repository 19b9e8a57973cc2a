import logging
from dataclasses import replace

from sensornodes.detection import detections_from_message, in_coverage

from .association import associate
from .kalman import initiate, predict, update
from .tracks import FusionConfig, GlobalPicture, PictureDelta, TrackStatus

logger = logging.getLogger(__name__)


class FusionEngine(object):
    """
    The cloud fusion unit: a single writer consuming perception messages
    and maintaining the global track picture.
    """

    def __init__(self, config=None, nodes=()):
        self.config = config or FusionConfig.from_settings()
        self.clock = 0
        self.stale_discarded = 0
        self.tracks_created = 0
        self.tracks_dropped = 0
        self._tracks = {}
        self._next_id = 1
        self._nodes = {node.node_id: node for node in nodes}

    def register_node(self, node):
        self._nodes[node.node_id] = node

    @property
    def tracks(self):
        """Every live track, tentative ones included, in id order."""
        return [self._tracks[k] for k in sorted(self._tracks)]

    def picture(self):
        return GlobalPicture(self.clock, tuple(t for t in self.tracks
                if t.status in (TrackStatus.CONFIRMED, TrackStatus.COASTING)))

    def ingest(self, message, arrival_time):
        capture = message.capture_time
        config = self.config
        if capture + config.staleness_window_us < self.clock:
            self.stale_discarded += 1
            logger.debug('discarded stale frame %d from node %d (%dus behind)',
                    message.seq, message.node_id, self.clock - capture)
            return PictureDelta(self.clock, stale=True)
        logger.debug('ingest node %d seq %d: %d record(s), capture %d, arrival %d',
                message.node_id, message.seq, message.count, capture, arrival_time)

        detections = detections_from_message(message)
        current = self.tracks
        predicted = [predict(t, max(capture, t.last_update), config.accel_psd) for t in current]
        assignment = associate(predicted, detections, config.gate_m)

        updated, spawned, dropped = [], [], []
        for ti, di in assignment.pairs:
            track = self._on_hit(update(predicted[ti], detections[di], config))
            self._tracks[track.track_id] = track
            updated.append(track.track_id)

        node = self._nodes.get(message.node_id)
        for ti in assignment.unmatched_tracks:
            track = current[ti]
            if node is not None and not in_coverage(node, predicted[ti].position):
                continue
            track = self._on_miss(track)
            if track is None:
                del self._tracks[current[ti].track_id]
                dropped.append(current[ti].track_id)
            else:
                self._tracks[track.track_id] = track

        for di in assignment.unmatched_detections:
            track = initiate(detections[di], self._next_id, config)
            self._next_id += 1
            self.tracks_created += 1
            self._tracks[track.track_id] = track
            spawned.append(track.track_id)

        self.clock = max(self.clock, capture)
        for track in self.tracks:
            if self.clock - track.last_update > config.drop_timeout_us:
                del self._tracks[track.track_id]
                dropped.append(track.track_id)
                logger.info('track %d dropped after %dus without update', track.track_id,
                        self.clock - track.last_update)
        self.tracks_dropped += len(dropped)
        return PictureDelta(self.clock, tuple(updated), tuple(spawned), tuple(dropped))

    def _on_hit(self, track):
        if track.status == TrackStatus.TENTATIVE and track.hit_count >= self.config.confirm_threshold:
            logger.info('track %d confirmed as %s', track.track_id, track.agent_class.label)
            return replace(track, status=TrackStatus.CONFIRMED)
        if track.status == TrackStatus.COASTING:
            return replace(track, status=TrackStatus.CONFIRMED)
        return track

    def _on_miss(self, track):
        """Returns the track after one more miss, or None if it is deleted."""
        misses = track.miss_count + 1
        if misses >= self.config.miss_threshold:
            if track.status == TrackStatus.TENTATIVE:
                logger.debug('tentative track %d deleted', track.track_id)
                return None
            if track.status == TrackStatus.CONFIRMED:
                logger.debug('track %d coasting', track.track_id)
                return replace(track, miss_count=misses, status=TrackStatus.COASTING)
        return replace(track, miss_count=misses)
