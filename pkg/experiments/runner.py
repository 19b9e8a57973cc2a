"""
End-to-end experiment runs: ground truth, sensor nodes, network, cloud
fusion and the application layers stepped in lockstep on the scenario
tick.
"""
import json
import logging
import math
import os
import time as wallclock
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np
from django.conf import settings

from fusion.engine import FusionEngine
from fusion.tracks import FusionConfig, TrackStatus
from geometry.primitives import AgentClass, Pose2, micros_to_seconds
from hazard.conflicts import ConflictScanner, HazardConfig
from hazard.warnings import Dispatcher
from netsim.capture import CaptureWriter
from netsim.codec import PerceptionMessage, WarningMessage
from netsim.links import DeliveryQueue, send
from scenarios.agents import WorldState
from scenarios.world import step_world
from sensornodes.node import NodeRuntime
from socialnav.planner import PlannedTrajectory, PlannerConfig, PlannerError, Stop, plan
from socialnav.yielding import Yielder

from .metrics import compute_metrics
from .trace import TraceWriter, schema_version

logger = logging.getLogger(__name__)

NODE_LINK_STREAM = 2
BED_LINK_STREAM = 4


def trace_filename(spec, seed):
    return '%s-seed%d.ndjson' % (spec.name, seed)


class Simulation(object):

    def __init__(self, spec, seed=None, workers=1, capture=None):
        self.spec = spec
        self.seed = spec.rng_seed if seed is None else seed
        self.workers = workers
        self.capture = capture
        self.world = spec.initial_world()
        self.queue = DeliveryQueue()
        self.links = {link.name: link for link in spec.links}
        self.nodes = [NodeRuntime(node, self.seed) for node in spec.nodes]
        self.node_rngs = {node.node_id: np.random.default_rng([self.seed, NODE_LINK_STREAM, node.node_id])
                for node in spec.nodes}
        self.engine = FusionEngine(FusionConfig.from_settings(**spec.fusion), spec.nodes)
        self.hazard = HazardConfig.from_settings(**spec.hazard)
        self.scanner = ConflictScanner(self.hazard)
        self.dispatcher = Dispatcher(self.links, self.queue, self.seed, capture)

        self.bed_id = None
        self.command = None
        self.bed_track_id = None
        self.issued = None
        self.stop_speed = 0.0
        if spec.planner:
            self.bed_id = spec.planner['bed_agent_id']
            self.planner = PlannerConfig.from_settings(spec.reference_path, spec.boundary,
                    **spec.planner.get('options', {}))
            self.yielder = Yielder(self.planner)
            self.bed_link = self.links[spec.planner['link']]
            self.bed_rng = np.random.default_rng([self.seed, BED_LINK_STREAM, self.bed_id])

    def header(self):
        return {
                'kind': 'header',
                'schema_version': schema_version(),
                'scenario': self.spec.name,
                'seed': self.seed,
                'tick_us': self.spec.tick_us,
                'tick_count': self.spec.tick_count,
                'bed_agent_id': self.bed_id,
                'nodes': [node.node_id for node in self.spec.nodes],
                'agents': [{'agent_id': a.agent_id, 'class': a.agent_class.label, 'radius': a.radius}
                    for a in self.spec.agents],
                'metrics': {
                    'match_gate_m': settings.CAM_METRICS['match_gate_m'],
                    'conflict_radius_m': self.hazard.conflict_radius_m,
                    'warn_lead_s': self.hazard.warn_lead_s,
                    },
                }

    def run(self, writer, realtime=False):
        writer.write(self.header())
        started = wallclock.monotonic()
        executor = ThreadPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        try:
            for index in range(self.spec.tick_count):
                writer.write(self.tick(index, executor))
                if realtime:
                    lag = micros_to_seconds((index + 1) * self.spec.tick_us) - (wallclock.monotonic() - started)
                    if lag > 0:
                        wallclock.sleep(lag)
        finally:
            if executor is not None:
                executor.shutdown()

    def tick(self, index, executor=None):
        now = index * self.spec.tick_us
        assert self.world.time == now
        sent = []
        delivered = []
        for transit in self.queue.poll(now):
            delivered.append(self._deliver(transit))

        picture = self.engine.picture()
        events = self.scanner.scan(picture, now=now)
        for event in events:
            sent.extend(self.dispatcher.dispatch(event, self.spec.subscribers, now))

        plan_record = directive_record = None
        if self.bed_id is not None:
            plan_record, directive_record, transit = self._plan(picture, now)
            if transit is not None:
                sent.append(transit)

        detections = []
        due = [node for node in self.nodes if node.due(now)]
        if executor is not None:
            captured = list(executor.map(lambda node: node.capture(self.world), due))
        else:
            captured = [node.capture(self.world) for node in due]
        for node, (found, message) in zip(due, captured):
            detections.extend(found)
            if self.capture is not None:
                self.capture.write(message)
            transit = send(message, self.links[node.config.link], now, self.node_rngs[node.node_id],
                    sender=('node', node.node_id))
            self.queue.push(transit)
            sent.append(transit)

        record = {
                'kind': 'tick',
                'index': index,
                'time': now,
                'truth': [agent.as_record() for agent in self.world.agents],
                'detections': [{
                    'node': d.node_id,
                    'agent_id': d.agent_id,
                    'class': d.class_estimate.label,
                    'x': d.position_global[0],
                    'y': d.position_global[1],
                    } for d in detections],
                'sent': [_transit_record(t) for t in sent],
                'delivered': delivered,
                'picture': [track.as_record() for track in picture.tracks],
                'picture_time': picture.time,
                'events': [event.as_record() for event in events],
                'plan': plan_record,
                'directive': directive_record,
                'asset': self._asset(picture),
                }

        self.world = step_world(self._drive_bed(self.world, now), self.spec, self.spec.tick_dt)
        return record

    def _deliver(self, transit):
        record = _transit_record(transit)
        message = transit.message
        if isinstance(message, PerceptionMessage):
            self.engine.ingest(message, transit.delivery_time)
            record['capture_time'] = message.capture_time
        elif isinstance(message, (PlannedTrajectory, Stop)):
            self.command = message
        return record

    def _asset(self, picture):
        beds = picture.of_class(AgentClass.MEDICAL_BED)
        if not beds:
            return None
        chosen = next((t for t in beds if t.track_id == self.bed_track_id), beds[0])
        return chosen.as_record()

    def _bed_track(self, picture):
        beds = [t for t in picture.tracks
                if t.agent_class == AgentClass.MEDICAL_BED and t.status == TrackStatus.CONFIRMED]
        if not beds:
            return None
        track = next((t for t in beds if t.track_id == self.bed_track_id), beds[0])
        self.bed_track_id = track.track_id
        return track

    def _plan(self, picture, now):
        bed = self._bed_track(picture)
        if bed is None:
            return None, None, None
        persons = picture.of_class(AgentClass.PEDESTRIAN)
        directive = self.yielder.update(bed, persons, now)
        speed = self._commanded_speed(now)
        try:
            result = plan(bed, persons, self.planner, now,
                    speed_cap=directive.speed_cap if directive is not None else None, initial_speed=speed)
        except PlannerError as e:
            logger.warning('planner at %d: %s', now, e)
            result = Stop(now, 'invalid state')
        if isinstance(result, Stop):
            self.stop_speed = bed.speed if speed is None else speed
        self.issued = result
        transit = send(result, self.bed_link, now, self.bed_rng, sender=('cloud', self.bed_id))
        self.queue.push(transit)
        return result.as_record(), directive.as_record() if directive is not None else None, transit

    def _commanded_speed(self, now):
        """Speed the bed should have at now under the last command sent to it, or None."""
        if self.issued is None:
            return None
        if isinstance(self.issued, Stop):
            elapsed = micros_to_seconds(now - self.issued.issued_at)
            return max(0.0, self.stop_speed - self.planner.max_accel * elapsed)
        return self.issued.speed_at(now)

    def _drive_bed(self, world, now):
        """
        Turn the last delivered command into the bed's speed and heading for
        this tick. Speed approaches the commanded speed no faster than
        max_accel and never goes negative. The heading steers
        toward the commanded lateral offset one lookahead ahead and stays
        within a quarter turn of the reference path, so the bed never
        backs up.
        """
        if self.bed_id is None or self.command is None:
            return world
        bed = world.agent(self.bed_id)
        config = self.planner
        if isinstance(self.command, Stop):
            wanted, heading = 0.0, bed.pose.heading
        else:
            polyline = config.polyline
            station, lateral = polyline.project(bed.position)
            target = self.command.lateral_offset_at(station + config.follow_lookahead_m, polyline)
            wanted = self.command.speed_at(now + self.spec.tick_us)
            heading = polyline.heading_at(station) + math.atan2(target - lateral, config.follow_lookahead_m)
        step = config.max_accel * self.spec.tick_dt
        speed = max(0.0, min(max(wanted, bed.speed - step), bed.speed + step, config.max_speed))
        bed = replace(bed, speed=speed, pose=Pose2(bed.pose.x, bed.pose.y, heading))
        agents = tuple(bed if a.agent_id == self.bed_id else a for a in world.agents)
        return WorldState(world.time, agents)


def _transit_record(transit):
    message = transit.message
    record = {
            'sender': list(transit.sender),
            'send_time': transit.send_time,
            'delivery_time': transit.delivery_time,
            'dropped': transit.dropped,
            }
    if isinstance(message, PerceptionMessage):
        record.update(type='perception', seq=message.seq, count=message.count)
    elif isinstance(message, WarningMessage):
        record.update(type='warning', event_id=message.event_id, subscriber=message.subscriber_id)
    else:
        record['type'] = 'command'
    return record


def run(spec, seed=None, out_dir='.', workers=1, capture_path=None, realtime=False):
    """Execute a scenario and return (trace path, metrics read back from the trace)."""
    seed = spec.rng_seed if seed is None else seed
    os.makedirs(out_dir, exist_ok=True)
    trace_path = os.path.join(out_dir, trace_filename(spec, seed))
    capture = CaptureWriter(capture_path) if capture_path else None
    logger.info('running %s with seed %d', spec.name, seed)
    try:
        simulation = Simulation(spec, seed, workers=workers, capture=capture)
        with TraceWriter(trace_path) as writer:
            simulation.run(writer, realtime=realtime)
    finally:
        if capture is not None:
            capture.close()
    metrics = compute_metrics(trace_path)
    with open(trace_path[:-len('.ndjson')] + '.metrics.json', 'w', encoding='utf-8') as f:
        json.dump(metrics.as_dict(), f, sort_keys=True, indent=2)
    logger.info('finished %s: %d tick(s), %d message(s) sent, %d lost, %d stale', spec.name,
            spec.tick_count, simulation.queue.sent, simulation.queue.dropped, simulation.engine.stale_discarded)
    return trace_path, metrics
