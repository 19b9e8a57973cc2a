"""
Scenario documents: JSON in, fully validated ScenarioSpec out.
"""
import json
import logging
import math
import os

from django.conf import settings
from django.core.exceptions import ValidationError
from rest_framework.settings import api_settings

from geometry.primitives import AgentClass, NodeExtrinsics, Pose2, seconds_to_micros
from hazard.warnings import Subscriber, SubscriberKind
from netsim.links import LinkProfile
from sensornodes.config import SensorNodeConfig

from .agents import Agent, Behavior, ScenarioSpec
from .serializers import ScenarioSerializer

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


class ScenarioError(ValidationError):
    """A scenario document that fails validation, located by field and line."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if field:
            where.append(field)
        if line is not None:
            where.append('line %d' % line)
        if where:
            message = '%s: %s' % (', '.join(where), message)
        super().__init__(message)


def bundled_scenarios():
    return sorted(name[:-len('.json')] for name in os.listdir(DATA_DIR) if name.endswith('.json'))


def bundled_path(name):
    if not name.endswith('.json'):
        name += '.json'
    return os.path.join(DATA_DIR, name)


def load_bundled(name):
    return load_scenario_file(bundled_path(name))


def load_scenario_file(path):
    with open(path, encoding='utf-8') as f:
        return load_scenario(f.read())


def load_scenario(document):
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise ScenarioError(e.msg, line=e.lineno)
    if not isinstance(data, dict):
        raise ScenarioError('a scenario document must be a JSON object', line=1)
    serializer = ScenarioSerializer(data=data)
    if not serializer.is_valid():
        path, message = _first_error(serializer.errors)
        raise ScenarioError(message, field=_dotted(path), line=_locate_line(document, path))
    try:
        spec = build_spec(serializer.validated_data)
    except ValidationError as e:
        raise ScenarioError('; '.join(e.messages))
    _check_density(spec)
    logger.info('loaded scenario %s: %d node(s), %d agent(s), %.1fs', spec.name,
            len(spec.nodes), len(spec.agents), spec.duration)
    return spec


def build_spec(data):
    links = {name: LinkProfile.from_settings(name) for name in settings.CAM_LINK_PROFILES}
    declared = [LinkProfile(**link) for link in data['links']]
    links.update((link.name, link) for link in declared)
    default_link = declared[0].name if declared else 'urllc'
    nodes = tuple(_node(node, default_link) for node in data['nodes'])
    agents = tuple(_agent(agent) for agent in data['agents'])
    subscribers = tuple(Subscriber(s['subscriber_id'], SubscriberKind(s['kind']), s['link'])
            for s in data['subscribers'])
    # Every referenced profile travels with the spec
    used = {n.link for n in nodes} | {s.link for s in subscribers} | {l.name for l in declared}
    planner = dict(data['planner'] or {})
    if planner:
        planner.setdefault('link', default_link)
        used.add(planner['link'])
    return ScenarioSpec(
            name=data['name'],
            duration=data['duration_s'],
            tick_dt=data['tick_dt_s'],
            rng_seed=data['rng_seed'],
            nodes=nodes,
            links=tuple(links[name] for name in sorted(used)),
            agents=agents,
            boundary=data['boundary'],
            reference_path=data['reference_path'],
            subscribers=subscribers,
            max_speed=data['max_speed_mps'],
            fusion=dict(data['fusion']),
            hazard=dict(data['hazard']),
            planner=planner,
            frame=data['frame'],
            notes=data['notes'],
            )


def _node(node, default_link):
    pose = Pose2(**node['pose'])
    return SensorNodeConfig(
            node_id=node['node_id'],
            extrinsics=NodeExtrinsics(pose, node['mount_height_m']),
            fov=node['fov_rad'],
            max_range=node['max_range_m'],
            detection_period=node['detection_period_s'],
            noise_sigma=node['noise_sigma_m'],
            miss_rate=node['miss_rate'],
            class_accuracy=node['class_accuracy'],
            link=node.get('link') or default_link,
            )


def _agent(agent):
    behavior = Behavior(agent['behavior'])
    path = tuple(agent['path'])
    if 'pose' in agent:
        pose = Pose2(**agent['pose'])
    elif len(path) >= 2:
        (x0, y0), (x1, y1) = path[0], path[1]
        pose = Pose2(x0, y0, math.atan2(y1 - y0, x1 - x0))
    else:
        pose = Pose2(*path[0])
    schedule = tuple((seconds_to_micros(e['at_s']), e['speed_mps'])
            for e in sorted(agent['schedule'], key=lambda e: e['at_s']))
    return Agent(
            agent_id=agent['agent_id'],
            agent_class=AgentClass.from_label(agent['class']),
            pose=pose,
            radius=agent['radius_m'],
            speed=agent['speed_mps'],
            path=path,
            behavior=behavior,
            schedule=schedule,
            )


def _check_density(spec):
    """mMTC admission check: warn, never fail, above the density bound."""
    xs, ys = [], []
    for node in spec.nodes:
        xs.extend((node.pose.x - node.max_range, node.pose.x + node.max_range))
        ys.extend((node.pose.y - node.max_range, node.pose.y + node.max_range))
    if not xs:
        return
    area_km2 = (max(xs) - min(xs)) * (max(ys) - min(ys)) / 1e6
    devices = len(spec.nodes) + len(spec.subscribers)
    density = devices / area_km2
    if density > settings.CAM_MMTC_DENSITY_PER_KM2:
        logger.warning('scenario %s: %.0f devices/km^2 exceeds the mMTC bound of %d',
                spec.name, density, settings.CAM_MMTC_DENSITY_PER_KM2)
    return density


def _first_error(errors, path=()):
    """Walk nested serializer errors down to the first leaf message."""
    if isinstance(errors, dict):
        for key, value in errors.items():
            if key == api_settings.NON_FIELD_ERRORS_KEY:
                return _first_error(value, path)
            if value:
                return _first_error(value, path + (key,))
    if isinstance(errors, list):
        if errors and all(isinstance(e, str) for e in errors):
            return path, str(errors[0])
        for index, value in enumerate(errors):
            if value:
                return _first_error(value, path + (index,))
    return path, str(errors)


def _dotted(path):
    out = ''
    for part in path:
        if isinstance(part, int) or (isinstance(part, str) and part.isdigit()):
            out += '[%s]' % part
        else:
            out += ('.' if out else '') + part
    return out


def _locate_line(text, path):
    pos = 0
    for part in path:
        if isinstance(part, str) and part.isdigit():
            part = int(part)
        if isinstance(part, int):
            start = text.find('[', pos)
            if start < 0:
                break
            found = _element_start(text, start, part)
            if found is None:
                break
            pos = found
        else:
            found = text.find('"%s"' % part, pos)
            if found < 0:
                break
            pos = found
    return text.count('\n', 0, pos) + 1


def _element_start(text, start, index):
    depth = 0
    current = 0
    in_string = False
    escaped = False
    for i in range(start + 1, len(text)):
        ch = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif ch == '\\':
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if depth == 0 and current == index and not ch.isspace() and ch not in ',]':
            return i
        if ch == '"':
            in_string = True
        elif ch in '[{':
            depth += 1
        elif ch in ']}':
            if depth == 0:
                return None
            depth -= 1
        elif ch == ',' and depth == 0:
            current += 1
    return None
