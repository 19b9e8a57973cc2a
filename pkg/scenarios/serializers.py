"""
Schema of the scenario document. The serializers only check shape and
ranges; cross-references (links, bed agent, unique ids) are checked in
ScenarioSerializer.validate.
"""
import math

from django.conf import settings
from rest_framework import serializers

from geometry.primitives import AgentClass


class PointField(serializers.ListField):
    child = serializers.FloatField()

    def __init__(self, **kwargs):
        kwargs.setdefault('min_length', 2)
        kwargs.setdefault('max_length', 2)
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not all(math.isfinite(v) for v in value):
            raise serializers.ValidationError('coordinates must be finite')
        return tuple(value)


class PolylineField(serializers.ListField):
    child = PointField()

    def to_internal_value(self, data):
        return tuple(super().to_internal_value(data))


class PoseSerializer(serializers.Serializer):
    x = serializers.FloatField()
    y = serializers.FloatField()
    heading = serializers.FloatField(default=0.0)


class LinkSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=64)
    base_latency_us = serializers.IntegerField(min_value=0)
    jitter_us = serializers.IntegerField(min_value=0, default=0)
    loss_probability = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.0)
    reorder_allowed = serializers.BooleanField(default=False)


def _sensor_default(key):
    return lambda: settings.CAM_SENSOR_DEFAULTS[key]


class NodeSerializer(serializers.Serializer):
    node_id = serializers.IntegerField(min_value=0, max_value=0xFFFF)
    pose = PoseSerializer()
    mount_height_m = serializers.FloatField(default=_sensor_default('mount_height_m'))
    fov_rad = serializers.FloatField(default=_sensor_default('fov_rad'))
    max_range_m = serializers.FloatField(default=_sensor_default('max_range_m'))
    detection_period_s = serializers.FloatField(default=_sensor_default('detection_period_s'))
    noise_sigma_m = serializers.FloatField(default=_sensor_default('noise_sigma_m'))
    miss_rate = serializers.FloatField(default=_sensor_default('miss_rate'))
    class_accuracy = serializers.FloatField(default=_sensor_default('class_accuracy'))
    link = serializers.CharField(required=False)

    def validate_fov_rad(self, value):
        if not 0 < value <= 2 * math.pi + 1e-12:
            raise serializers.ValidationError('field of view must be in (0, 2*pi].')
        return value

    def validate_max_range_m(self, value):
        if value <= 0:
            raise serializers.ValidationError('max range must be greater than 0.')
        return value

    def validate_miss_rate(self, value):
        if not 0 <= value <= 1:
            raise serializers.ValidationError('miss rate must be a probability.')
        return value

    def validate_class_accuracy(self, value):
        if not 0 < value <= 1:
            raise serializers.ValidationError('class accuracy must be in (0, 1].')
        return value


class ScheduleEntrySerializer(serializers.Serializer):
    at_s = serializers.FloatField(min_value=0.0)
    speed_mps = serializers.FloatField(min_value=0.0)


class AgentSerializer(serializers.Serializer):
    BEHAVIORS = ('FollowPath', 'Stationary', 'Scripted', 'Planned')

    agent_id = serializers.IntegerField(min_value=0)
    agent_class = serializers.ChoiceField(choices=[c.label for c in AgentClass])
    radius_m = serializers.FloatField()
    behavior = serializers.ChoiceField(choices=BEHAVIORS)
    pose = PoseSerializer(required=False)
    speed_mps = serializers.FloatField(min_value=0.0, default=0.0)
    path = PolylineField(required=False, default=tuple)
    schedule = ScheduleEntrySerializer(many=True, required=False, default=list)

    def get_fields(self):
        # 'class' is a keyword, so the field is declared under another name
        fields = super().get_fields()
        fields['class'] = fields.pop('agent_class')
        return fields

    def validate_radius_m(self, value):
        if not value > 0:
            raise serializers.ValidationError('radius must be greater than 0.')
        return value

    def validate(self, attrs):
        behavior = attrs['behavior']
        if behavior in ('FollowPath', 'Scripted') and len(attrs['path']) < 2:
            raise serializers.ValidationError({'path': 'a %s agent needs at least 2 waypoints.' % behavior})
        if behavior in ('Stationary', 'Planned') and 'pose' not in attrs and not attrs['path']:
            raise serializers.ValidationError({'pose': 'a %s agent needs a pose or a path.' % behavior})
        if behavior == 'Scripted' and not attrs['schedule']:
            raise serializers.ValidationError({'schedule': 'a Scripted agent needs a schedule.'})
        return attrs


class SubscriberSerializer(serializers.Serializer):
    subscriber_id = serializers.IntegerField(min_value=0, max_value=0xFFFF)
    kind = serializers.ChoiceField(choices=('ConnectedVehicle', 'PhoneApp'))
    link = serializers.CharField()


class PlannerSerializer(serializers.Serializer):
    bed_agent_id = serializers.IntegerField(min_value=0)
    link = serializers.CharField(required=False)
    options = serializers.DictField(required=False, default=dict)


class ScenarioSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=128)
    duration_s = serializers.FloatField()
    tick_dt_s = serializers.FloatField()
    rng_seed = serializers.IntegerField(min_value=0, max_value=2 ** 64 - 1)
    frame = serializers.CharField(required=False, default='', allow_blank=True)
    notes = serializers.CharField(required=False, default='', allow_blank=True)
    max_speed_mps = serializers.FloatField(required=False, default=30.0)
    nodes = NodeSerializer(many=True)
    links = LinkSerializer(many=True, required=False, default=list)
    agents = AgentSerializer(many=True)
    boundary = PolylineField(required=False, allow_null=True, default=None)
    reference_path = PolylineField(required=False, allow_null=True, default=None)
    subscribers = SubscriberSerializer(many=True, required=False, default=list)
    fusion = serializers.DictField(required=False, default=dict)
    hazard = serializers.DictField(required=False, default=dict)
    planner = PlannerSerializer(required=False, allow_null=True, default=None)

    def validate_tick_dt_s(self, value):
        if not value > 0:
            raise serializers.ValidationError('tick_dt must be greater than 0.')
        return value

    def validate_max_speed_mps(self, value):
        if not value > 0:
            raise serializers.ValidationError('max speed must be greater than 0.')
        return value

    def validate_boundary(self, value):
        if value is not None and len(value) < 3:
            raise serializers.ValidationError('a boundary polygon needs at least 3 points.')
        return value

    def validate_reference_path(self, value):
        if value is not None and len(value) < 2:
            raise serializers.ValidationError('a reference path needs at least 2 points.')
        return value

    def validate(self, attrs):
        if attrs['duration_s'] < attrs['tick_dt_s']:
            raise serializers.ValidationError({'duration_s': 'duration must be at least one tick.'})
        self._check_unique(attrs['nodes'], 'node_id', 'nodes')
        self._check_unique(attrs['agents'], 'agent_id', 'agents')
        self._check_unique(attrs['links'], 'name', 'links')
        self._check_unique(attrs['subscribers'], 'subscriber_id', 'subscribers')
        link_names = {link['name'] for link in attrs['links']} | set(settings.CAM_LINK_PROFILES)
        for i, node in enumerate(attrs['nodes']):
            if node['detection_period_s'] < attrs['tick_dt_s']:
                raise serializers.ValidationError({'nodes': {i: {'detection_period_s':
                    'detection period must not be shorter than the tick.'}}})
            if node.get('link') is not None and node['link'] not in link_names:
                raise serializers.ValidationError({'nodes': {i: {'link': 'unknown link %r.' % node['link']}}})
        for i, agent in enumerate(attrs['agents']):
            speeds = [agent['speed_mps']] + [e['speed_mps'] for e in agent['schedule']]
            if max(speeds) > attrs['max_speed_mps']:
                raise serializers.ValidationError({'agents': {i: {'speed_mps':
                    'speed exceeds the scenario max speed.'}}})
        for i, sub in enumerate(attrs['subscribers']):
            if sub['link'] not in link_names:
                raise serializers.ValidationError({'subscribers': {i: {'link': 'unknown link %r.' % sub['link']}}})
        planner = attrs['planner']
        if planner is not None:
            bed = [a for a in attrs['agents'] if a['agent_id'] == planner['bed_agent_id']]
            if not bed or bed[0]['class'] != 'MedicalBed':
                raise serializers.ValidationError({'planner': {'bed_agent_id': 'no MedicalBed agent with that id.'}})
            if planner.get('link') is not None and planner['link'] not in link_names:
                raise serializers.ValidationError({'planner': {'link': 'unknown link %r.' % planner['link']}})
            if attrs['reference_path'] is None:
                raise serializers.ValidationError({'reference_path': 'a planned scenario needs a reference path.'})
        return attrs

    def _check_unique(self, items, key, name):
        seen = set()
        for i, item in enumerate(items):
            if item[key] in seen:
                raise serializers.ValidationError({name: {i: {key: 'duplicate %s %r.' % (key, item[key])}}})
            seen.add(item[key])
