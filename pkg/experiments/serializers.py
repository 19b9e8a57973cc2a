from rest_framework import serializers

from .models import ExperimentRun


class ExperimentRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = ExperimentRun
        fields = ('id', 'scenario', 'seed', 'trace_path', 'trace_sha256', 'metrics', 'created')
        read_only_fields = fields


class MinimalExperimentRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = ExperimentRun
        fields = ('id', 'scenario', 'seed', 'created')
