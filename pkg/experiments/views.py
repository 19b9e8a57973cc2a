from rest_framework import viewsets
from rest_framework.decorators import api_view, renderer_classes
from rest_framework.renderers import JSONRenderer
from rest_framework.response import Response

from .models import ExperimentRun
from .serializers import ExperimentRunSerializer, MinimalExperimentRunSerializer


class ExperimentRunViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = ExperimentRun.objects.all()

    def get_queryset(self):
        queryset = ExperimentRun.objects.all()
        scenario = self.request.query_params.get('scenario')
        if scenario:
            queryset = queryset.filter(scenario=scenario)
        return queryset

    def get_serializer_class(self):
        if self.action == 'list':
            return MinimalExperimentRunSerializer
        return ExperimentRunSerializer


@api_view(['GET'])
@renderer_classes((JSONRenderer,))
def run_statistics(request):
    runs = list(ExperimentRun.objects.all())
    scenarios = {}
    for run in runs:
        entry = scenarios.setdefault(run.scenario, {'runs': 0, 'id_switches': 0, 'messages_lost': 0})
        entry['runs'] += 1
        entry['id_switches'] += run.metrics.get('id_switches') or 0
        entry['messages_lost'] += run.metrics.get('messages_lost') or 0
    obj = {
            'runs': len(runs),
            'scenarios': scenarios,
            }
    return Response(obj)
