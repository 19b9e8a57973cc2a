from django.core.management.base import BaseCommand

from experiments.management.base import dump_metrics, reported_errors
from experiments.metrics import compute_metrics


class Command(BaseCommand):
    help = 'Compute run metrics from a trace'

    def add_arguments(self, parser):
        parser.add_argument('--trace', required=True)

    def handle(self, *args, **options):
        with reported_errors():
            metrics = compute_metrics(options['trace'])
        self.stdout.write(dump_metrics(metrics))
