from django.core.management.base import BaseCommand

from experiments.management.base import dump_metrics, reported_errors
from experiments.replay import replay


class Command(BaseCommand):
    help = 'Recompute metrics from a trace, optionally exporting a per-tick CSV'

    def add_arguments(self, parser):
        parser.add_argument('--trace', required=True)
        parser.add_argument('--csv', default=None)

    def handle(self, *args, **options):
        with reported_errors():
            metrics = replay(options['trace'], options['csv'])
        self.stdout.write(dump_metrics(metrics))
