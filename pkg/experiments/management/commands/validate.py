from django.core.management.base import BaseCommand

from experiments.management.base import load_scenario_argument, reported_errors


class Command(BaseCommand):
    help = 'Validate a scenario file'

    def add_arguments(self, parser):
        parser.add_argument('--scenario', required=True)

    def handle(self, *args, **options):
        with reported_errors():
            spec = load_scenario_argument(options['scenario'])
        self.stdout.write('%s: ok (%d nodes, %d agents, %d ticks)'
                % (spec.name, len(spec.nodes), len(spec.agents), spec.tick_count))
