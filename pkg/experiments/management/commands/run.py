import hashlib

from django.core.management.base import BaseCommand

from experiments.management.base import dump_metrics, load_scenario_argument, reported_errors
from experiments.models import ExperimentRun
from experiments.runner import run


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()


class Command(BaseCommand):
    help = 'Run a scenario end to end, write its trace and print the metrics'

    def add_arguments(self, parser):
        parser.add_argument('--scenario', required=True, help='scenario file or bundled scenario name')
        parser.add_argument('--seed', type=int, default=None, help='defaults to the scenario rng_seed')
        parser.add_argument('--out', default='.', help='directory for the trace')
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument('--fast', dest='realtime', action='store_false', default=False)
        mode.add_argument('--realtime', dest='realtime', action='store_true')
        parser.add_argument('--workers', type=int, default=1, help='threads for node sensing')
        parser.add_argument('--capture', default=None, help='write wire frames to this .camp file')
        parser.add_argument('--record', action='store_true', help='store the run in the database')

    def handle(self, *args, **options):
        with reported_errors():
            spec = load_scenario_argument(options['scenario'])
            seed = spec.rng_seed if options['seed'] is None else options['seed']
            trace_path, metrics = run(spec, seed, out_dir=options['out'],
                    workers=max(1, options['workers']), capture_path=options['capture'],
                    realtime=options['realtime'])
            if options['record']:
                ExperimentRun.objects.create(scenario=spec.name, seed=seed, trace_path=trace_path,
                        trace_sha256=file_sha256(trace_path), metrics=metrics.as_dict())
        self.stderr.write('trace written to %s' % trace_path)
        self.stdout.write(dump_metrics(metrics))
