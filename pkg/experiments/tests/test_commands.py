import json
import os
import shutil
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from scenarios.factories import minimal_document

from ..models import ExperimentRun


class CommandTestCase(TestCase):

    def setUp(self):
        self.out_dir = tempfile.mkdtemp(prefix='camsim-cmd-')

    def tearDown(self):
        shutil.rmtree(self.out_dir, ignore_errors=True)

    def call(self, name, **options):
        out, err = StringIO(), StringIO()
        call_command(name, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()

    def write_document(self, document, name='scenario.json'):
        path = os.path.join(self.out_dir, name)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(document, f, indent=2)
        return path


class ValidateCommandTestCase(CommandTestCase):

    def test_bundled_scenario_is_ok(self):
        out, _ = self.call('validate', scenario='roundabout')
        self.assertIn('roundabout: ok', out)
        self.assertIn('14 nodes', out)

    def test_scenario_file_is_ok(self):
        path = self.write_document(minimal_document(name='hallway'))
        out, _ = self.call('validate', scenario=path)
        self.assertIn('hallway: ok', out)

    def test_invalid_scenario_exits_with_one(self):
        path = self.write_document(minimal_document(tick_dt_s=0))
        with self.assertRaises(CommandError) as cm:
            self.call('validate', scenario=path)
        self.assertEqual(cm.exception.returncode, 1)
        self.assertIn('tick_dt_s', str(cm.exception))

    def test_missing_file_exits_with_two(self):
        with self.assertRaises(CommandError) as cm:
            self.call('validate', scenario=os.path.join(self.out_dir, 'nowhere.json'))
        self.assertEqual(cm.exception.returncode, 2)


class RunCommandTestCase(CommandTestCase):

    def test_run_and_record(self):
        path = self.write_document(minimal_document(name='hallway', rng_seed=9))
        out, err = self.call('run', scenario=path, out=self.out_dir, record=True)
        trace_path = os.path.join(self.out_dir, 'hallway-seed9.ndjson')
        self.assertTrue(os.path.exists(trace_path))
        self.assertIn(trace_path, err)
        metrics = json.loads(out)
        self.assertIn('localization_rmse', metrics)
        experiment = ExperimentRun.objects.get()
        self.assertEqual((experiment.scenario, experiment.seed), ('hallway', 9))
        self.assertEqual(experiment.trace_path, trace_path)
        self.assertEqual(len(experiment.trace_sha256), 64)
        self.assertEqual(experiment.metrics, metrics)

    def test_seed_override(self):
        path = self.write_document(minimal_document(name='hallway', rng_seed=9))
        self.call('run', scenario=path, out=self.out_dir, seed=21)
        self.assertTrue(os.path.exists(os.path.join(self.out_dir, 'hallway-seed21.ndjson')))
        self.assertFalse(ExperimentRun.objects.exists())

    def test_metrics_and_replay_agree(self):
        path = self.write_document(minimal_document(name='hallway', rng_seed=3))
        run_out, _ = self.call('run', scenario=path, out=self.out_dir)
        trace_path = os.path.join(self.out_dir, 'hallway-seed3.ndjson')
        metrics_out, _ = self.call('metrics', trace=trace_path)
        csv_path = os.path.join(self.out_dir, 'hallway.csv')
        replay_out, _ = self.call('replay', trace=trace_path, csv=csv_path)
        self.assertEqual(json.loads(metrics_out), json.loads(run_out))
        self.assertEqual(json.loads(replay_out), json.loads(run_out))
        with open(csv_path, encoding='utf-8') as f:
            self.assertEqual(len(f.read().splitlines()), 41)

    def test_corrupt_trace_exits_with_one(self):
        trace_path = os.path.join(self.out_dir, 'broken.ndjson')
        with open(trace_path, 'w', encoding='utf-8') as f:
            f.write('{"kind": "tick"}\n')
        with self.assertRaises(CommandError) as cm:
            self.call('metrics', trace=trace_path)
        self.assertEqual(cm.exception.returncode, 1)

    def test_missing_trace_exits_with_two(self):
        with self.assertRaises(CommandError) as cm:
            self.call('replay', trace=os.path.join(self.out_dir, 'nowhere.ndjson'))
        self.assertEqual(cm.exception.returncode, 2)
