from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

from ..factories import ExperimentRunFactory


class ExperimentRunViewSetTestCase(APITestCase):

    def setUp(self):
        self.runs = ExperimentRunFactory.create_batch(6)

    def test_list(self):
        response = self.client.get(reverse('run-list'))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data), 6)
        self.assertEqual(set(response.data[0].keys()), {'id', 'scenario', 'seed', 'created'})

    def test_filter_by_scenario(self):
        response = self.client.get(reverse('run-list'), {'scenario': 'roundabout'})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data), 2)
        self.assertTrue(all(r['scenario'] == 'roundabout' for r in response.data))

    def test_retrieve(self):
        run = self.runs[0]
        response = self.client.get(reverse('run-detail', args=[run.id]))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['id'], str(run.id))
        self.assertEqual(response.data['trace_sha256'], run.trace_sha256)
        self.assertEqual(response.data['metrics'], run.metrics)

    def test_runs_are_read_only(self):
        response = self.client.post(reverse('run-list'), {'scenario': 'corridor', 'seed': 1})
        self.assertEqual(response.status_code, status.HTTP_405_METHOD_NOT_ALLOWED)


class RunStatisticsTestCase(APITestCase):

    def test_empty_registry(self):
        response = self.client.get(reverse('run-statistics'))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data, {'runs': 0, 'scenarios': {}})

    def test_totals_per_scenario(self):
        runs = ExperimentRunFactory.create_batch(3, scenario='corridor')
        ExperimentRunFactory(scenario='roundabout')
        response = self.client.get(reverse('run-statistics'))
        self.assertEqual(response.data['runs'], 4)
        corridor = response.data['scenarios']['corridor']
        self.assertEqual(corridor['runs'], 3)
        self.assertEqual(corridor['id_switches'], sum(r.metrics['id_switches'] for r in runs))
        self.assertEqual(corridor['messages_lost'], sum(r.metrics['messages_lost'] for r in runs))
