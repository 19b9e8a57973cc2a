import factory
from faker import Factory as FakerFactory

from . import models

faker = FakerFactory.create()


class ExperimentRunFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = models.ExperimentRun

    scenario = factory.Iterator(['corridor', 'roundabout', 'corridor_yielding'])
    seed = factory.Sequence(lambda n: n)
    trace_path = factory.LazyAttribute(lambda o: '/tmp/%s-seed%d.ndjson' % (o.scenario, o.seed))
    trace_sha256 = factory.Faker('sha256')

    @factory.lazy_attribute
    def metrics(self):
        return {
                'localization_rmse': round(faker.pyfloat(min_value=0, max_value=1), 4),
                'id_switches': faker.random_int(min=0, max=3),
                'messages_lost': faker.random_int(min=0, max=20),
                'messages_sent': faker.random_int(min=100, max=5000),
                }
