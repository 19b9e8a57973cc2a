import uuid

from django.db import models


class ExperimentRun(models.Model):
    """A completed run: where its trace lives and the metrics read from it."""
    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    scenario = models.CharField(max_length=128)
    seed = models.PositiveBigIntegerField()
    trace_path = models.CharField(max_length=1024)
    trace_sha256 = models.CharField(max_length=64)
    metrics = models.JSONField(default=dict)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ('-created',)

    def __str__(self):
        return '%s (seed %d)' % (self.scenario, self.seed)
