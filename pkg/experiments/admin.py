from django.contrib import admin

from .models import ExperimentRun


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    list_display = ('scenario', 'seed', 'created')
    list_filter = ('scenario',)
    readonly_fields = ('trace_sha256', 'metrics', 'created')
