from django.apps import AppConfig


class FusionAppConfig(AppConfig):
    name = 'fusion'
