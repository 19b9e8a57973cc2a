from django.apps import AppConfig


class SensornodesConfig(AppConfig):
    name = 'sensornodes'
