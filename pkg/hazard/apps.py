from django.apps import AppConfig


class HazardAppConfig(AppConfig):
    name = 'hazard'
