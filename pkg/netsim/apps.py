from django.apps import AppConfig


class NetsimConfig(AppConfig):
    name = 'netsim'
