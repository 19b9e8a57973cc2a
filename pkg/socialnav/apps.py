from django.apps import AppConfig


class SocialnavConfig(AppConfig):
    name = 'socialnav'
