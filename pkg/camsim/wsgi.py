"""
WSGI config for camsim project.

It exposes the WSGI callable as a module-level variable named ``application``;
the run registry API is served through it.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "camsim.settings")

application = get_wsgi_application()
