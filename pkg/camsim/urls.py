"""camsim URL Configuration

The only HTTP surface is the read-only run registry: recorded experiment
runs and a small statistics summary over them.
"""
from django.contrib import admin
from django.urls import include, path

from rest_framework.routers import SimpleRouter
import experiments.views

router = SimpleRouter()
router.register(r'runs', experiments.views.ExperimentRunViewSet, basename='run')

urlpatterns = [
    path('admin/', admin.site.urls),
    path('', include(router.urls)),
    path('statistics/', experiments.views.run_statistics, name='run-statistics'),
]
